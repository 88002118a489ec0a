#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "squeeze/elements.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/oracle.hpp"

using namespace squeeze;
using doctest::Approx;
using cplx = std::complex<double>;

TEST_CASE("generator matrix entries") {
    SqueezeParam sp{0.8, 0.5};
    cplx xi = std::polar(0.8, 0.5);
    oracle::FockMatrix g = oracle::build_generator(4, sp);
    CHECK(g.dim == 4);
    CHECK(std::abs(g.entries(2, 0) - 0.5 * xi * std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(g.entries(0, 2) + 0.5 * std::conj(xi) * std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(g.entries(3, 1) - 0.5 * xi * std::sqrt(6.0)) < 1e-15);
    CHECK(std::abs(g.entries(1, 1)) == 0.0);
    CHECK(std::abs(g.entries(1, 0)) == 0.0);
    // anti-Hermitian by construction
    CHECK((g.entries.adjoint() + g.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS((void)oracle::build_generator(1, sp), std::domain_error);
}

TEST_CASE("matrix exponential basics") {
    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(5, 5);
    CHECK((oracle::matrix_exponential(zero) - Eigen::MatrixXcd::Identity(5, 5))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // rotation generator: exp maps to cos/sin, exercises scaling and squaring
    double th = 3.1;
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(2, 2);
    rot(0, 1) = th;
    rot(1, 0) = -th;
    Eigen::MatrixXcd u = oracle::matrix_exponential(rot);
    CHECK(std::abs(u(0, 0) - std::cos(th)) < 1e-14);
    CHECK(std::abs(u(0, 1) - std::sin(th)) < 1e-14);
    CHECK(std::abs(u(1, 0) + std::sin(th)) < 1e-14);

    // diagonal case
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = cplx{0.0, 1.2};
    d(1, 1) = cplx{-0.7, 0.0};
    Eigen::MatrixXcd e = oracle::matrix_exponential(d);
    CHECK(std::abs(e(0, 0) - std::exp(cplx{0.0, 1.2})) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(-0.7)) < 1e-14);

    // a norm that would need > 60 squarings refuses instead of looping
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2, 2) * 1e20;
    CHECK_THROWS_AS((void)oracle::matrix_exponential(big), std::overflow_error);
}

TEST_CASE("truncated propagator is unitary where converged") {
    oracle::FockMatrix g = oracle::build_generator(64, {0.5, 0.9});
    Eigen::MatrixXcd u = oracle::matrix_exponential(g.entries);
    Eigen::MatrixXcd gap =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(64, 64)).topLeftCorner(32, 32);
    CHECK(gap.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("oracle element certifies its truncation") {
    oracle::OracleElement oe = oracle::element_oracle({0, 0}, {1.5, 0.0}, 64);
    CHECK(std::abs(oe.value - cplx{0.65199389179829013251, 0.0}) < 1e-10);
    CHECK(oe.error_estimate < 1e-10);
    CHECK(oe.dim_used >= 128);
    CHECK_THROWS_AS((void)oracle::element_oracle({-1, 0}, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("oracle corner agrees with the closed forms") {
    SqueezeParam sp{0.9, 0.6};
    oracle::OracleCorner c = oracle::oracle_corner(8, sp, 64);
    for (long m = 0; m <= 8; ++m) {
        for (long n = 0; n <= 8; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            if (((m ^ n) & 1) != 0) {
                CHECK(std::abs(c.values(m, n)) == 0.0);
            } else {
                cplx ref = element_gegenbauer({m, n}, sp).value;
                CHECK(std::abs(c.values(m, n) - ref) < 1e-10);
            }
        }
    }
}

TEST_CASE("dense and spectral corner exponentials agree") {
    // same truncated generator both ways, so the difference is pure method error
    SqueezeParam sp{1.3, 0.9};
    Eigen::MatrixXcd dense = oracle::corner_exp_dense(256, 12, sp);
    Eigen::MatrixXcd spectral = oracle::corner_exp_spectral(256, 12, sp);
    CHECK((dense - spectral).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(dense(1, 1)) > 0.01);  // the comparison is not between zeros
    CHECK_THROWS_AS((void)oracle::corner_exp_spectral(8, 12, sp), std::domain_error);
}

TEST_CASE("spinor identity holds at machine precision") {
    for (double r : {0.3, 2.0}) {
        for (double phi : {0.0, -2.5}) {
            oracle::SpinorReport rep = oracle::verify_spinor_identity({r, phi});
            DerivedParam d = derive({r, phi});
            CHECK(rep.max_dev < 1e-13);
            CHECK(rep.pairing_dev < 1e-13);
            CHECK(rep.eta == Approx(d.eta).epsilon(1e-13));
            CHECK(std::abs(rep.zeta - std::polar(d.tanh_r, phi)) < 1e-13);
        }
    }
}

TEST_CASE("ordered factorizations reproduce the propagator") {
    CHECK(oracle::verify_normal_form({0.6, 0.9}, 64).deviation < 1e-9);
    CHECK(oracle::verify_anti_normal_form({0.6, 0.9}, 64).deviation < 1e-9);
    // no squeezing: every factor is the identity
    CHECK(oracle::verify_normal_form({0.0, 0.0}, 16).deviation < 1e-14);
    CHECK(oracle::verify_anti_normal_form({0.0, 0.0}, 16).deviation < 1e-14);
}

TEST_CASE("exponentially weighted quadrature") {
    double one = oracle::quadrature_exp_weighted([](double) { return 1.0; }, 3.0, 1e-10);
    CHECK(one == Approx(1.0).epsilon(1e-9));
    double mean = oracle::quadrature_exp_weighted([](double I) { return I; }, 0.45, 1e-10);
    CHECK(mean == Approx(0.45).epsilon(1e-9));
    double second = oracle::quadrature_exp_weighted([](double I) { return I * I; }, 2.0, 1e-10);
    CHECK(second == Approx(8.0).epsilon(1e-8));  // <I^2> = 2 i0^2
    CHECK_THROWS_AS(
        (void)oracle::quadrature_exp_weighted([](double I) { return std::cos(50.0 * I); }, 1.0,
                                              1e-13, 40),
        NonConvergenceError);
}

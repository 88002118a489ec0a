#include "squeeze/oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "squeeze/elements.hpp"
#include "squeeze/errors.hpp"
#include "detail/quadrature.hpp"

#ifdef SQUEEZE_HAVE_LAPACK
extern "C" void dstedc_(const char* compz, const int* n, double* d, double* e, double* z,
                        const int* ldz, double* work, const int* lwork, int* iwork,
                        const int* liwork, int* info);
#endif

namespace squeeze::oracle {

namespace {

using Eigen::MatrixXcd;
using cplx = std::complex<double>;

cplx xi_of(const SqueezeParam& sp) { return std::polar(sp.r, sp.phi); }

// scaling-and-squaring Taylor exponential, shared by the double and the long
// double instantiations; theta shrinks for the wider type so the degree-24
// remainder (theta^25/25': 6e-16 at 2.5, 6e-25 at 1.2) sits below its epsilon
template <class Mat>
Mat expm_impl(const Mat& a) {
    using Scalar = typename Mat::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: square input only");
    const long n = a.rows();
    double nrm = double(a.cwiseAbs().colwise().sum().maxCoeff());
    if (!std::isfinite(nrm)) throw std::invalid_argument("matrix_exponential: non-finite input");
    constexpr double theta = std::numeric_limits<Real>::digits > 53 ? 1.2 : 2.5;
    int s = 0;
    if (nrm > theta) {
        s = int(std::ceil(std::log2(nrm / theta)));
        if (s > 60) throw std::overflow_error("matrix_exponential: norm beyond supported range");
    }
    Mat A = a * Scalar(std::ldexp(1.0, -s));

    Scalar c[25];
    c[0] = Scalar(1);
    for (int k = 1; k <= 24; ++k) c[k] = c[k - 1] / Real(k);

    Mat I = Mat::Identity(n, n);
    Mat A2 = A * A;
    Mat A3 = A2 * A;
    Mat A4 = A3 * A;
    Mat A5 = A4 * A;

    auto chunk = [&](int j) -> Mat {
        return c[5 * j] * I + c[5 * j + 1] * A + c[5 * j + 2] * A2 + c[5 * j + 3] * A3 +
               c[5 * j + 4] * A4;
    };
    Mat P = chunk(4);
    for (int j = 3; j >= 0; --j) P = P * A5 + chunk(j);

    for (int i = 0; i < s; ++i) P = P * P;
    return P;
}

// one parity ladder of the generator: basis |p>, |p+2>, ... (size entries)
MatrixXcd parity_block_generator(long size, long p, const SqueezeParam& sp) {
    MatrixXcd b = MatrixXcd::Zero(size, size);
    cplx half_xi = 0.5 * xi_of(sp);
    for (long j = 0; j + 1 < size; ++j) {
        long n = p + 2 * j;  // coupling |n> <-> |n+2>
        double c = std::sqrt(double(n + 1) * double(n + 2));
        b(j + 1, j) = half_xi * c;
        b(j, j + 1) = -std::conj(half_xi) * c;
    }
    return b;
}

// leading rows/cols of e^A for one parity ladder, via the tridiagonal spectral
// form: conjugating by diag(i^p e^{-i p phi}) turns the block generator into
// -i B with B real symmetric tridiagonal, so e^A = P (V e^{-i Lambda} V^T) P^-1
// and only the first `rows` rows of V are ever combined
MatrixXcd spectral_block_corner(long size, long parity, long rows, const SqueezeParam& sp) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(size);
    Eigen::VectorXd sub(size - 1);
    for (long j = 0; j + 1 < size; ++j) {
        long n = parity + 2 * j;
        sub(j) = 0.5 * sp.r * std::sqrt(double(n + 1) * double(n + 2));
    }
    Eigen::MatrixXd v;
    Eigen::VectorXd lam;
#ifdef SQUEEZE_HAVE_LAPACK
    {
        // divide-and-conquer keeps the large truncations affordable
        int n = int(size), ldz = int(size), info = 0, lwork = -1, liwork = -1;
        v.setZero(size, size);
        lam = diag;
        double wq = 0.0;
        int iwq = 0;
        dstedc_("I", &n, lam.data(), sub.data(), v.data(), &ldz, &wq, &lwork, &iwq, &liwork,
                &info);
        lwork = int(wq);
        liwork = iwq;
        std::vector<double> work(static_cast<size_t>(lwork));
        std::vector<int> iwork(static_cast<size_t>(liwork));
        dstedc_("I", &n, lam.data(), sub.data(), v.data(), &ldz, work.data(), &lwork,
                iwork.data(), &liwork, &info);
        if (info != 0) throw std::runtime_error("spectral_block_corner: dstedc failed");
    }
#else
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        v = es.eigenvectors();
        lam = es.eigenvalues();
    }
#endif
    MatrixXcd w(rows, size);
    for (long k = 0; k < size; ++k) {
        cplx ph = std::polar(1.0, -lam(k));
        for (long p = 0; p < rows; ++p) w(p, k) = v(p, k) * ph;
    }
    MatrixXcd corner = w * v.topRows(rows).transpose();
    constexpr cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (long p = 0; p < rows; ++p)
        for (long q = 0; q < rows; ++q) {
            long d = p - q;
            corner(p, q) *= i_pow[((d % 4) + 4) % 4] * std::polar(1.0, double(d) * sp.phi);
        }
    return corner;
}

// corner of e^G assembled from the two parity blocks; cross-parity entries are
// exactly zero because G never couples them
MatrixXcd assemble_corner(long dim, long max_index, const SqueezeParam& sp, bool spectral) {
    long n_even = (dim + 1) / 2;
    long n_odd = dim / 2;
    MatrixXcd even, odd;
    if (spectral) {
        even = spectral_block_corner(n_even, 0, max_index / 2 + 1, sp);
        odd = spectral_block_corner(n_odd, 1, (max_index + 1) / 2, sp);
    } else {
        even = matrix_exponential(parity_block_generator(n_even, 0, sp));
        odd = matrix_exponential(parity_block_generator(n_odd, 1, sp));
    }
    MatrixXcd corner = MatrixXcd::Zero(max_index + 1, max_index + 1);
    for (long m = 0; m <= max_index; ++m)
        for (long n = m & 1; n <= max_index; n += 2)
            corner(m, n) = (m & 1) ? odd(m / 2, n / 2) : even(m / 2, n / 2);
    return corner;
}

long ladder_start(double r) {
    if (r <= 1.0) return 256;
    if (r <= 1.5) return 512;
    return 1024;
}

constexpr long kDimCap = 8192;
constexpr long kDenseDimCap = 1024;  // above this the spectral path takes over

}  // namespace

FockMatrix build_generator(long dim, const SqueezeParam& sp) {
    if (dim < 2) throw std::domain_error("build_generator: requires dim >= 2");
    MatrixXcd g = MatrixXcd::Zero(dim, dim);
    cplx half_xi = 0.5 * xi_of(sp);
    for (long n = 0; n + 2 < dim; ++n) {
        double c = std::sqrt(double(n + 1) * double(n + 2));
        g(n + 2, n) = half_xi * c;
        g(n, n + 2) = -std::conj(half_xi) * c;
    }
    return {dim, std::move(g)};
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
    return expm_impl(a);
}

Eigen::MatrixXcd corner_exp_dense(long dim, long max_index, const SqueezeParam& sp) {
    if (dim <= max_index + 1) throw std::domain_error("corner_exp_dense: dim too small");
    return assemble_corner(dim, max_index, sp, false);
}

Eigen::MatrixXcd corner_exp_spectral(long dim, long max_index, const SqueezeParam& sp) {
    if (dim <= max_index + 1) throw std::domain_error("corner_exp_spectral: dim too small");
    return assemble_corner(dim, max_index, sp, true);
}

OracleCorner oracle_corner(long max_index, const SqueezeParam& sp, long dim_start) {
    if (max_index < 0) throw std::domain_error("oracle_corner: requires max_index >= 0");
    long dim = dim_start > 0 ? dim_start : ladder_start(sp.r);
    while (dim <= max_index + 1) dim *= 2;
    if (dim > kDimCap)
        throw NonConvergenceError("oracle_corner: starting truncation exceeds the cap");
    MatrixXcd prev = assemble_corner(dim, max_index, sp, dim > kDenseDimCap);
    while (2 * dim <= kDimCap) {
        long dim2 = 2 * dim;
        MatrixXcd cur = assemble_corner(dim2, max_index, sp, dim2 > kDenseDimCap);
        double err = (cur - prev).cwiseAbs().maxCoeff();
        if (err < 1e-10) return {std::move(cur), err, dim2};
        prev = std::move(cur);
        dim = dim2;
    }
    throw NonConvergenceError("oracle_corner: truncation error did not certify below 1e-10");
}

OracleElement element_oracle(IndexPair p, const SqueezeParam& sp, long dim_start) {
    if (p.m < 0 || p.n < 0) throw std::domain_error("element_oracle: indices must be >= 0");
    OracleCorner c = oracle_corner(std::max(p.m, p.n), sp, dim_start);
    return {c.values(p.m, p.n), c.error_estimate, c.dim_used};
}

namespace {

// Both ordered products are checked against the truncation-certified corner of
// e^G, not against a same-dimension truncated exponential, whose trailing
// columns are unconverged at moderate r. A normal-ordered product (raising
// factor leftmost, decaying middle) is entrywise exact below dim, because the
// intermediate index never exceeds the outer ones. The anti-normal product as
// written is not computable in fixed precision: its intermediate sum climbs
// through exp(eta k / 2) with alternating signs and stops converging at all
// once sinh r > 1. Its exact inverse, exp(-zeta K+) exp(-eta K0) exp(zeta* K-),
// is normal ordered and pins the same parameter triple, so the anti branch
// checks that product against the adjoint corner, which is the corner of e^-G.
// The factors multiply out in long double: the product's own intermediate sum
// alternates with a peak near e^18 at the corner top for r = 0.8, which costs
// nine digits, so a double evaluation would floor the check around 1e-8.
FactorizationReport verify_form(const SqueezeParam& sp, long dim, bool anti) {
    if (dim < 4) throw std::domain_error("verify form: requires dim >= 4");
    using cplxl = std::complex<long double>;
    using MatrixXcl = Eigen::Matrix<cplxl, Eigen::Dynamic, Eigen::Dynamic>;
    long double rl = sp.r;
    cplxl zeta = std::polar(std::tanh(rl), static_cast<long double>(sp.phi));
    long double eta = 2.0L * std::log(std::cosh(rl));
    MatrixXcl kp = MatrixXcl::Zero(dim, dim);  // (a+)^2 / 2
    MatrixXcl km = MatrixXcl::Zero(dim, dim);  // a^2 / 2
    MatrixXcl k0 = MatrixXcl::Zero(dim, dim);  // (a a+ + a+ a)/4
    for (long n = 0; n + 2 <= dim - 1; ++n) {
        long double c = 0.5L * std::sqrt(static_cast<long double>(n + 1) * (n + 2));
        kp(n + 2, n) = c;
        km(n, n + 2) = c;
    }
    for (long n = 0; n < dim; ++n) k0(n, n) = 0.5L * (n + 0.5L);

    cplxl up = anti ? -zeta : zeta;
    MatrixXcl f = expm_impl(MatrixXcl(up * kp)) * expm_impl(MatrixXcl(-eta * k0)) *
                  expm_impl(MatrixXcl(-std::conj(up) * km));
    long h = dim / 2;
    MatrixXcd target = oracle_corner(h - 1, sp, dim).values;
    if (anti) target = target.adjoint().eval();
    MatrixXcd diff = f.topLeftCorner(h, h).cast<cplx>() - target;
    Eigen::JacobiSVD<MatrixXcd> svd(diff);
    return {svd.singularValues()(0), dim};
}

}  // namespace

FactorizationReport verify_normal_form(const SqueezeParam& sp, long dim) {
    return verify_form(sp, dim, false);
}

FactorizationReport verify_anti_normal_form(const SqueezeParam& sp, long dim) {
    return verify_form(sp, dim, true);
}

SpinorReport verify_spinor_identity(const SqueezeParam& sp) {
    cplx xi = xi_of(sp);
    MatrixXcd m0(2, 2);
    m0 << 0.0, xi, std::conj(xi), 0.0;
    MatrixXcd e = matrix_exponential(-m0);
    double ch = std::cosh(sp.r), sh = std::sinh(sp.r);
    MatrixXcd target(2, 2);
    target << ch, -std::polar(sh, sp.phi), -std::polar(sh, -sp.phi), ch;
    SpinorReport rep;
    rep.max_dev = (e - target).cwiseAbs().maxCoeff() / ch;
    rep.eta = 2.0 * std::log(e(1, 1).real());
    rep.zeta = -e(0, 1) / e(1, 1);
    rep.zeta_prime = e(1, 0) / e(1, 1);
    rep.pairing_dev = std::abs(rep.zeta_prime + std::conj(rep.zeta));
    return rep;
}

double quadrature_exp_weighted(const std::function<double(double)>& f, double i0,
                               double rel_tol, long max_evals) {
    if (!(i0 > 0.0)) throw std::domain_error("quadrature_exp_weighted: requires i0 > 0");
    if (!(rel_tol > 0.0)) throw std::domain_error("quadrature_exp_weighted: requires rel_tol > 0");
    auto g = [&](double u) { return std::exp(-u) * f(i0 * u); };
    const double upper = 60.0;  // e^{-60} tail, negligible against any usable rel_tol
    double rough = 0.0;
    {
        const int nn = 240;
        double h = upper / nn;
        rough = 0.5 * (g(0.0) + g(upper));
        for (int i = 1; i < nn; ++i) rough += g(h * double(i));
        rough *= h;
    }
    double abs_tol = rel_tol * std::fmax(std::fabs(rough), 1e-300);
    return detail::adaptive_simpson(g, 0.0, upper, abs_tol, max_evals);
}

}  // namespace squeeze::oracle

#pragma once

// Independent cross-check machinery: exponentiates the squeezing generator in a
// truncated Fock basis and certifies each value by doubling the truncation until
// the change falls below 1e-10. Deliberately shares no formulas with the
// closed-form routes.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "squeeze/types.hpp"

namespace squeeze::oracle {

struct FockMatrix {
    long dim = 0;
    Eigen::MatrixXcd entries;
};

// G = (xi/2) (a+)^2 - (xi*/2) a^2 on |0> .. |dim-1>; anti-Hermitian, banded +-2
FockMatrix build_generator(long dim, const SqueezeParam& sp);

// scaling-and-squaring with a degree-24 Taylor polynomial (Paterson-Stockmeyer);
// throws std::overflow_error when the required scaling exceeds 2^60
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

struct OracleElement {
    std::complex<double> value;
    double error_estimate;  // |value(dim) - value(2 dim)|
    long dim_used;
};
// dim_start = 0 picks a truncation from r; escalates by doubling, gives up past 8192
OracleElement element_oracle(IndexPair p, const SqueezeParam& sp, long dim_start = 0);

struct OracleCorner {
    Eigen::MatrixXcd values;  // (max_index+1)^2 corner of e^G
    double error_estimate;    // entrywise max change at the final doubling
    long dim_used;
};
OracleCorner oracle_corner(long max_index, const SqueezeParam& sp, long dim_start = 0);

// the same corner two independent ways. The dense path scales-and-squares the
// parity blocks of G. The spectral path rephases each block into a real
// symmetric tridiagonal matrix and exponentiates its eigendecomposition, which
// stays affordable at the truncations large r demands. oracle_corner certifies
// with the dense path up to dim 1024 and the spectral path beyond.
Eigen::MatrixXcd corner_exp_dense(long dim, long max_index, const SqueezeParam& sp);
Eigen::MatrixXcd corner_exp_spectral(long dim, long max_index, const SqueezeParam& sp);

// spectral-norm deviation, on the leading dim/2 block, between e^G and the
// product of the three one-parameter factors
struct FactorizationReport {
    double deviation;
    long dim;
};
FactorizationReport verify_normal_form(const SqueezeParam& sp, long dim);
FactorizationReport verify_anti_normal_form(const SqueezeParam& sp, long dim);

// exact 2x2 check: exp of -[[0, xi],[xi*, 0]] against its closed form, plus the
// triangular-factor extraction eta = 2 ln M11, zeta = -M01/M11, zeta' = M10/M11
struct SpinorReport {
    double max_dev;                    // entrywise, relative to cosh r
    double eta;
    std::complex<double> zeta, zeta_prime;
    double pairing_dev;                // |zeta' + conj(zeta)|
};
SpinorReport verify_spinor_identity(const SqueezeParam& sp);

// (1/I0) integral_0^inf e^{-I/I0} f(I) dI by adaptive Simpson on the scaled axis
double quadrature_exp_weighted(const std::function<double(double)>& f, double i0,
                               double rel_tol = 1e-9, long max_evals = 4000000);

}  // namespace squeeze::oracle

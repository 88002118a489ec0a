#pragma once

// Special functions tuned for the squeezing-operator matrix elements:
// everything that can grow past double range reports in signed-log form,
// recurrences run on rescaled doubles so only the final assembly pays the
// log-conversion cost. Real arguments only; no derivatives.

#include "squeeze/log_scalar.hpp"

namespace squeeze::specfun {

// ln Gamma(x), x > 0 (domain error otherwise)
double log_gamma(double x);

// rising factorial (a)_k = a (a+1) ... (a+k-1), k >= 0; exact zero when the
// product crosses a nonpositive-integer root
LogSigned pochhammer(double a, long k);

// ultraspherical C_n^{nu}(x), nu > -1/2; three-term recurrence with
// power-of-two rescaling, magnitudes up to e^{+-1e4} and beyond stay representable
LogSigned gegenbauer(long n, double nu, double x);

// P_n(x), |x| <= 1
double legendre_p(long n, double x);

// Ferrers associated Legendre P_l^k(x) with the Condon-Shortley phase,
// |k| <= l, 0 < x < 1; diagonal seed then upward in degree
LogSigned assoc_legendre_p(long l, long k, double x);

// complete elliptic integrals, parameter m (not modulus); AGM
double elliptic_K(double m);  // 0 <= m < 1
double elliptic_E(double m);  // 0 <= m <= 1

// Legendre function of the second kind at half-odd degree, Q_{k-1/2}(z),
// k >= 0 integer, z > 1. Path selection: elliptic seeds + upward recurrence
// while the recurrence contamination stays below 1e-11, otherwise a direct
// descending series, otherwise log-space quadrature of the defining integral.
double legendre_q_half(long k, double z);
LogSigned legendre_q_half_log(long k, double z);

// J_k(x) by Miller's downward recurrence with the even-order sum rule
double bessel_j(long k, double x);

// harmonic-oscillator eigenfunction psi_n(x) = (sqrt(pi) 2^n n!)^{-1/2} H_n(x) e^{-x^2/2}
LogSigned hermite_psi(long n, double x);

// terminating 2F1(a, b; c; z): one of a, b must be a nonpositive integer;
// condition = sum|term| / |sum| (cancellation indicator)
struct HypResult {
    LogSigned value;
    double condition;
};
HypResult hypergeometric_terminating(double a, double b, double c, double z);

}  // namespace squeeze::specfun

#pragma once

// Closed-form weighted combinations of the matrix elements: the coherent-state
// pairing sum, its Bessel closed form, the Gaussian (stochastic-intensity)
// average of the squared pairing, and thermal emission/absorption averages with
// their semiclassical comparator.

#include <complex>
#include <vector>

#include "squeeze/types.hpp"

namespace squeeze::superpose {

// J_k of a complex argument by the ascending series; |w| <= 60, k >= 0
std::complex<double> bessel_j_complex(long k, std::complex<double> w);

struct CoherentPairing {
    std::complex<double> alpha;  // incoming coherent amplitude
    std::complex<double> beta;   // outgoing projection amplitude
    long k = 0;                  // order: pairs <n+2k| with |n>
};

// sum_n beta*^{n+2k}/sqrt((n+2k)!) e^{-|beta|^2/2} alpha^n/sqrt(n!) e^{-|alpha|^2/2} <n+2k|S|n>
std::complex<double> coherent_sum(const CoherentPairing& cp, const SqueezeParam& sp,
                                  double rel_tol = 1e-12);

// exp(-|alpha|^2/2 - |beta|^2/2 + beta* alpha / cosh r) e^{-eta/4} e^{ik phi}
//   (beta*/alpha)^k J_k(beta* alpha tanh r)
std::complex<double> coherent_closed(const CoherentPairing& cp, const SqueezeParam& sp);

// (1/I0) integral e^{-I/I0} J_k(gamma I)^2 dI, closed form via Q_{k-1/2}
double gaussian_average_closed(long k, double gamma, double i0);
double gaussian_average_quadrature(long k, double gamma, double i0, double rel_tol = 1e-9);

struct PlanckWeights {
    std::vector<double> p;  // (1-b) b^n for n = 0..n_max
    double tail;            // exact mass above n_max: b^{n_max+1}
    double b;               // nbar / (1 + nbar)
};
PlanckWeights planck_weights(double nbar, long n_max);

// thermal averages of the 2k-step transition probability, closed form:
//   emission   sum_n p_n |<n+2k|S|n>|^2 = cos(theta) b^{-k} Q_{k-1/2}(z) / (pi sqrt(N) sin(theta))
//   absorption sum_n p_n |<n-2l|S|n>|^2 = cos(theta) b^{+l} Q_{l-1/2}(z) / (pi sqrt(N) sin(theta))
// with N = nbar(1+nbar), sin(theta) = tanh r, z = 1 + 1/(2 N tanh^2 r)
double thermal_emission(long k, double nbar, const SqueezeParam& sp);
double thermal_absorption(long l, double nbar, const SqueezeParam& sp);

// the same averages summed term by term against the Planck weights
double thermal_emission_sum(long k, double nbar, const SqueezeParam& sp, double rel_tol = 1e-10);
double thermal_absorption_sum(long l, double nbar, const SqueezeParam& sp, double rel_tol = 1e-10);

enum class ThermalRegime { rayleigh_jeans, intermediate, wien };
const char* regime_name(ThermalRegime rg);

// quantum thermal averages against the intensity-averaged semiclassical value
// evaluated at the matched intensity scale gamma^2 I0^2 = N tanh^2 r; the
// emission ratio then isolates the b^{-k} enhancement, the balance b^{-2k}
struct ComparisonRow {
    long k = 0;
    double nbar = 0.0;
    double b = 0.0;
    double quantum_emission = 0.0;
    double quantum_absorption = 0.0;
    double semiclassical = 0.0;
    double emission_ratio = 0.0;  // quantum_emission / semiclassical
    double balance = 0.0;         // quantum_emission / quantum_absorption
    ThermalRegime regime = ThermalRegime::intermediate;
};
ComparisonRow semiclassical_comparison(long k, double nbar, const SqueezeParam& sp);

}  // namespace squeeze::superpose

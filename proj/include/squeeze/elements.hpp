#pragma once

// Matrix elements <m|S|n> of the squeezing operator S = exp((xi/2) a+^2 - (xi*/2) a^2)
// between Fock states, by four independent closed-form routes, plus the photon
// number distribution they imply and the large-m oscillator-eigenfunction
// approximation to it.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "squeeze/types.hpp"

namespace squeeze {

enum class Route { gegenbauer, hypergeometric, finite_sum, legendre };
inline constexpr std::array<const char*, 4> kRouteNames = {
    "gegenbauer", "hypergeometric", "finite_sum", "legendre"};

ElementResult element_gegenbauer(IndexPair p, const SqueezeParam& sp);
ElementResult element_hypergeometric(IndexPair p, const SqueezeParam& sp);
ElementResult element_finite_sum(IndexPair p, const SqueezeParam& sp);
ElementResult element_legendre(IndexPair p, const SqueezeParam& sp);
ElementResult element(Route route, IndexPair p, const SqueezeParam& sp);

// |<m|S|n>|^2; phase-free, symmetric in (m, n) by construction
double transition_probability(long m, long n, double r);

// photon number distribution p_m = |<m|S|n>|^2 for fixed input |n>, scanned in
// steps of 2 from the parity floor until the captured mass reaches mass_target
// and the last 10 terms are each below 1e-16; throws NonConvergenceError past hard_cap
struct Distribution {
    long n = 0;
    double r = 0.0;
    std::vector<long> ms;
    std::vector<double> ps;
    double captured_mass = 0.0;
    double mean_energy = 0.0;  // sum (m + 1/2) p_m
    long cutoff = 0;           // largest m scanned
};
Distribution distribution(long n, double r, double mass_target = 1.0 - 1e-10,
                          long hard_cap = 1000000);

// closed form (n + 1/2) cosh 2r for the mean energy after squeezing
double mean_energy_closed(long n, double r);

// large-m approximation <m|S|n> ~ e^{i phi (m-n)/2} psi_n(t_m) / (cosh r sqrt(t_m)),
// t_m = sqrt(m/2)/cosh r; requires m >= 1 and same parity
ElementResult element_hermite_approx(IndexPair p, const SqueezeParam& sp);
double hermite_approx_probability(long m, long n, double r);

// validity indicators for the approximation: it holds when `classical` is small
// and fails once `interference` is large
struct RegimeIndicators {
    double classical;     // n (1 - tanh^2 r)
    double interference;  // n^2 tanh^2 r
};
RegimeIndicators hermite_regime(long n, double r);

// pairwise comparison of the four route values; deviation between two values is
// |a - b| / max(|a|, |b|), skipped when both magnitudes are below floor_abs
struct RouteComparison {
    double max_rel_dev = 0.0;
    std::string worst_pair;  // "route_a/route_b" of the worst deviation
    bool within(double tol) const { return max_rel_dev <= tol; }
};
RouteComparison compare_routes(const std::array<std::complex<double>, 4>& values,
                               double floor_abs = 1e-12);

}  // namespace squeeze

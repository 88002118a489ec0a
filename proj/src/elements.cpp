#include "squeeze/elements.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "squeeze/errors.hpp"
#include "squeeze/specfun.hpp"
#include "detail/dd.hpp"

namespace squeeze {

namespace {

constexpr double kPi = std::numbers::pi;

double lg_fact(long n) { return specfun::log_gamma(double(n) + 1.0); }

int parity_sign(long k) { return (k & 1) ? -1 : 1; }

void check_pair(IndexPair p) {
    if (p.m < 0 || p.n < 0) throw std::domain_error("element: indices must be >= 0");
}

bool wrong_parity(IndexPair p) { return ((p.m ^ p.n) & 1) != 0; }

ElementResult exact_zero() {
    return {std::complex<double>(0.0, 0.0), LogComplex::zero(), {}};
}

ElementResult kronecker(IndexPair p) {
    if (p.m == p.n) return {std::complex<double>(1.0, 0.0), LogComplex::one(), {}};
    return exact_zero();
}

ElementResult assemble(double log_mag, int sign, double phase) {
    if (sign == 0) return exact_zero();
    LogComplex lc = LogComplex::from_polar(log_mag, phase + (sign < 0 ? kPi : 0.0));
    return {lc.to_complex(), lc, {}};
}

std::string cancellation_note(double condition) {
    if (!(condition > 1e6)) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "alternating-sum cancellation: %.1f digits",
                  std::log10(condition));
    return buf;
}

}  // namespace

DerivedParam derive(const SqueezeParam& p) {
    if (!(p.r >= 0.0) || !std::isfinite(p.r))
        throw std::domain_error("derive: requires finite r >= 0");
    if (!std::isfinite(p.phi)) throw std::domain_error("derive: requires finite phi");
    DerivedParam d;
    if (p.r < 300.0) {
        d.eta = 2.0 * std::log(std::cosh(p.r));
        d.x = 1.0 / std::cosh(p.r);
    } else {
        d.eta = 2.0 * (p.r + std::log1p(std::exp(-2.0 * p.r)) - std::numbers::ln2);
        d.x = 2.0 * std::exp(-p.r);
    }
    d.tanh_r = std::tanh(p.r);
    d.theta = std::atan2(d.tanh_r, d.x);
    double sh = std::sinh(std::fmin(p.r, 360.0));
    d.z = -sh * sh;
    d.s = std::exp(p.r);
    return d;
}

ElementResult element_gegenbauer(IndexPair p, const SqueezeParam& sp) {
    check_pair(p);
    if (wrong_parity(p)) return exact_zero();
    if (sp.r == 0.0) return kronecker(p);
    DerivedParam d = derive(sp);
    long m = p.m, n = p.n;
    if (m >= n) {
        long a = (m - n) / 2;
        double log_mag = -0.25 * d.eta + 0.5 * (lg_fact(n) - lg_fact(m)) +
                         specfun::log_gamma(double(a) + 0.5) - 0.5 * std::log(kPi);
        if (a > 0) log_mag += double(a) * (std::numbers::ln2 + std::log(d.tanh_r));
        LogSigned C = specfun::gegenbauer(n, double(a) + 0.5, d.x);
        if (C.sign == 0) return exact_zero();
        return assemble(log_mag + C.log_abs, C.sign, double(a) * sp.phi);
    }
    long l = (n - m) / 2;
    double log_mag = -0.25 * d.eta + 0.5 * (lg_fact(m) - lg_fact(n)) +
                     specfun::log_gamma(double(l) + 0.5) - 0.5 * std::log(kPi) +
                     double(l) * (std::numbers::ln2 + std::log(d.tanh_r));
    LogSigned C = specfun::gegenbauer(m, double(l) + 0.5, d.x);
    if (C.sign == 0) return exact_zero();
    return assemble(log_mag + C.log_abs, parity_sign(l) * C.sign, -double(l) * sp.phi);
}

ElementResult element_hypergeometric(IndexPair p, const SqueezeParam& sp) {
    check_pair(p);
    if (wrong_parity(p)) return exact_zero();
    if (sp.r == 0.0) return kronecker(p);
    DerivedParam d = derive(sp);
    long m = p.m, n = p.n;
    long lo = std::min(m, n), hi = std::max(m, n);
    long a = (hi - lo) / 2;
    auto F = specfun::hypergeometric_terminating(-0.5 * double(lo), 0.5 * (1.0 - double(lo)),
                                                 double(a) + 1.0, d.z);
    if (F.value.sign == 0) return exact_zero();
    double log_mag = -0.5 * (double(lo) + 0.5) * d.eta + 0.5 * (lg_fact(hi) - lg_fact(lo)) -
                     lg_fact(a) + F.value.log_abs;
    if (a > 0) log_mag += double(a) * (std::log(d.tanh_r) - std::numbers::ln2);
    int sign = F.value.sign;
    double phase = double(a) * sp.phi;
    if (m < n) {  // mirror carries (-zeta*/2)^a instead of (zeta/2)^a
        sign *= parity_sign(a);
        phase = -phase;
    }
    ElementResult out = assemble(log_mag, sign, phase);
    out.condition_note = cancellation_note(F.condition);
    return out;
}

ElementResult element_finite_sum(IndexPair p, const SqueezeParam& sp) {
    check_pair(p);
    if (wrong_parity(p)) return exact_zero();
    if (sp.r == 0.0) return kronecker(p);
    DerivedParam d = derive(sp);
    long m = p.m, n = p.n;
    long lo = std::min(m, n), hi = std::max(m, n);
    long a = (hi - lo) / 2;
    // sum_k (z/4)^k / ((a+k)! k! (lo-2k)!), factored against its k = 0 term
    detail::dd term{1.0, 0.0};
    detail::dd sum{1.0, 0.0};
    double sum_abs = 1.0;
    double q = 0.25 * d.z;
    long K = lo / 2;
    for (long k = 0; k < K; ++k) {
        double rem = double(lo - 2 * k);
        detail::dd num = detail::mul(detail::two_prod(rem, rem - 1.0), q);
        detail::dd den = detail::two_prod(double(a + k) + 1.0, double(k) + 1.0);
        term = detail::div(detail::mul(term, num), den);
        sum = detail::add(sum, term);
        sum_abs += std::fabs(term.hi);
    }
    if (sum.hi == 0.0 && sum.lo == 0.0) return exact_zero();
    double hi_part = (sum.hi != 0.0) ? sum.hi : sum.lo;
    double corr = (sum.hi != 0.0) ? std::log1p(sum.lo / sum.hi) : 0.0;
    double log_sum = std::log(std::fabs(hi_part)) + corr;
    double log_mag = -0.5 * (double(lo) + 0.5) * d.eta + 0.5 * (lg_fact(hi) + lg_fact(lo)) -
                     lg_fact(a) - lg_fact(lo) + log_sum;
    if (a > 0) log_mag += double(a) * (std::log(d.tanh_r) - std::numbers::ln2);
    int sign = hi_part > 0 ? 1 : -1;
    double phase = double(a) * sp.phi;
    if (m < n) {
        sign *= parity_sign(a);
        phase = -phase;
    }
    ElementResult out = assemble(log_mag, sign, phase);
    out.condition_note = cancellation_note(sum_abs / std::fabs(hi_part));
    return out;
}

ElementResult element_legendre(IndexPair p, const SqueezeParam& sp) {
    check_pair(p);
    if (wrong_parity(p)) return exact_zero();
    if (sp.r == 0.0) return kronecker(p);
    DerivedParam d = derive(sp);
    long m = p.m, n = p.n;
    long l = (m + n) / 2;
    long k = (std::max(m, n) - std::min(m, n)) / 2;
    LogSigned P = specfun::assoc_legendre_p(l, k, d.x);
    if (P.sign == 0) return exact_zero();
    double log_mag = 0.5 * (lg_fact(std::min(m, n)) - lg_fact(std::max(m, n))) +
                     0.5 * std::log(d.x) + P.log_abs;
    if (m >= n) {
        // the explicit (-1)^k cancels the Condon-Shortley phase carried by P
        return assemble(log_mag, parity_sign(k) * P.sign, double(k) * sp.phi);
    }
    return assemble(log_mag, P.sign, -double(k) * sp.phi);
}

ElementResult element(Route route, IndexPair p, const SqueezeParam& sp) {
    switch (route) {
        case Route::gegenbauer: return element_gegenbauer(p, sp);
        case Route::hypergeometric: return element_hypergeometric(p, sp);
        case Route::finite_sum: return element_finite_sum(p, sp);
        case Route::legendre: return element_legendre(p, sp);
    }
    throw std::invalid_argument("element: unknown route");
}

double transition_probability(long m, long n, double r) {
    if (m < 0 || n < 0) throw std::domain_error("transition_probability: indices must be >= 0");
    if (((m ^ n) & 1) != 0) return 0.0;
    if (r == 0.0) return m == n ? 1.0 : 0.0;
    DerivedParam d = derive({r, 0.0});
    long lo = std::min(m, n), hi = std::max(m, n);
    long l = (m + n) / 2, k = (hi - lo) / 2;
    LogSigned P = specfun::assoc_legendre_p(l, k, d.x);
    if (P.sign == 0) return 0.0;
    return std::exp(lg_fact(lo) - lg_fact(hi) + std::log(d.x) + 2.0 * P.log_abs);
}

Distribution distribution(long n, double r, double mass_target, long hard_cap) {
    if (n < 0) throw std::domain_error("distribution: requires n >= 0");
    if (!(r >= 0.0)) throw std::domain_error("distribution: requires r >= 0");
    double target = std::fmin(mass_target, 1.0 - 1e-12);
    Distribution out;
    out.n = n;
    out.r = r;
    long small_streak = 0;
    for (long m = n % 2;; m += 2) {
        if (m > hard_cap)
            throw NonConvergenceError("distribution: mass target not reached below the hard cap");
        double p = transition_probability(m, n, r);
        out.ms.push_back(m);
        out.ps.push_back(p);
        out.captured_mass += p;
        out.mean_energy += (double(m) + 0.5) * p;
        out.cutoff = m;
        small_streak = (p < 1e-16) ? small_streak + 1 : 0;
        if (out.captured_mass >= target && small_streak >= 10) break;
    }
    return out;
}

double mean_energy_closed(long n, double r) {
    return (double(n) + 0.5) * std::cosh(2.0 * r);
}

ElementResult element_hermite_approx(IndexPair p, const SqueezeParam& sp) {
    check_pair(p);
    if (wrong_parity(p)) return exact_zero();
    if (p.m < 1) throw std::domain_error("element_hermite_approx: requires m >= 1");
    DerivedParam d = derive(sp);
    double tm = std::sqrt(0.5 * double(p.m)) * d.x;
    LogSigned psi = specfun::hermite_psi(p.n, tm);
    if (psi.sign == 0) return exact_zero();
    double log_mag = -0.5 * d.eta - 0.5 * std::log(tm) + psi.log_abs;
    return assemble(log_mag, psi.sign, 0.5 * double(p.m - p.n) * sp.phi);
}

double hermite_approx_probability(long m, long n, double r) {
    if (m < 1) throw std::domain_error("hermite_approx_probability: requires m >= 1");
    DerivedParam d = derive({r, 0.0});
    double tm = std::sqrt(0.5 * double(m)) * d.x;
    LogSigned psi = specfun::hermite_psi(n, tm);
    if (psi.sign == 0) return 0.0;
    return std::exp(2.0 * psi.log_abs - std::log(tm) - d.eta);
}

RegimeIndicators hermite_regime(long n, double r) {
    double t2 = std::tanh(r) * std::tanh(r);
    return {double(n) * (1.0 - t2), double(n) * double(n) * t2};
}

RouteComparison compare_routes(const std::array<std::complex<double>, 4>& values,
                               double floor_abs) {
    RouteComparison out;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            double scale = std::fmax(std::abs(values[i]), std::abs(values[j]));
            if (scale <= floor_abs) continue;
            double dev = std::abs(values[i] - values[j]) / scale;
            if (dev > out.max_rel_dev) {
                out.max_rel_dev = dev;
                out.worst_pair = std::string(kRouteNames[i]) + "/" + kRouteNames[j];
            }
        }
    }
    return out;
}

}  // namespace squeeze

#include "squeeze/superpose.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "squeeze/elements.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/oracle.hpp"
#include "squeeze/specfun.hpp"

namespace squeeze::superpose {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

double lg_fact(long n) { return specfun::log_gamma(double(n) + 1.0); }

struct ThermalGeometry {
    double b, log_b, n_big, z, log_common;
};

ThermalGeometry thermal_geometry(double nbar, const SqueezeParam& sp) {
    if (!(nbar > 0.0)) throw std::domain_error("thermal closed form: requires nbar > 0");
    if (!(sp.r > 0.0)) throw std::domain_error("thermal closed form: requires r > 0");
    DerivedParam d = derive(sp);
    ThermalGeometry g;
    g.b = nbar / (1.0 + nbar);
    g.log_b = std::log(nbar) - std::log1p(nbar);
    g.n_big = nbar * (1.0 + nbar);
    double s2 = d.tanh_r * d.tanh_r;
    g.z = 1.0 + 1.0 / (2.0 * g.n_big * s2);
    g.log_common = std::log(d.x) - std::log(kPi) - 0.5 * std::log(g.n_big) -
                   std::log(d.tanh_r);
    return g;
}

}  // namespace

cplx bessel_j_complex(long k, cplx w) {
    if (k < 0) throw std::domain_error("bessel_j_complex: requires k >= 0");
    double aw = std::abs(w);
    if (!(aw <= 60.0)) throw std::domain_error("bessel_j_complex: series path needs |w| <= 60");
    if (aw == 0.0) return k == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    // (w/2)^k / k! in log-polar form to keep large k safe
    cplx half = 0.5 * w;
    LogComplex pref = LogComplex::from_polar(double(k) * std::log(std::abs(half)) - lg_fact(k),
                                             double(k) * std::arg(half));
    cplx q = -half * half;  // term ratio numerator: -(w/2)^2
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    for (long j = 1; j <= 500; ++j) {
        term *= q / (double(j) * double(j + k));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    cplx out = (pref * LogComplex::from_complex(sum)).to_complex();
    // J_k maps the real axis to the real axis; drop the phase-rounding residue
    if (w.imag() == 0.0) out.imag(0.0);
    return out;
}

cplx coherent_sum(const CoherentPairing& cp, const SqueezeParam& sp, double rel_tol) {
    if (cp.k < 0) throw std::domain_error("coherent_sum: requires k >= 0");
    double aa = std::abs(cp.alpha), ab = std::abs(cp.beta);
    double arg_a = std::arg(cp.alpha), arg_b = std::arg(cp.beta);
    double w2 = 0.5 * (aa * aa + ab * ab);
    if (ab == 0.0) {
        if (cp.k > 0) return 0.0;
        return std::exp(-w2) * element_gegenbauer({0, 0}, sp).value;
    }
    auto term_at = [&](long n) {
        double la = (n == 0) ? 0.0 : double(n) * std::log(aa);
        LogComplex coeff = LogComplex::from_polar(
            double(n + 2 * cp.k) * std::log(ab) - 0.5 * lg_fact(n + 2 * cp.k) + la -
                0.5 * lg_fact(n) - w2,
            -double(n + 2 * cp.k) * arg_b + double(n) * arg_a);
        return (coeff * element_gegenbauer({n + 2 * cp.k, n}, sp).log_form).to_complex();
    };
    if (aa == 0.0) return term_at(0);  // alpha^n keeps only n = 0
    cplx sum = 0.0;
    int small_streak = 0;
    for (long n = 0; n <= 100000; ++n) {
        cplx term = term_at(n);
        sum += term;
        bool small = std::abs(term) <= 0.5 * rel_tol * (std::abs(sum) + 1e-300);
        small_streak = small ? small_streak + 1 : 0;
        if (small_streak >= 6) return sum;
    }
    throw NonConvergenceError("coherent_sum: pairing sum failed to converge");
}

cplx coherent_closed(const CoherentPairing& cp, const SqueezeParam& sp) {
    if (cp.k < 0) throw std::domain_error("coherent_closed: requires k >= 0");
    double aa = std::abs(cp.alpha), ab = std::abs(cp.beta);
    if (aa == 0.0 && cp.k > 0)
        throw std::domain_error("coherent_closed: alpha = 0 with k > 0 (power of beta*/alpha)");
    DerivedParam d = derive(sp);
    cplx w = std::conj(cp.beta) * cp.alpha;
    cplx expo = -0.5 * (aa * aa + ab * ab) + w * d.x - 0.25 * d.eta +
                cplx(0.0, double(cp.k) * sp.phi);
    cplx ratio_pow(1.0, 0.0);
    if (cp.k > 0) {
        if (ab == 0.0) return 0.0;
        ratio_pow = std::polar(std::pow(ab / aa, double(cp.k)),
                               double(cp.k) * (-std::arg(cp.beta) - std::arg(cp.alpha)));
    }
    return std::exp(expo) * ratio_pow * bessel_j_complex(cp.k, w * d.tanh_r);
}

double gaussian_average_closed(long k, double gamma, double i0) {
    if (k < 0) throw std::domain_error("gaussian_average_closed: requires k >= 0");
    if (!(gamma > 0.0 && i0 > 0.0))
        throw std::domain_error("gaussian_average_closed: requires gamma > 0 and i0 > 0");
    double gi = gamma * i0;
    double z = 1.0 + 1.0 / (2.0 * gi * gi);
    return std::exp(specfun::legendre_q_half_log(k, z).log_abs - std::log(kPi) - std::log(gi));
}

double gaussian_average_quadrature(long k, double gamma, double i0, double rel_tol) {
    if (k < 0) throw std::domain_error("gaussian_average_quadrature: requires k >= 0");
    auto f = [k, gamma](double I) {
        double j = specfun::bessel_j(k, gamma * I);
        return j * j;
    };
    return oracle::quadrature_exp_weighted(f, i0, rel_tol);
}

PlanckWeights planck_weights(double nbar, long n_max) {
    if (!(nbar >= 0.0)) throw std::domain_error("planck_weights: requires nbar >= 0");
    if (n_max < 0) throw std::domain_error("planck_weights: requires n_max >= 0");
    PlanckWeights out;
    out.b = nbar / (1.0 + nbar);
    out.p.resize(n_max + 1);
    double w = 1.0 - out.b;
    for (long n = 0; n <= n_max; ++n) {
        out.p[n] = w;
        w *= out.b;
    }
    out.tail = std::pow(out.b, double(n_max + 1));
    return out;
}

double thermal_emission(long k, double nbar, const SqueezeParam& sp) {
    if (k < 0) throw std::domain_error("thermal_emission: requires k >= 0");
    ThermalGeometry g = thermal_geometry(nbar, sp);
    return std::exp(g.log_common - double(k) * g.log_b +
                    specfun::legendre_q_half_log(k, g.z).log_abs);
}

double thermal_absorption(long l, double nbar, const SqueezeParam& sp) {
    if (l < 0) throw std::domain_error("thermal_absorption: requires l >= 0");
    ThermalGeometry g = thermal_geometry(nbar, sp);
    return std::exp(g.log_common + double(l) * g.log_b +
                    specfun::legendre_q_half_log(l, g.z).log_abs);
}

namespace {

double thermal_sum(long k, double nbar, const SqueezeParam& sp, double rel_tol, bool emission) {
    if (k < 0) throw std::domain_error("thermal sum: requires order >= 0");
    if (!(nbar >= 0.0)) throw std::domain_error("thermal sum: requires nbar >= 0");
    double b = nbar / (1.0 + nbar);
    // absorption starts from |n + 2l>, so the Planck weight of the initial
    // state carries an extra b^{2l} relative to the emitted index
    double scale = emission ? 1.0 : std::pow(b, double(2 * k));
    double pn = (1.0 - b) * scale;
    double tail = b * scale;  // weight mass above the current initial state
    double sum = 0.0;
    for (long n = 0; n <= 200000; ++n) {
        long from = emission ? n : n + 2 * k;
        long to = emission ? n + 2 * k : n;
        double term = pn * transition_probability(to, from, sp.r);
        sum += term;
        double floor = rel_tol * std::fmax(sum, 1e-300);
        if (tail < floor && term < floor) return sum;
        pn *= b;
        tail *= b;
    }
    throw NonConvergenceError("thermal sum: did not converge within the term cap");
}

}  // namespace

double thermal_emission_sum(long k, double nbar, const SqueezeParam& sp, double rel_tol) {
    return thermal_sum(k, nbar, sp, rel_tol, true);
}

double thermal_absorption_sum(long l, double nbar, const SqueezeParam& sp, double rel_tol) {
    return thermal_sum(l, nbar, sp, rel_tol, false);
}

const char* regime_name(ThermalRegime rg) {
    switch (rg) {
        case ThermalRegime::rayleigh_jeans: return "rayleigh_jeans";
        case ThermalRegime::wien: return "wien";
        case ThermalRegime::intermediate: return "intermediate";
    }
    return "intermediate";
}

ComparisonRow semiclassical_comparison(long k, double nbar, const SqueezeParam& sp) {
    if (k < 1) throw std::domain_error("semiclassical_comparison: requires k >= 1");
    ThermalGeometry g = thermal_geometry(nbar, sp);
    DerivedParam d = derive(sp);
    ComparisonRow row;
    row.k = k;
    row.nbar = nbar;
    row.b = g.b;
    row.quantum_emission = thermal_emission(k, nbar, sp);
    row.quantum_absorption = thermal_absorption(k, nbar, sp);
    // matched intensity scale: gamma I0 = sqrt(N) tanh r, then scaled by cos(theta)
    row.semiclassical = d.x * gaussian_average_closed(k, std::sqrt(g.n_big) * d.tanh_r, 1.0);
    row.emission_ratio = row.quantum_emission / row.semiclassical;
    row.balance = row.quantum_emission / row.quantum_absorption;
    double hv = -g.log_b;  // photon energy over kT
    row.regime = hv < 0.1 ? ThermalRegime::rayleigh_jeans
                          : (hv > 3.0 ? ThermalRegime::wien : ThermalRegime::intermediate);
    return row;
}

}  // namespace squeeze::superpose

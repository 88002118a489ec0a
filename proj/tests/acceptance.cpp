// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL line
// with its measured figure and its pinned tolerance; the exit code is the
// number of failed criteria (0 when all hold).

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "squeeze/elements.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/oracle.hpp"
#include "squeeze/superpose.hpp"
#include "squeeze/types.hpp"

namespace {

using namespace squeeze;
using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[400];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// 1. closed form against the truncated-generator exponential, absolute error
Outcome oracle_agreement() {
    const double tol = 1e-8;
    const double rs[] = {0.1, 0.5, 1.0, 1.5, 2.0};
    const long starts[] = {128, 256, 512, 2048, 4096};  // certified by doubling from here
    const double phis[] = {0.0, kPi / 3.0, 2.0};
    double worst = 0.0;
    std::string at = "-";
    for (int i = 0; i < 5; ++i)
        for (double phi : phis) {
            SqueezeParam sp{rs[i], phi};
            oracle::OracleCorner c = oracle::oracle_corner(60, sp, starts[i]);
            for (long m = 0; m <= 60; ++m)
                for (long n = 0; n <= 60; ++n) {
                    double d = std::abs(element_gegenbauer({m, n}, sp).value - c.values(m, n));
                    if (d > worst) {
                        worst = d;
                        at = fmt("m=%ld n=%ld r=%g phi=%.3f", m, n, rs[i], phi);
                    }
                }
        }
    return {worst <= tol,
            fmt("max |closed - oracle| = %.2e (%s), tol %.0e; m,n <= 60, 5 r x 3 phases",
                worst, at.c_str(), tol)};
}

// 2. the four routes against each other, relative, skipping magnitudes < 1e-12
Outcome route_agreement() {
    const double tol = 1e-9;
    const double rs[] = {0.1, 0.5, 1.0, 1.5, 2.0};
    const double phis[] = {0.0, kPi / 3.0, 2.0};
    double worst = 0.0;
    std::string at = "-";
    for (double r : rs)
        for (double phi : phis) {
            SqueezeParam sp{r, phi};
            for (long m = 0; m <= 60; ++m)
                for (long n = m & 1; n <= 60; n += 2) {
                    IndexPair p{m, n};
                    std::array<cplx, 4> v = {
                        element_gegenbauer(p, sp).value, element_hypergeometric(p, sp).value,
                        element_finite_sum(p, sp).value, element_legendre(p, sp).value};
                    RouteComparison rc = compare_routes(v);
                    if (rc.max_rel_dev > worst) {
                        worst = rc.max_rel_dev;
                        at = fmt("m=%ld n=%ld r=%g phi=%.3f %s", m, n, r, phi,
                                 rc.worst_pair.c_str());
                    }
                }
        }
    return {worst <= tol,
            fmt("max pairwise rel dev = %.2e (%s), tol %.0e on the same grid", worst,
                at.c_str(), tol)};
}

// 3. quoted scalar values recovered from the computed distributions themselves
Outcome scalar_spot_checks() {
    DerivedParam d = derive({1.5, 0.0});
    double t2 = d.tanh_r * d.tanh_r;
    bool ok = std::fabs(d.s - 4.48) <= 0.005 && std::fabs(t2 - 0.82) <= 0.005;
    const long ns[] = {0, 1, 5};
    const double want[] = {5.03, 15.1, 55.4};
    double got[3];
    for (int i = 0; i < 3; ++i) {
        got[i] = distribution(ns[i], 1.5).mean_energy;  // sum (m + 1/2) p_m, not closed form
        ok = ok && std::fabs(got[i] - want[i]) <= 0.05;
    }
    return {ok,
            fmt("e^r = %.4f (4.48 +- 0.005), tanh^2 = %.4f (0.82 +- 0.005), "
                "mean energies {%.3f, %.3f, %.3f} vs {5.03, 15.1, 55.4} +- 0.05",
                d.s, t2, got[0], got[1], got[2])};
}

// 4. column mass of the distribution returns to 1
Outcome unitarity() {
    const double tol = 1e-9;
    double worst = 0.0;
    std::string at = "-";
    for (double r : {0.5, 1.0, 1.5, 2.0})
        for (long n = 0; n <= 40; ++n) {
            Distribution dd = distribution(n, r, 1.0);
            double dev = std::fabs(dd.captured_mass - 1.0);
            if (dev > worst) {
                worst = dev;
                at = fmt("n=%ld r=%g", n, r);
            }
        }
    return {worst <= tol,
            fmt("max |column mass - 1| = %.2e (%s), tol %.0e; n <= 40, r <= 2", worst,
                at.c_str(), tol)};
}

// 5. coherent two-sided identity, gaussian quadrature-vs-closed, thermal sum-vs-closed
Outcome superposition_identities() {
    const double tol_c = 1e-8, tol_g = 1e-6, tol_t = 1e-8;
    double worst_c = 0.0, worst_g = 0.0, worst_t = 0.0;

    for (double ma : {0.7, 1.2, 3.0})
        for (double aa : {0.0, 0.7})
            for (double mb : {0.7, 1.2, 3.0})
                for (long k = 0; k <= 4; ++k)
                    for (double r : {0.4, 0.8, 1.2})
                        for (double phi : {0.0, 1.1}) {
                            superpose::CoherentPairing cp{std::polar(ma, aa),
                                                          std::polar(mb, 0.3), k};
                            SqueezeParam sp{r, phi};
                            cplx lhs = superpose::coherent_sum(cp, sp);
                            cplx rhs = superpose::coherent_closed(cp, sp);
                            double scale =
                                std::fmax(std::fmax(std::abs(lhs), std::abs(rhs)), 1e-14);
                            worst_c = std::fmax(worst_c, std::abs(lhs - rhs) / scale);
                        }

    for (long k = 0; k <= 5; ++k)
        for (double gi : {0.1, 0.5, 1.0, 3.0})
            for (double i0 : {1.0, 2.0}) {
                double q = superpose::gaussian_average_quadrature(k, gi / i0, i0);
                double c = superpose::gaussian_average_closed(k, gi / i0, i0);
                worst_g = std::fmax(worst_g, std::fabs(q - c) / c);
            }

    for (long k = 0; k <= 5; ++k)
        for (double nbar : {0.1, 1.0, 5.0})
            for (double r : {0.5, 1.0, 1.5}) {
                SqueezeParam sp{r, 0.0};
                double ec = superpose::thermal_emission(k, nbar, sp);
                double es = superpose::thermal_emission_sum(k, nbar, sp);
                worst_t = std::fmax(worst_t, std::fabs(es - ec) / ec);
                double ac = superpose::thermal_absorption(k, nbar, sp);
                double as = superpose::thermal_absorption_sum(k, nbar, sp);
                worst_t = std::fmax(worst_t, std::fabs(as - ac) / ac);
            }

    bool ok = worst_c <= tol_c && worst_g <= tol_g && worst_t <= tol_t;
    return {ok,
            fmt("coherent rel %.2e (tol %.0e, 540 pts), gaussian rel %.2e (tol %.0e), "
                "thermal rel %.2e (tol %.0e)",
                worst_c, tol_c, worst_g, tol_g, worst_t, tol_t)};
}

// 6. detailed-balance prefactor and the two temperature regimes
Outcome thermal_balance_regimes() {
    SqueezeParam sp{1.0, 0.0};
    double worst_bal = 0.0;
    for (double nbar : {0.2, 1.0, 4.0})
        for (long k = 1; k <= 4; ++k) {
            double b = nbar / (1.0 + nbar);
            double lhs = superpose::thermal_emission(k, nbar, sp) /
                         superpose::thermal_absorption(k, nbar, sp);
            worst_bal = std::fmax(worst_bal, std::fabs(lhs * std::pow(b, 2 * k) - 1.0));
        }

    double worst_rj = 0.0;
    bool regimes_ok = true;
    for (long k = 1; k <= 3; ++k) {
        superpose::ComparisonRow row = superpose::semiclassical_comparison(k, 99.0, sp);
        worst_rj = std::fmax(worst_rj, std::fabs(row.emission_ratio - 1.0));
        regimes_ok = regimes_ok && row.regime == superpose::ThermalRegime::rayleigh_jeans;
    }
    superpose::ComparisonRow wien = superpose::semiclassical_comparison(2, 1.0 / 49.0, sp);
    regimes_ok = regimes_ok && wien.regime == superpose::ThermalRegime::wien;

    bool ok = worst_bal <= 1e-10 && worst_rj <= 0.06 && wien.emission_ratio >= 100.0 &&
              regimes_ok;
    return {ok,
            fmt("balance dev %.2e (tol 1e-10); b=0.99 ratio dev %.3f (tol 0.06); "
                "b=0.02 k=2 ratio %.0f (>= 100)",
                worst_bal, worst_rj, wien.emission_ratio)};
}

// 7. oscillator-eigenfunction approximation stays near the exact distribution
Outcome oscillator_approximation() {
    const double tol = 0.018;  // frozen after first computation; the gap sits at m=1
    double sup = 0.0;
    long at = -1;
    for (long m = 1; m <= 301; m += 2) {
        double exact = transition_probability(m, 5, 1.5);
        double approx = hermite_approx_probability(m, 5, 1.5);
        double gap = std::fabs(exact - approx);
        if (gap > sup) {
            sup = gap;
            at = m;
        }
    }
    return {sup <= tol, fmt("sup |p_exact - p_approx| = %.4f at m=%ld, frozen bound %.3f "
                            "(n=5, r=1.5, odd m <= 301)",
                            sup, at, tol)};
}

// 8. the n=30, r=1 distribution oscillates: count interior local maxima
Outcome distribution_oscillations() {
    Distribution d = distribution(30, 1.0);
    long count = 0;
    for (size_t i = 1; i + 1 < d.ms.size() && d.ms[i + 1] <= 200; ++i)
        if (d.ps[i] > d.ps[i - 1] && d.ps[i] > d.ps[i + 1]) ++count;
    return {count >= 5,
            fmt("%ld interior local maxima over even m in [0, 200], required >= 5", count)};
}

// 9. ordered factorizations and the 2x2 spinor identity
Outcome operator_factorizations() {
    oracle::FactorizationReport nf = oracle::verify_normal_form({0.8, 1.1}, 128);
    oracle::FactorizationReport af = oracle::verify_anti_normal_form({0.8, 1.1}, 128);
    double worst_spinor = 0.0;
    for (double r : {0.3, 0.8, 2.0})
        for (double phi : {0.0, 1.1, -2.5}) {
            oracle::SpinorReport rep = oracle::verify_spinor_identity({r, phi});
            DerivedParam d = derive({r, phi});
            worst_spinor = std::fmax(worst_spinor, rep.max_dev);
            worst_spinor = std::fmax(worst_spinor, rep.pairing_dev);
            worst_spinor = std::fmax(worst_spinor, std::fabs(rep.eta - d.eta));
            worst_spinor =
                std::fmax(worst_spinor, std::abs(rep.zeta - std::polar(d.tanh_r, phi)));
        }
    bool ok = nf.deviation <= 1e-9 && af.deviation <= 1e-9 && worst_spinor <= 1e-13;
    return {ok,
            fmt("normal %.2e, anti-normal %.2e (tol 1e-9, r=0.8 phi=1.1 dim=128); "
                "spinor %.2e (tol 1e-13)",
                nf.deviation, af.deviation, worst_spinor)};
}

}  // namespace

int main() {
    struct Row {
        const char* name;
        Outcome (*fn)();
    };
    const Row rows[] = {
        {"oracle_agreement", oracle_agreement},
        {"route_agreement", route_agreement},
        {"scalar_spot_checks", scalar_spot_checks},
        {"unitarity", unitarity},
        {"superposition_identities", superposition_identities},
        {"thermal_balance_regimes", thermal_balance_regimes},
        {"oscillator_approximation", oscillator_approximation},
        {"distribution_oscillations", distribution_oscillations},
        {"operator_factorizations", operator_factorizations},
    };
    const size_t total = sizeof rows / sizeof rows[0];
    int fails = 0;
    for (size_t i = 0; i < total; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = rows[i].fn();
        } catch (const std::exception& e) {
            o = {false, fmt("exception: %s", e.what())};
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %zu/%zu %-26s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, total,
                    rows[i].name, o.detail.c_str(), sec);
        std::fflush(stdout);
        if (!o.pass) ++fails;
    }
    std::printf("acceptance: %zu criteria, %d failed\n", total, fails);
    return fails == 0 ? 0 : 1;
}

// command line front end: closed-form squeezing matrix elements, Fock
// distributions, superposition averages, and the self-validation battery
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squeeze/elements.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/oracle.hpp"
#include "squeeze/superpose.hpp"
#include "squeeze/validate.hpp"
#include "squeeze/version.hpp"

namespace {

using squeeze::Distribution;
using squeeze::ElementResult;
using squeeze::IndexPair;
using squeeze::Route;
using squeeze::SqueezeParam;
using cplx = std::complex<double>;

// deterministic JSON: fixed key order, %.17g doubles, no locale dependence
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k) {
        comma();
        buf_ += '"';
        buf_ += k;
        buf_ += "\": ";
        pending_key_ = true;
        return *this;
    }
    JsonWriter& value(double v) {
        comma();
        if (!std::isfinite(v)) {
            buf_ += "null";
        } else {
            char tmp[32];
            std::snprintf(tmp, sizeof tmp, "%.17g", v);
            buf_ += tmp;
        }
        return *this;
    }
    JsonWriter& value(long v) {
        comma();
        buf_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(int v) { return value(long(v)); }
    JsonWriter& value(bool v) {
        comma();
        buf_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(std::string_view s) {
        comma();
        buf_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': buf_ += "\\\""; break;
                case '\\': buf_ += "\\\\"; break;
                case '\n': buf_ += "\\n"; break;
                case '\t': buf_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char tmp[8];
                        std::snprintf(tmp, sizeof tmp, "\\u%04x", c);
                        buf_ += tmp;
                    } else {
                        buf_ += c;
                    }
            }
        }
        buf_ += '"';
        return *this;
    }
    // without this a C string would take the pointer-to-bool conversion
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null() {
        comma();
        buf_ += "null";
        return *this;
    }
    JsonWriter& complex_value(cplx v) {
        begin_object();
        key("re").value(v.real());
        key("im").value(v.imag());
        return end_object();
    }

    std::string take() {
        buf_ += '\n';
        return std::move(buf_);
    }

private:
    std::string buf_;
    std::vector<bool> has_item_{};
    bool pending_key_ = false;

    JsonWriter& open(char c) {
        comma();
        buf_ += c;
        has_item_.push_back(false);
        return *this;
    }
    JsonWriter& close(char c) {
        buf_ += c;
        has_item_.pop_back();
        return *this;
    }
    void comma() {
        if (pending_key_) {
            pending_key_ = false;
            return;
        }
        if (!has_item_.empty()) {
            if (has_item_.back()) buf_ += ", ";
            has_item_.back() = true;
        }
    }
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f.write(text.data(), std::streamsize(text.size()));
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// ---- element ----

struct ElementArgs {
    long m = 0, n = 0;
    double r = 0.0, phi = 0.0;
    std::string route = "all";
    bool with_oracle = false;
    long oracle_dim_start = 0;
    double tol = 1e-9;
    double oracle_tol = 1e-8;
    bool timing = false;
    std::string out;
};

int run_element(const ElementArgs& a) {
    Timer timer;
    SqueezeParam sp{a.r, a.phi};
    IndexPair p{a.m, a.n};
    std::array<ElementResult, 4> res = {
        squeeze::element_gegenbauer(p, sp), squeeze::element_hypergeometric(p, sp),
        squeeze::element_finite_sum(p, sp), squeeze::element_legendre(p, sp)};
    std::array<cplx, 4> vals;
    for (size_t i = 0; i < 4; ++i) vals[i] = res[i].value;
    squeeze::RouteComparison rc = squeeze::compare_routes(vals);
    bool routes_agree = rc.within(a.tol);

    int pick = 0;
    if (a.route != "all") {
        for (int i = 0; i < 4; ++i)
            if (a.route == squeeze::kRouteNames[i]) pick = i;
    }

    bool oracle_agrees = true;
    squeeze::oracle::OracleElement oe;
    if (a.with_oracle) {
        oe = squeeze::oracle::element_oracle(p, sp, a.oracle_dim_start);
        oracle_agrees = std::abs(oe.value - vals[0]) <= a.oracle_tol;
    }

    JsonWriter j;
    j.begin_object();
    j.key("inputs").begin_object();
    j.key("m").value(a.m);
    j.key("n").value(a.n);
    j.key("r").value(a.r);
    j.key("phi").value(a.phi);
    j.key("route").value(a.route);
    j.end_object();
    j.key("outputs").begin_object();
    j.key("value").complex_value(vals[pick]);
    j.key("probability").value(squeeze::transition_probability(a.m, a.n, a.r));
    j.key("routes").begin_object();
    for (int i = 0; i < 4; ++i) {
        j.key(squeeze::kRouteNames[i]).begin_object();
        j.key("re").value(vals[i].real());
        j.key("im").value(vals[i].imag());
        j.key("log_abs").value(res[i].log_form.log_abs);
        j.key("phase").value(res[i].log_form.phase);
        j.end_object();
    }
    j.end_object();
    j.key("condition_note");
    if (res[2].condition_note.empty())
        j.null();
    else
        j.value(res[2].condition_note);
    if (a.with_oracle) {
        j.key("oracle").begin_object();
        j.key("re").value(oe.value.real());
        j.key("im").value(oe.value.imag());
        j.key("truncation_error").value(oe.error_estimate);
        j.key("dim").value(oe.dim_used);
        j.end_object();
    }
    if (a.timing) j.key("seconds").value(timer.seconds());
    j.end_object();
    j.key("checks").begin_object();
    j.key("route_max_rel_dev").value(rc.max_rel_dev);
    j.key("route_worst_pair").value(rc.worst_pair);
    j.key("route_tol").value(a.tol);
    j.key("routes_agree").value(routes_agree);
    if (a.with_oracle) {
        j.key("oracle_abs_dev").value(std::abs(oe.value - vals[0]));
        j.key("oracle_tol").value(a.oracle_tol);
        j.key("oracle_agrees").value(oracle_agrees);
    }
    j.end_object();
    j.end_object();
    emit(j.take(), a.out);
    return (routes_agree && oracle_agrees) ? 0 : 3;
}

// ---- distribution ----

struct DistributionArgs {
    long n = 0;
    double r = 0.0;
    double mass_target = 1.0 - 1e-10;
    long hard_cap = 1000000;
    double energy_tol = 1e-6;
    std::string format = "csv";
    bool timing = false;
    std::string out;
};

int run_distribution(const DistributionArgs& a) {
    Timer timer;
    Distribution d = squeeze::distribution(a.n, a.r, a.mass_target, a.hard_cap);
    double closed = squeeze::mean_energy_closed(a.n, a.r);
    double rel_dev = std::fabs(d.mean_energy - closed) / closed;
    bool agrees = rel_dev <= a.energy_tol;

    if (a.format == "csv") {
        std::string text = "m,p\n";
        char row[64];
        for (size_t i = 0; i < d.ms.size(); ++i) {
            std::snprintf(row, sizeof row, "%ld,%.17g\n", d.ms[i], d.ps[i]);
            text += row;
        }
        emit(text, a.out);
        std::fprintf(stderr,
                     "distribution n=%ld r=%.17g: %zu points, captured_mass=%.17g, "
                     "mean_energy=%.17g (closed %.17g, rel_dev %.3e)\n",
                     a.n, a.r, d.ms.size(), d.captured_mass, d.mean_energy, closed, rel_dev);
        return agrees ? 0 : 3;
    }

    JsonWriter j;
    j.begin_object();
    j.key("inputs").begin_object();
    j.key("n").value(a.n);
    j.key("r").value(a.r);
    j.key("mass_target").value(a.mass_target);
    j.key("hard_cap").value(a.hard_cap);
    j.end_object();
    j.key("outputs").begin_object();
    j.key("m").begin_array();
    for (long m : d.ms) j.value(m);
    j.end_array();
    j.key("p").begin_array();
    for (double p : d.ps) j.value(p);
    j.end_array();
    j.key("captured_mass").value(d.captured_mass);
    j.key("mean_energy").value(d.mean_energy);
    j.key("cutoff").value(d.cutoff);
    if (a.timing) j.key("seconds").value(timer.seconds());
    j.end_object();
    j.key("checks").begin_object();
    j.key("mean_energy_closed").value(closed);
    j.key("mean_energy_rel_dev").value(rel_dev);
    j.key("mean_energy_tol").value(a.energy_tol);
    j.key("mean_energy_agrees").value(agrees);
    j.end_object();
    j.end_object();
    emit(j.take(), a.out);
    return agrees ? 0 : 3;
}

// ---- figure ----

struct FigureArgs {
    std::string which;
    std::string out;
};

int run_figure(const FigureArgs& a) {
    std::vector<long> ms;
    std::vector<double> ps;
    long n = 0;
    double r = 0.0;
    if (a.which == "fig1a") {
        n = 0, r = 1.5;
        Distribution d = squeeze::distribution(n, r);
        ms = d.ms;
        ps = d.ps;
    } else if (a.which == "fig1b") {
        // odd ladder drawn at 4x vertical scale so both panels share an axis
        n = 1, r = 1.5;
        Distribution d = squeeze::distribution(n, r);
        ms = d.ms;
        for (double p : d.ps) ps.push_back(4.0 * p);
    } else if (a.which == "fig2a") {
        n = 5, r = 1.5;
        Distribution d = squeeze::distribution(n, r);
        ms = d.ms;
        ps = d.ps;
    } else if (a.which == "fig2b") {
        n = 5, r = 1.5;
        Distribution d = squeeze::distribution(n, r);
        for (long m : d.ms) {
            if (m < 1) continue;
            ms.push_back(m);
            ps.push_back(squeeze::hermite_approx_probability(m, n, r));
        }
    } else if (a.which == "fig3") {
        n = 30, r = 1.0;
        Distribution d = squeeze::distribution(n, r);
        ms = d.ms;
        ps = d.ps;
    } else {
        throw std::invalid_argument("figure: unknown --which " + a.which);
    }

    std::string text = "m,p\n";
    char row[64];
    double total = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
        std::snprintf(row, sizeof row, "%ld,%.17g\n", ms[i], ps[i]);
        text += row;
        total += ps[i];
    }
    emit(text, a.out);
    char summary[160];
    std::snprintf(summary, sizeof summary, "%s: n=%ld r=%.17g points=%zu column_sum=%.17g\n",
                  a.which.c_str(), n, r, ms.size(), total);
    if (a.out.empty())
        std::fputs(summary, stderr);
    else
        std::fputs(summary, stdout);
    return 0;
}

// ---- superpose ----

struct SuperposeArgs {
    double alpha_re = 0.0, alpha_im = 0.0, beta_re = 0.0, beta_im = 0.0;
    long k = 0;
    double r = 0.0, phi = 0.0;
    double tol = 1e-8;
    bool timing = false;
    std::string out;
};

int run_superpose(const SuperposeArgs& a) {
    Timer timer;
    squeeze::superpose::CoherentPairing cp{{a.alpha_re, a.alpha_im},
                                           {a.beta_re, a.beta_im},
                                           a.k};
    SqueezeParam sp{a.r, a.phi};
    cplx sum = squeeze::superpose::coherent_sum(cp, sp);
    cplx closed = squeeze::superpose::coherent_closed(cp, sp);
    double dev = std::abs(sum - closed) / std::fmax(std::abs(sum), 1e-30);
    bool agrees = dev <= a.tol;

    JsonWriter j;
    j.begin_object();
    j.key("inputs").begin_object();
    j.key("alpha").complex_value({a.alpha_re, a.alpha_im});
    j.key("beta").complex_value({a.beta_re, a.beta_im});
    j.key("k").value(a.k);
    j.key("r").value(a.r);
    j.key("phi").value(a.phi);
    j.end_object();
    j.key("outputs").begin_object();
    j.key("closed").complex_value(closed);
    j.key("sum").complex_value(sum);
    if (a.timing) j.key("seconds").value(timer.seconds());
    j.end_object();
    j.key("checks").begin_object();
    j.key("rel_dev").value(dev);
    j.key("tol").value(a.tol);
    j.key("agree").value(agrees);
    j.end_object();
    j.end_object();
    emit(j.take(), a.out);
    return agrees ? 0 : 3;
}

// ---- thermal ----

struct ThermalArgs {
    long k = 0;
    double nbar = 0.0;
    double r = 0.0, phi = 0.0;
    bool absorption = false;
    double tol = 1e-8;
    bool timing = false;
    std::string out;
};

int run_thermal(const ThermalArgs& a) {
    Timer timer;
    SqueezeParam sp{a.r, a.phi};
    double closed = a.absorption ? squeeze::superpose::thermal_absorption(a.k, a.nbar, sp)
                                 : squeeze::superpose::thermal_emission(a.k, a.nbar, sp);
    double sum = a.absorption ? squeeze::superpose::thermal_absorption_sum(a.k, a.nbar, sp)
                              : squeeze::superpose::thermal_emission_sum(a.k, a.nbar, sp);
    double dev = std::fabs(closed - sum) / std::fmax(closed, 1e-300);
    bool agrees = dev <= a.tol;
    double b = a.nbar / (1.0 + a.nbar);

    JsonWriter j;
    j.begin_object();
    j.key("inputs").begin_object();
    j.key("k").value(a.k);
    j.key("nbar").value(a.nbar);
    j.key("r").value(a.r);
    j.key("phi").value(a.phi);
    j.key("direction").value(a.absorption ? "absorption" : "emission");
    j.end_object();
    j.key("outputs").begin_object();
    j.key("closed").value(closed);
    j.key("sum").value(sum);
    j.key("boltzmann_b").value(b);
    if (a.timing) j.key("seconds").value(timer.seconds());
    j.end_object();
    j.key("checks").begin_object();
    j.key("rel_dev").value(dev);
    j.key("tol").value(a.tol);
    j.key("agree").value(agrees);
    j.end_object();
    j.end_object();
    emit(j.take(), a.out);
    return agrees ? 0 : 3;
}

// ---- compare ----

struct CompareArgs {
    std::vector<long> ks = {1, 2, 3};
    std::vector<double> nbars;
    std::vector<double> hvs;
    double r = 0.0, phi = 0.0;
    std::string format = "csv";
    bool timing = false;
    std::string out;
};

int run_compare(const CompareArgs& a) {
    Timer timer;
    if (a.nbars.empty() == a.hvs.empty())
        throw std::invalid_argument("compare: give exactly one of --nbar or --hv");
    std::vector<double> nbars = a.nbars;
    for (double hv : a.hvs) {
        if (hv <= 0.0) throw std::invalid_argument("compare: --hv must be > 0");
        nbars.push_back(1.0 / std::expm1(hv));
    }
    SqueezeParam sp{a.r, a.phi};
    std::vector<squeeze::superpose::ComparisonRow> rows;
    for (double nb : nbars)
        for (long k : a.ks) rows.push_back(squeeze::superpose::semiclassical_comparison(k, nb, sp));

    // the quantum/semiclassical ratio must come out as the pure b^{-k} factor
    double ratio_dev = 0.0;
    for (const auto& row : rows)
        ratio_dev = std::fmax(ratio_dev, std::fabs(row.emission_ratio *
                                                       std::pow(row.b, double(row.k)) -
                                                   1.0));
    bool agrees = ratio_dev <= 1e-9;

    if (a.format == "csv") {
        std::string text =
            "k,nbar,b,regime,quantum_emission,quantum_absorption,semiclassical,"
            "emission_ratio,balance\n";
        char row[320];
        for (const auto& c : rows) {
            std::snprintf(row, sizeof row, "%ld,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          c.k, c.nbar, c.b, squeeze::superpose::regime_name(c.regime),
                          c.quantum_emission, c.quantum_absorption, c.semiclassical,
                          c.emission_ratio, c.balance);
            text += row;
        }
        emit(text, a.out);
        return agrees ? 0 : 3;
    }

    JsonWriter j;
    j.begin_object();
    j.key("inputs").begin_object();
    j.key("k").begin_array();
    for (long k : a.ks) j.value(k);
    j.end_array();
    j.key("nbar").begin_array();
    for (double nb : nbars) j.value(nb);
    j.end_array();
    j.key("r").value(a.r);
    j.key("phi").value(a.phi);
    j.end_object();
    j.key("outputs").begin_object();
    j.key("rows").begin_array();
    for (const auto& c : rows) {
        j.begin_object();
        j.key("k").value(c.k);
        j.key("nbar").value(c.nbar);
        j.key("b").value(c.b);
        j.key("regime").value(squeeze::superpose::regime_name(c.regime));
        j.key("quantum_emission").value(c.quantum_emission);
        j.key("quantum_absorption").value(c.quantum_absorption);
        j.key("semiclassical").value(c.semiclassical);
        j.key("emission_ratio").value(c.emission_ratio);
        j.key("balance").value(c.balance);
        j.end_object();
    }
    j.end_array();
    if (a.timing) j.key("seconds").value(timer.seconds());
    j.end_object();
    j.key("checks").begin_object();
    j.key("ratio_identity_max_dev").value(ratio_dev);
    j.key("ratio_identity_tol").value(1e-9);
    j.key("agree").value(agrees);
    j.end_object();
    j.end_object();
    emit(j.take(), a.out);
    return agrees ? 0 : 3;
}

// ---- validate ----

struct ValidateArgs {
    std::string tier = "fast";
    int threads = 0;
    std::string format = "text";
    bool timing = false;
    std::string out;
};

int run_validate(const ValidateArgs& a) {
    using squeeze::validate::Tier;
    Tier tier = a.tier == "full" ? Tier::full : Tier::fast;
    squeeze::validate::Report rep = squeeze::validate::run(tier, a.threads);

    if (a.format == "text") {
        std::string text;
        char line[512];
        int failed = 0;
        for (const auto& c : rep.checks) {
            if (!c.error.empty()) {
                std::snprintf(line, sizeof line, "FAIL %s (error: %s)\n", c.name.c_str(),
                              c.error.c_str());
            } else if (c.pass) {
                std::snprintf(line, sizeof line, "PASS %s (max_dev=%.3e, tol=%.1e)\n",
                              c.name.c_str(), c.max_dev, c.tol);
            } else {
                std::snprintf(line, sizeof line, "FAIL %s (max_dev=%.3e, tol=%.1e, worst: %s)\n",
                              c.name.c_str(), c.max_dev, c.tol, c.worst_point.c_str());
            }
            if (!c.pass) ++failed;
            text += line;
        }
        std::snprintf(line, sizeof line, "%zu checks: %zu passed, %d failed [tier=%s]\n",
                      rep.checks.size(), rep.checks.size() - size_t(failed), failed,
                      a.tier.c_str());
        text += line;
        emit(text, a.out);
    } else {
        JsonWriter j;
        j.begin_object();
        j.key("inputs").begin_object();
        j.key("tier").value(a.tier);
        j.key("threads").value(a.threads);
        j.end_object();
        j.key("outputs").begin_object();
        j.key("checks").begin_array();
        for (const auto& c : rep.checks) {
            j.begin_object();
            j.key("name").value(c.name);
            j.key("pass").value(c.pass);
            j.key("max_dev").value(c.max_dev);
            j.key("tol").value(c.tol);
            j.key("worst_point").value(c.worst_point);
            if (!c.error.empty()) j.key("error").value(c.error);
            if (a.timing) j.key("seconds").value(c.seconds);
            j.end_object();
        }
        j.end_array();
        j.end_object();
        j.key("checks").begin_object();
        j.key("all_pass").value(rep.all_pass);
        j.key("non_convergence").value(rep.non_convergence);
        j.end_object();
        j.end_object();
        emit(j.take(), a.out);
    }
    if (rep.non_convergence) return 4;
    return rep.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form squeezing-operator matrix elements between Fock states"};
    app.set_version_flag("--version", std::string(squeeze::kVersion));
    app.require_subcommand(1);

    ElementArgs ea;
    auto* el = app.add_subcommand("element",
                                  "one matrix element through four independent routes");
    el->add_option("--m", ea.m, "row index")->required()->check(CLI::NonNegativeNumber);
    el->add_option("--n", ea.n, "column index")->required()->check(CLI::NonNegativeNumber);
    el->add_option("--r", ea.r, "squeezing strength")->required()->check(CLI::NonNegativeNumber);
    el->add_option("--phi", ea.phi, "squeezing phase");
    el->add_option("--route", ea.route, "gegenbauer|hypergeometric|finite_sum|legendre|all")
        ->check(CLI::IsMember({"gegenbauer", "hypergeometric", "finite_sum", "legendre", "all"}));
    el->add_flag("--with-oracle", ea.with_oracle,
                 "also evaluate the truncated matrix exponential");
    el->add_option("--oracle-dim-start", ea.oracle_dim_start, "starting truncation dimension");
    el->add_option("--tol", ea.tol, "route agreement tolerance (relative)");
    el->add_option("--oracle-tol", ea.oracle_tol, "oracle agreement tolerance (absolute)");
    el->add_flag("--timing", ea.timing, "report wall time");
    el->add_option("--out", ea.out, "write to file instead of stdout");

    DistributionArgs da;
    auto* di = app.add_subcommand("distribution",
                                  "transition probabilities p_m out of one Fock state");
    di->add_option("--n", da.n, "initial Fock index")->required()->check(CLI::NonNegativeNumber);
    di->add_option("--r", da.r, "squeezing strength")->required()->check(CLI::PositiveNumber);
    di->add_option("--mass-target", da.mass_target, "probability mass to capture");
    di->add_option("--hard-cap", da.hard_cap, "refuse to scan past this index");
    di->add_option("--energy-tol", da.energy_tol, "mean-energy agreement tolerance (relative)");
    di->add_option("--format", da.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    di->add_flag("--timing", da.timing, "report wall time (json only)");
    di->add_option("--out", da.out, "write to file instead of stdout");

    FigureArgs fa;
    auto* fi = app.add_subcommand("figure", "reproduce one of the reference curves as CSV");
    fi->add_option("--which", fa.which, "fig1a|fig1b|fig2a|fig2b|fig3")
        ->required()
        ->check(CLI::IsMember({"fig1a", "fig1b", "fig2a", "fig2b", "fig3"}));
    fi->add_option("--out", fa.out, "write CSV to file instead of stdout");

    SuperposeArgs sa;
    auto* su = app.add_subcommand("superpose",
                                  "coherent-state average: term-by-term sum vs closed form");
    su->add_option("--alpha-re", sa.alpha_re, "Re alpha");
    su->add_option("--alpha-im", sa.alpha_im, "Im alpha");
    su->add_option("--beta-re", sa.beta_re, "Re beta");
    su->add_option("--beta-im", sa.beta_im, "Im beta");
    su->add_option("--k", sa.k, "order offset (m = n + 2k)")->check(CLI::NonNegativeNumber);
    su->add_option("--r", sa.r, "squeezing strength")->required()->check(CLI::PositiveNumber);
    su->add_option("--phi", sa.phi, "squeezing phase");
    su->add_option("--tol", sa.tol, "agreement tolerance (relative)");
    su->add_flag("--timing", sa.timing, "report wall time");
    su->add_option("--out", sa.out, "write to file instead of stdout");

    ThermalArgs ta;
    auto* th = app.add_subcommand("thermal",
                                  "thermal-average emission/absorption: closed form vs sum");
    th->add_option("--k", ta.k, "order change")->required()->check(CLI::NonNegativeNumber);
    th->add_option("--nbar", ta.nbar, "mean thermal occupation")
        ->required()
        ->check(CLI::PositiveNumber);
    th->add_option("--r", ta.r, "squeezing strength")->required()->check(CLI::PositiveNumber);
    th->add_option("--phi", ta.phi, "squeezing phase (averages are phase independent)");
    th->add_flag("--absorption", ta.absorption, "compute the absorption direction");
    th->add_option("--tol", ta.tol, "agreement tolerance (relative)");
    th->add_flag("--timing", ta.timing, "report wall time");
    th->add_option("--out", ta.out, "write to file instead of stdout");

    CompareArgs ca;
    auto* co = app.add_subcommand("compare",
                                  "quantum vs semiclassical thermal averages across regimes");
    co->add_option("--k", ca.ks, "order changes (repeatable)")->check(CLI::PositiveNumber);
    co->add_option("--nbar", ca.nbars, "mean occupations (repeatable)")
        ->check(CLI::PositiveNumber);
    co->add_option("--hv", ca.hvs, "photon energy over kT (repeatable, alternative to --nbar)");
    co->add_option("--r", ca.r, "squeezing strength")->required()->check(CLI::PositiveNumber);
    co->add_option("--phi", ca.phi, "squeezing phase");
    co->add_option("--format", ca.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    co->add_flag("--timing", ca.timing, "report wall time (json only)");
    co->add_option("--out", ca.out, "write to file instead of stdout");

    ValidateArgs va;
    auto* vd = app.add_subcommand("validate", "run the cross-validation battery");
    vd->add_option("--tier", va.tier, "fast|full")->check(CLI::IsMember({"fast", "full"}));
    vd->add_option("--threads", va.threads,
                   "worker threads (0: SQUEEZE_VALIDATE_THREADS or hardware)");
    vd->add_option("--format", va.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    vd->add_flag("--timing", va.timing, "report per-check wall time (json only)");
    vd->add_option("--out", va.out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (el->parsed()) return run_element(ea);
        if (di->parsed()) return run_distribution(da);
        if (fi->parsed()) return run_figure(fa);
        if (su->parsed()) return run_superpose(sa);
        if (th->parsed()) return run_thermal(ta);
        if (co->parsed()) return run_compare(ca);
        if (vd->parsed()) return run_validate(va);
    } catch (const squeeze::NonConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

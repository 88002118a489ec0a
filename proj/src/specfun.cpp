#include "squeeze/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <tuple>

#include "squeeze/errors.hpp"
#include "detail/dd.hpp"
#include "detail/quadrature.hpp"

namespace squeeze::specfun {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// rescale a recurrence pair into [2^-500, 2^500), tracking the binary exponent
inline void rescale_pair(double& v, double& w, long& pow2) {
    double a = std::fmax(std::fabs(v), std::fabs(w));
    if (a > 0x1p500) {
        v = std::ldexp(v, -500);
        w = std::ldexp(w, -500);
        pow2 += 500;
    } else if (a > 0.0 && a < 0x1p-500) {
        v = std::ldexp(v, 500);
        w = std::ldexp(w, 500);
        pow2 -= 500;
    }
}

inline LogSigned from_scaled(double v, long pow2, double extra_log, int extra_sign) {
    if (v == 0.0 || extra_sign == 0) return LogSigned::zero();
    int sign = (v > 0 ? 1 : -1) * extra_sign;
    return LogSigned::from_log(std::log(std::fabs(v)) + double(pow2) * kLn2 + extra_log, sign);
}

inline bool is_nonpos_int(double a) {
    return a <= 0.0 && a == std::floor(a) && a > -9.0e15;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
#if defined(__GLIBC__)
    int sg = 0;
    return ::lgamma_r(x, &sg);  // thread-safe, no signgam global
#else
    return std::lgamma(x);
#endif
}

LogSigned pochhammer(double a, long k) {
    if (k < 0) throw std::domain_error("pochhammer: requires k >= 0");
    if (k == 0) return LogSigned::one();
    double sum = 0.0, comp = 0.0;  // Kahan on the log accumulation
    int sign = 1;
    for (long j = 0; j < k; ++j) {
        double f = a + double(j);
        if (f == 0.0) return LogSigned::zero();
        if (f < 0.0) sign = -sign;
        double t = std::log(std::fabs(f)) - comp;
        double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    return LogSigned::from_log(sum, sign);
}

LogSigned gegenbauer(long n, double nu, double x) {
    if (n < 0) throw std::domain_error("gegenbauer: requires n >= 0");
    if (!(nu > -0.5)) throw std::domain_error("gegenbauer: requires nu > -1/2");
    if (n == 0) return LogSigned::one();
    double vm1 = 1.0;            // C_0
    double v = 2.0 * nu * x;     // C_1
    long pow2 = 0;
    for (long j = 2; j <= n; ++j) {
        double vn = (2.0 * x * (double(j) + nu - 1.0) * v - (double(j) + 2.0 * nu - 2.0) * vm1) /
                    double(j);
        vm1 = v;
        v = vn;
        rescale_pair(v, vm1, pow2);
    }
    return from_scaled(v, pow2, 0.0, 1);
}

double legendre_p(long n, double x) {
    if (n < 0) throw std::domain_error("legendre_p: requires n >= 0");
    if (!(std::fabs(x) <= 1.0)) throw std::domain_error("legendre_p: requires |x| <= 1");
    if (n == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (long j = 2; j <= n; ++j) {
        double pn = ((2.0 * double(j) - 1.0) * x * p - (double(j) - 1.0) * pm1) / double(j);
        pm1 = p;
        p = pn;
    }
    return p;
}

LogSigned assoc_legendre_p(long l, long k, double x) {
    if (l < 0) throw std::domain_error("assoc_legendre_p: requires l >= 0");
    if (std::labs(k) > l) throw std::domain_error("assoc_legendre_p: requires |k| <= l");
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("assoc_legendre_p: requires 0 < x < 1");
    if (k < 0) {
        // P_l^{-mu} = (-1)^mu (l-mu)!/(l+mu)! P_l^mu, mu = -k
        LogSigned base = assoc_legendre_p(l, -k, x);
        double lr = log_gamma(double(l + k) + 1.0) - log_gamma(double(l - k) + 1.0);
        int s = ((-k) & 1) ? -1 : 1;
        return base * LogSigned::from_log(lr, s);
    }
    // seed on the diagonal: P_k^k = (-1)^k (2k-1)!! (1-x^2)^{k/2}
    double seed_log = 0.0;
    int seed_sign = 1;
    if (k > 0) {
        seed_log = log_gamma(2.0 * double(k) + 1.0) - double(k) * kLn2 -
                   log_gamma(double(k) + 1.0) + 0.5 * double(k) * std::log1p(-x * x);
        seed_sign = (k & 1) ? -1 : 1;
    }
    if (l == k) return LogSigned::from_log(seed_log, seed_sign);
    double vm1 = 1.0;                        // P_k^k / seed
    double v = x * (2.0 * double(k) + 1.0);  // P_{k+1}^k / seed
    long pow2 = 0;
    for (long d = k + 2; d <= l; ++d) {
        double vn = ((2.0 * double(d) - 1.0) * x * v - double(d - 1 + k) * vm1) / double(d - k);
        vm1 = v;
        v = vn;
        rescale_pair(v, vm1, pow2);
    }
    return from_scaled(v, pow2, seed_log, seed_sign);
}

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_K: requires 0 <= m < 1");
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int i = 0; i < 40 && std::fabs(a - b) > 4e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

double elliptic_E(double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("elliptic_E: requires 0 <= m <= 1");
    if (m == 1.0) return 1.0;
    double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
    double sum = 0.5 * c * c;  // 2^{-1} c_0^2
    double p2 = 0.5;
    for (int i = 0; i < 40 && std::fabs(a - b) > 4e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        p2 *= 2.0;
        sum += p2 * c * c;
    }
    return kPi / (2.0 * a) * (1.0 - sum);
}

namespace {

// Q_{-1/2} and Q_{1/2} from complete elliptic integrals; reliable for z <= 2
// (the subtraction in Q_{1/2} loses at most about one digit there)
std::pair<double, double> q_half_seeds_elliptic(double z) {
    // modulus m = 2/(z+1); its complement (z-1)/(z+1) must be formed from z-1
    // directly, or the AGM seed loses half its digits as z -> 1
    double u = 2.0 / (z + 1.0);
    double uc = (z - 1.0) / (z + 1.0);
    double su = std::sqrt(u);
    double a = 1.0, b = std::sqrt(uc), c2sum = 0.5 * u, p2 = 0.5;
    for (int i = 0; i < 40 && std::fabs(a - b) > 4e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        double c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        p2 *= 2.0;
        c2sum += p2 * c * c;
    }
    double K = kPi / (2.0 * a);
    double E = K * (1.0 - c2sum);
    double q0 = su * K;
    double q1 = z * su * K - std::sqrt(2.0 * (z + 1.0)) * E;
    return {q0, q1};
}

// descending series Q_nu(z) = sqrt(pi) Gamma(nu+1) / (Gamma(nu+3/2) (2z)^{nu+1})
//                             * 2F1(nu/2+1, nu/2+1/2; nu+3/2; 1/z^2)
// all terms positive; practical while 1/z^2 is not too close to 1
LogSigned q_half_series_log(double nu, double z) {
    double w = 1.0 / (z * z);
    double pref = 0.5 * std::log(kPi) + log_gamma(nu + 1.0) - log_gamma(nu + 1.5) -
                  (nu + 1.0) * std::log(2.0 * z);
    double a = 0.5 * nu + 1.0, b = 0.5 * nu + 0.5, c = nu + 1.5;
    LogSigned sum = LogSigned::one();
    LogSigned term = LogSigned::one();
    for (long j = 0; j < 200000; ++j) {
        double dj = double(j);
        double ratio = (a + dj) * (b + dj) * w / ((c + dj) * (dj + 1.0));
        term = term * LogSigned::from_real(ratio);
        sum = log_add(sum, term);
        if (term.log_abs < sum.log_abs - 40.0) {
            return LogSigned::from_log(pref + sum.log_abs, 1);
        }
    }
    throw NonConvergenceError("legendre_q_half: descending series failed to converge");
}

// log-space quadrature of Q_nu(z) = integral_0^inf (z + sqrt(z^2-1) cosh t)^{-nu-1} dt
LogSigned q_half_integral_log(double nu, double z) {
    double w = std::sqrt((z - 1.0) * (z + 1.0));
    double p = nu + 1.0;
    double l0 = -p * std::log(z + w);  // log integrand at t = 0 (its maximum)
    double arg = ((z + w) * std::exp(60.0 / p) - z) / w;
    double T = std::acosh(std::fmax(arg, 1.0));
    auto g = [&](double t) {
        return std::exp(-p * std::log(z + w * std::cosh(t)) - l0);
    };
    double rough = 0.0;  // coarse trapezoid to set the absolute tolerance
    {
        const int nn = 64;
        double h = T / nn;
        rough = 0.5 * (g(0.0) + g(T));
        for (int i = 1; i < nn; ++i) rough += g(h * double(i));
        rough *= h;
    }
    double val = detail::adaptive_simpson(g, 0.0, T, 1e-13 * std::fmax(rough, 1e-30), 2000000);
    return LogSigned::from_log(l0 + std::log(val), 1);
}

}  // namespace

LogSigned legendre_q_half_log(long k, double z) {
    if (k < 0) throw std::domain_error("legendre_q_half: requires k >= 0");
    if (!(z > 1.0)) throw std::domain_error("legendre_q_half: requires z > 1");
    if (k <= 1) {
        if (z <= 2.0) {
            auto [q0, q1] = q_half_seeds_elliptic(z);
            return LogSigned::from_real(k == 0 ? q0 : q1);
        }
        return q_half_series_log(double(k) - 0.5, z);
    }
    double log_rho = std::log(z + std::sqrt((z - 1.0) * (z + 1.0)));
    // upward recurrence seeds an error ~eps at Q_{1/2} that grows like rho^{2j};
    // keep it only while the contamination stays below ~1e-11
    if (double(k - 1) * log_rho <= 5.7) {
        double q0, q1;
        if (z <= 2.0) {
            std::tie(q0, q1) = q_half_seeds_elliptic(z);
        } else {
            q0 = q_half_series_log(-0.5, z).to_real();
            q1 = q_half_series_log(0.5, z).to_real();
        }
        double qm = q0, qc = q1;
        for (long j = 1; j < k; ++j) {
            double nu = double(j) - 0.5;
            double qn = ((2.0 * nu + 1.0) * z * qc - nu * qm) / (nu + 1.0);
            qm = qc;
            qc = qn;
        }
        return LogSigned::from_real(qc);
    }
    if (1.0 / (z * z) <= 0.93) return q_half_series_log(double(k) - 0.5, z);
    return q_half_integral_log(double(k) - 0.5, z);
}

double legendre_q_half(long k, double z) {
    return legendre_q_half_log(k, z).to_real();
}

double bessel_j(long k, double x) {
    int sym_sign = 1;
    if (k < 0) {  // J_{-k} = (-1)^k J_k
        k = -k;
        if (k & 1) sym_sign = -sym_sign;
    }
    double ax = std::fabs(x);
    if (x < 0.0 && (k & 1)) sym_sign = -sym_sign;
    if (ax == 0.0) return k == 0 ? 1.0 : 0.0;

    long M = k + long(std::ceil(1.5 * ax)) + 40;
    double fjp1 = 0.0;
    double fj = 1e-30;
    double norm = 0.0;
    double fk = 0.0;
    for (long j = M; j >= 1; --j) {
        if ((j & 1) == 0) norm += 2.0 * fj;
        if (j == k) fk = fj;
        double fjm1 = (2.0 * double(j) / ax) * fj - fjp1;
        fjp1 = fj;
        fj = fjm1;
        if (std::fabs(fj) > 1e250) {
            const double s = 0x1p-831;
            fj *= s;
            fjp1 *= s;
            norm *= s;
            fk *= s;
        }
    }
    norm += fj;  // f_0
    if (k == 0) fk = fj;
    return sym_sign * fk / norm;
}

LogSigned hermite_psi(long n, double x) {
    if (n < 0) throw std::domain_error("hermite_psi: requires n >= 0");
    double log0 = -0.5 * x * x - 0.25 * std::log(kPi);  // log psi_0(x)
    if (n == 0) return LogSigned::from_log(log0, 1);
    double vm1 = 1.0;                    // psi_0 / psi_0
    double v = std::sqrt(2.0) * x;       // psi_1 / psi_0
    long pow2 = 0;
    for (long j = 2; j <= n; ++j) {
        double vn = x * std::sqrt(2.0 / double(j)) * v -
                    std::sqrt(double(j - 1) / double(j)) * vm1;
        vm1 = v;
        v = vn;
        rescale_pair(v, vm1, pow2);
    }
    return from_scaled(v, pow2, log0, 1);
}

HypResult hypergeometric_terminating(double a, double b, double c, double z) {
    if (!(c > 0.0)) throw std::domain_error("hypergeometric_terminating: requires c > 0");
    long N = -1;
    if (is_nonpos_int(a)) N = long(-a);
    if (is_nonpos_int(b)) {
        long nb = long(-b);
        if (N < 0 || nb < N) N = nb;
    }
    if (N < 0)
        throw std::domain_error("hypergeometric_terminating: neither a nor b is a nonpositive integer");

    detail::dd term{1.0, 0.0};
    detail::dd sum{1.0, 0.0};
    double sum_abs = 1.0;
    long off = 0;  // binary exponent carried out of the accumulation
    for (long j = 0; j < N; ++j) {
        double dj = double(j);
        detail::dd num = detail::mul(detail::two_prod(a + dj, b + dj), z);
        detail::dd den = detail::two_prod(c + dj, 1.0 + dj);
        term = detail::div(detail::mul(term, num), den);
        sum = detail::add(sum, term);
        sum_abs += std::fabs(term.hi);
        if (std::fabs(term.hi) > 0x1p900 || std::fabs(sum.hi) > 0x1p900) {
            term = detail::scale_pow2(term, 0x1p-1000);
            sum = detail::scale_pow2(sum, 0x1p-1000);
            sum_abs *= 0x1p-1000;
            off += 1000;
        }
    }
    HypResult out;
    if (sum.hi == 0.0 && sum.lo == 0.0) {
        out.value = LogSigned::zero();
        out.condition = std::numeric_limits<double>::infinity();
        return out;
    }
    double hi = (sum.hi != 0.0) ? sum.hi : sum.lo;
    double corr = (sum.hi != 0.0) ? std::log1p(sum.lo / sum.hi) : 0.0;
    out.value = LogSigned::from_log(std::log(std::fabs(hi)) + corr + double(off) * kLn2,
                                    hi > 0 ? 1 : -1);
    out.condition = sum_abs / std::fabs(hi);
    return out;
}

}  // namespace squeeze::specfun

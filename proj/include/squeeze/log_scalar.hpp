#pragma once

// Signed-log and log-polar scalars. Everything downstream that multiplies long
// chains of factorials, powers and polynomial values goes through these so the
// representable range is bounded by the exponent range of double (|log| < 1e308),
// not by the value range.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace squeeze {

// value = sign * exp(log_abs); sign == 0 iff log_abs == -inf (exact zero)
struct LogSigned {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogSigned zero() { return {}; }
    static LogSigned one() { return {0.0, 1}; }

    static LogSigned from_real(double v) {
        if (v == 0.0) return zero();
        if (std::isnan(v)) throw std::domain_error("LogSigned::from_real: nan");
        return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
    }
    // log of the magnitude supplied directly, sign separate
    static LogSigned from_log(double log_abs, int sign) {
        if (sign == 0) return zero();
        return {log_abs, sign > 0 ? 1 : -1};
    }

    bool is_zero() const { return sign == 0; }

    double to_real() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);  // may under/overflow, by design
    }

    LogSigned operator-() const { return {log_abs, -sign}; }

    friend LogSigned operator*(const LogSigned& a, const LogSigned& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.log_abs + b.log_abs, a.sign * b.sign};
    }
    friend LogSigned operator/(const LogSigned& a, const LogSigned& b) {
        if (b.sign == 0) throw std::domain_error("LogSigned: division by zero");
        if (a.sign == 0) return zero();
        return {a.log_abs - b.log_abs, a.sign * b.sign};
    }
};

// a + b in signed-log form (log-sum-exp with sign bookkeeping)
inline LogSigned log_add(const LogSigned& a, const LogSigned& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogSigned& hi = (a.log_abs >= b.log_abs) ? a : b;
    const LogSigned& lo = (a.log_abs >= b.log_abs) ? b : a;
    double d = lo.log_abs - hi.log_abs;  // <= 0
    double t = (hi.sign == lo.sign) ? std::log1p(std::exp(d)) : std::log1p(-std::exp(d));
    if (std::isinf(t)) return LogSigned::zero();  // exact cancellation
    return {hi.log_abs + t, hi.sign};
}

// integer power, k >= 0; pow_int(zero, 0) == one (empty product)
inline LogSigned pow_int(const LogSigned& a, long k) {
    if (k < 0) throw std::domain_error("pow_int: negative exponent");
    if (k == 0) return LogSigned::one();
    if (a.sign == 0) return LogSigned::zero();
    int s = (a.sign < 0 && (k & 1)) ? -1 : 1;
    return {a.log_abs * static_cast<double>(k), s};
}

// maps any finite angle into (-pi, pi]
inline double wrap_phase(double p) {
    double w = std::remainder(p, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

// value = exp(log_abs) * exp(i*phase); phase kept in (-pi, pi], phase of zero is 0
struct LogComplex {
    double log_abs = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }

    static LogComplex from_complex(const std::complex<double>& v) {
        if (v == std::complex<double>(0.0, 0.0)) return zero();
        return {std::log(std::abs(v)), std::arg(v)};
    }
    static LogComplex from_log_signed(const LogSigned& v) {
        if (v.sign == 0) return zero();
        return {v.log_abs, v.sign > 0 ? 0.0 : std::numbers::pi};
    }
    static LogComplex from_polar(double log_abs, double phase) {
        return {log_abs, wrap_phase(phase)};
    }

    bool is_zero() const { return std::isinf(log_abs) && log_abs < 0; }

    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_abs), phase);
    }

    friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return {a.log_abs + b.log_abs, wrap_phase(a.phase + b.phase)};
    }
    friend LogComplex operator*(const LogComplex& a, const LogSigned& b) {
        return a * from_log_signed(b);
    }
};

}  // namespace squeeze

#pragma once

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used where an alternating sum is ill-conditioned enough that plain double
// term generation already loses the digits we need: terms are built by an
// exact-ratio chain in dd and accumulated in dd, then rounded once at the end.

#include <cmath>

namespace squeeze::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd add(const dd& a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd mul(const dd& a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd div(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = add(a, mul(b, -q1));
    double q2 = r.hi / b.hi;
    r = add(r, mul(b, -q2));
    double q3 = r.hi / b.hi;
    return add(quick_two_sum(q1, q2), q3);
}

inline dd scale_pow2(const dd& a, double p2) {  // p2 a power of two, exact
    return {a.hi * p2, a.lo * p2};
}

}  // namespace squeeze::detail

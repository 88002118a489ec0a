#pragma once

// Adaptive Simpson with an evaluation budget. Absolute tolerance; callers
// derive it from a coarse pass when they want a relative target.

#include <cmath>

#include "squeeze/errors.hpp"

namespace squeeze::detail {

template <class F>
class SimpsonWorker {
public:
    SimpsonWorker(F& f, long max_evals) : f_(f), budget_(max_evals) {}

    double integrate(double a, double b, double abs_tol) {
        double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        double s = simpson(a, b, fa, fm, fb);
        return refine(a, b, fa, fm, fb, s, abs_tol, 60);
    }

    long evals() const { return evals_; }

private:
    double eval(double x) {
        if (++evals_ > budget_)
            throw NonConvergenceError("adaptive quadrature exceeded its evaluation budget");
        return f_(x);
    }

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double refine(double a, double b, double fa, double fm, double fb, double whole,
                  double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = eval(lm), frm = eval(rm);
        double left = simpson(a, m, fa, flm, fm);
        double right = simpson(m, b, fm, frm, fb);
        double delta = left + right - whole;
        if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }

    F& f_;
    long budget_;
    long evals_ = 0;
};

template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, long max_evals) {
    SimpsonWorker<F> w(f, max_evals);
    return w.integrate(a, b, abs_tol);
}

}  // namespace squeeze::detail

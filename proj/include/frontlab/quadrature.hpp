#pragma once

#include <cmath>
#include <functional>

namespace frontlab {

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

template <typename F>
QuadResult simpson_adapt(const F& f, double a, double b, double fa, double fm, double fb,
                         double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return {left + right + delta / 15.0, std::abs(delta) / 15.0};
    }
    QuadResult l = simpson_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    QuadResult r = simpson_adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    return {l.value + r.value, l.error_bound + r.error_bound};
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] with absolute tolerance tol.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double tol = 1e-10) {
    if (a == b) return {0.0, 0.0};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_adapt(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace frontlab

// golden.hpp
// Bracketed golden-section search for smooth scalar extrema.

#pragma once

#include <utility>

namespace cloneqfi {

/// Maximizes f over [lo, hi] to interval width tol. Returns the midpoint of
/// the final bracket. f is assumed unimodal on the bracket.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

/// Minimizes f over [lo, hi] to interval width tol.
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
    return golden_section_max([&f](double x) { return -f(x); }, lo, hi, tol);
}

}  // namespace cloneqfi

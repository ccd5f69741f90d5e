#pragma once

#include "expr.hpp"

#include <cstdint>

namespace alzer {

struct Interval {
    double a;
    double b;

    Interval(double a_, double b_);
    double width() const { return b - a; }
};

inline constexpr double kDefaultTol = 1e-10; // absolute; inherited by all checks

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0; // accumulated local estimates, absolute
    long long subdivisions = 0;  // accepted panels
};

// Adaptive Simpson with Richardson-style local error control.
// Throws QuadError when the recursion depth cap (60) is hit before the
// local tolerance is met, or when a sample fails to evaluate.
QuadResult integrate(const Expr& f, const Interval& iv, double tol = kDefaultTol);

struct SupNormResult {
    double max_value = 0.0; // signed max of f
    double abs_max = 0.0;   // sup |f|
    double argmax = 0.0;    // location of the signed max
};

struct ExtremaResult {
    double max_value = 0.0;
    double argmax = 0.0;
    double min_value = 0.0;
    double argmin = 0.0;
};

// Dense 4097-point grid, then bisection on sign changes of f' around the
// best grid cells. Falls back to golden-section refinement when f cannot
// be differentiated (abs nodes).
ExtremaResult extrema(const Expr& f, const Interval& iv);
SupNormResult sup_norm(const Expr& f, const Interval& iv);

// f minus its mean over the interval; the derivative tree is untouched.
Expr mean_zero_shift(const Expr& f, const Interval& iv, double tol = kDefaultTol);

} // namespace alzer

#pragma once

#include "ineq.hpp"

namespace alzer {

// One-panel trapezoid functional T_rap(f) = (b-a)(f(a)+f(b))/2 - int f,
// bounded two ways: the classical (b-a)^3/12 ||f''||_inf and the norm form
// (b-a)/2 ||f||_inf + (b-a)^2/24 ||f'||_2^2 / ||f||_inf, i.e. (b-a)^3/12 M
// with M = 6/(b-a)^2 ||f||_inf + 1/(2(b-a)) ||f'||_2^2 / ||f||_inf.
struct TrapezoidBounds {
    double t_rap = std::numeric_limits<double>::quiet_NaN();
    double true_abs = std::numeric_limits<double>::quiet_NaN();
    double classic_bound = std::numeric_limits<double>::quiet_NaN();
    double m_constant = std::numeric_limits<double>::quiet_NaN();
    double new_bound = std::numeric_limits<double>::quiet_NaN();
    bool classic_applicable = false;
    bool new_applicable = false;
    std::string hypothesis_note;
};

TrapezoidBounds trapezoid_bounds(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// G(f(a), f(b)) <= sqrt((b-a)/12) ||f'||_2 under the convexity/mean-zero
// hypotheses; reported with theorem_id "geom".
IneqReport geometric_mean_bound(const Expr& f, const Interval& iv, double tol = kDefaultTol);

struct MeanChainReport {
    double lambda = 0.5;
    double left = std::numeric_limits<double>::quiet_NaN();   // f(A_lambda(x,y))
    double middle = std::numeric_limits<double>::quiet_NaN(); // G_lambda(f(x), f(y))
    double right = std::numeric_limits<double>::quiet_NaN();
    bool link1_holds = false; // left <= middle
    bool link2_holds = false; // middle <= right
    double alpha = std::numeric_limits<double>::quiet_NaN(); // bijective route only
    double beta = std::numeric_limits<double>::quiet_NaN();
    bool ordering_ok = true; // beta > alpha
    Flag evidence;           // log-convexity (chain) or strict monotonicity
    std::string note;
};

// Log-convex chain at lambda = 1/2:
//   f((x+y)/2) <= sqrt(f(x) f(y)) <= sqrt((y-x)/12) ||f'||_2 over [x, y].
// Per-link truth values are recorded; a failing right link is reported,
// not suppressed.
MeanChainReport log_convex_chain(const Expr& f, double x, double y, double tol = kDefaultTol);

// Bijective generalization: alpha = f^-1(f(x)^lambda), beta =
// f^-1(f(y)^(1-lambda)), chain f(A_lambda) <= G_lambda <=
// (beta-alpha)/12 int_alpha^beta f'^2. The bound's integral limits are
// taken as [alpha, beta]; the report says so.
MeanChainReport bijective_generalization(const Expr& f, const Interval& iv, double x, double y,
                                         double lambda, double tol = kDefaultTol);

// Bisection inverse of a strictly monotone f; RangeError when v falls
// outside [f(a), f(b)] (or the reverse), InvalidError when the
// monotonicity evidence fails.
double invert_monotone(const Expr& f, const Interval& iv, double v);

} // namespace alzer

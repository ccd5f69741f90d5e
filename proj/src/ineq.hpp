#pragma once

#include "expr.hpp"
#include "quad.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace alzer {

// Hypothesis evidence is numeric (grid minima with refinement), never a
// proof; every flag keeps the witness value that decided it.
struct Flag {
    bool evaluated = false;
    bool value = false;
    double witness = std::numeric_limits<double>::quiet_NaN();
};

struct HypothesisFlags {
    Flag mean_zero;                 // witness: integral of f
    Flag convex;                    // witness: min f'' found on the grid
    Flag increasing;                // witness: min f'
    Flag decreasing;                // witness: max f'
    Flag endpoint_product_positive; // witness: f(a)*f(b)
    Flag endpoints_are_max;         // witness: max(|f(a)-max f|, |f(b)-max f|)
    Flag periodic_match;            // witness: f(a)-f(b)
};

struct QuadBudget {
    int integrals = 0;
    long long subdivisions = 0;
    double error_sum = 0.0;

    void absorb(const QuadResult& q) {
        ++integrals;
        subdivisions += q.subdivisions;
        error_sum += q.error_estimate;
    }
};

struct IneqReport {
    std::string theorem_id;
    Interval interval{0.0, 1.0};
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN(); // rhs - lhs
    double sharpness_ratio = std::numeric_limits<double>::quiet_NaN();
    bool satisfied = false;
    bool hypotheses_met = false;
    bool sharp_confirmed = false; // sharpness audits only
    bool used_abs_max = false;    // which max fed the lhs (thm2/thm5/higher)
    double t_rap = std::numeric_limits<double>::quiet_NaN();              // thm6
    double vanishing_residual = std::numeric_limits<double>::quiet_NaN(); // higher
    HypothesisFlags hypotheses;
    QuadBudget budget;
    std::string note;
};

// Satisfaction slack: quadrature budget plus headroom.
inline double combined_tol(double rhs) { return 1e-9 + 1e-9 * std::fabs(rhs); }

// Standalone hypothesis evidence, shared by the checkers, the corpus
// generator, and the applications.
namespace evidence {
Flag mean_zero(const Expr& f, const Interval& iv, double tol = kDefaultTol);
Flag convex(const Expr& f, const Interval& iv);
Flag increasing(const Expr& f, const Interval& iv);
Flag decreasing(const Expr& f, const Interval& iv);
Flag endpoint_product_positive(const Expr& f, const Interval& iv);
Flag endpoints_are_max(const Expr& f, const Interval& iv);
Flag periodic_match(const Expr& f, const Interval& iv);
} // namespace evidence

// Euler-beta derived constants of the 2n-th order inequality.
struct HigherOrderConstants {
    int n = 1;
    double beta = 0.0;  // B(2n+1, 2n+1)
    double alpha = 0.0; // 12^n (b-a)^{-(n+1/2)} / sqrt(beta)

    static HigherOrderConstants make(int n, const Interval& iv);
};

// Wirtinger on [0, 2pi]: int f^2 <= int f'^2 for mean-zero periodic f.
IneqReport check_wirtinger(const Expr& f, double tol = kDefaultTol);

// Alzer on [0, 2pi]: (6/pi) max f^2 <= int f'^2 for mean-zero periodic f.
IneqReport check_alzer(const Expr& f, double tol = kDefaultTol);

// Convex, mean-zero, f(a)f(b) > 0: f(a)f(b) <= (b-a)/12 int f'^2.
IneqReport check_thm3_convex(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// Increasing, mean-zero: [2f(a) - f(b)] f(b) <= (b-a)/12 int f'^2.
IneqReport check_thm4_increasing(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// Decreasing, mean-zero: [2f(b) - f(a)] f(a) <= (b-a)/12 int f'^2.
IneqReport check_cor1_decreasing(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// f(a) = max f = f(b), mean-zero: max f^2 <= (b-a)/12 int f'^2.
IneqReport check_thm5_endpoint_max(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// No hypotheses: [2/(b-a) T_rap(f) - max f] max f <= (b-a)/12 int f'^2.
IneqReport check_thm6_general(const Expr& f, const Interval& iv, double tol = kDefaultTol);

// Mean-zero, (2n)-times differentiable: ||f||_inf <= ((b-a)/12)^n ||f^(2n)||_2.
IneqReport check_higher_order(const Expr& f, const Interval& iv, int n, double tol = kDefaultTol);

// int_a^b (x-a)^n (b-x)^n f^(2n)(x) dx; the proof of the 2n-th order
// inequality claims this vanishes. For n=1 integration by parts gives the
// closed identity (b-a)(f(a)+f(b)) - 2 int f, which generally does not.
double vanishing_integral_residual(const Expr& f, const Interval& iv, int n,
                                   double tol = kDefaultTol, QuadBudget* budget = nullptr);

// The extremal function each theorem claims attains equality, affinely
// mapped onto iv (thm2 is pinned to [0, 2pi]).
Expr sharpness_extremal(const std::string& theorem_id, const Interval& iv);
Interval natural_audit_interval(const std::string& theorem_id);

// Runs the matching checker on the built-in extremal; sharp_confirmed iff
// the ratio is within 1e-7 of 1.
IneqReport audit_sharpness(const std::string& theorem_id, std::optional<Interval> iv = {},
                           double tol = kDefaultTol);

const std::vector<std::string>& known_theorems(); // dispatchable checker ids
const std::vector<std::string>& auditable_theorems();

// Dispatch by id ("thm1", "thm2", "thm3", "thm4", "cor1", "thm5", "thm6",
// "higher"); n is only read by "higher".
IneqReport run_check(const std::string& theorem_id, const Expr& f, const Interval& iv, int n = 1,
                     double tol = kDefaultTol);

} // namespace alzer

#include "apps.hpp"

#include <cmath>

namespace alzer {

namespace {

constexpr double kLogConvexTol = 1e-9;
constexpr int kInvertIters = 200;
constexpr double kInvertTol = 1e-12;

double link_tol(double reference) { return 1e-9 + 1e-9 * std::fabs(reference); }

} // namespace

TrapezoidBounds trapezoid_bounds(const Expr& f, const Interval& iv, double tol) {
    TrapezoidBounds out;
    double fa = f.eval(iv.a);
    double fb = f.eval(iv.b);
    QuadResult qf = integrate(f, iv, tol);
    double width = iv.width();
    out.t_rap = width * 0.5 * (fa + fb) - qf.value;
    out.true_abs = std::fabs(out.t_rap);

    std::string note;
    try {
        Expr d2 = f.derivative(2);
        double norm_f2 = sup_norm(d2, iv).abs_max;
        out.classic_bound = width * width * width / 12.0 * norm_f2;
        out.classic_applicable = true;
    } catch (const Error& e) {
        note += "classic bound unavailable: ";
        note += e.what();
        note += "; ";
    }

    try {
        double norm_f = sup_norm(f, iv).abs_max;
        if (norm_f == 0.0) {
            note += "sup norm is zero; M undefined; ";
        } else {
            Expr df = f.derivative(1);
            QuadResult qd = integrate(mul(df, df), iv, tol);
            out.m_constant = 6.0 / (width * width) * norm_f + qd.value / (2.0 * width * norm_f);
            out.new_bound = width * 0.5 * norm_f + width * width / 24.0 * qd.value / norm_f;
            out.new_applicable = true;
            if (out.true_abs > out.new_bound + link_tol(out.new_bound)) {
                note += "|T_rap| exceeds the M bound; ";
            }
        }
    } catch (const Error& e) {
        note += "M bound unavailable: ";
        note += e.what();
        note += "; ";
    }
    out.hypothesis_note = note;
    return out;
}

IneqReport geometric_mean_bound(const Expr& f, const Interval& iv, double tol) {
    IneqReport r;
    r.theorem_id = "geom";
    r.interval = iv;
    double fa = f.eval(iv.a);
    double fb = f.eval(iv.b);
    r.hypotheses.mean_zero = evidence::mean_zero(f, iv, tol);
    r.hypotheses.convex = evidence::convex(f, iv);
    r.hypotheses.endpoint_product_positive = evidence::endpoint_product_positive(f, iv);
    r.hypotheses_met = r.hypotheses.mean_zero.value && r.hypotheses.convex.value &&
                       r.hypotheses.endpoint_product_positive.value;

    Expr df = f.derivative(1);
    QuadResult qd = integrate(mul(df, df), iv, tol);
    r.budget.absorb(qd);
    r.rhs = std::sqrt(iv.width() / 12.0 * qd.value);
    if (fa * fb <= 0.0) {
        r.note = "geometric mean undefined: f(a)f(b) <= 0";
        r.satisfied = false;
        return r;
    }
    r.lhs = std::sqrt(fa * fb);
    r.margin = r.rhs - r.lhs;
    r.satisfied = r.lhs <= r.rhs + combined_tol(r.rhs);
    r.sharpness_ratio =
        r.rhs > combined_tol(r.rhs) ? r.lhs / r.rhs : std::numeric_limits<double>::quiet_NaN();
    return r;
}

MeanChainReport log_convex_chain(const Expr& f, double x, double y, double tol) {
    if (!(x < y)) throw InvalidError("log-convex chain requires x < y");
    Interval iv{x, y};
    MeanChainReport r;
    r.lambda = 0.5;
    r.note = "lambda fixed at 1/2";

    try {
        Expr logf = log_of(f);
        Expr d2 = logf.derivative(2);
        double mn = extrema(d2, iv).min_value;
        r.evidence.evaluated = true;
        r.evidence.value = mn >= -kLogConvexTol;
        r.evidence.witness = mn;
    } catch (const Error& e) {
        r.evidence.evaluated = true;
        r.evidence.value = false;
        r.note += "; log-convexity evidence failed: ";
        r.note += e.what();
    }

    r.left = f.eval(0.5 * (x + y));
    double fx = f.eval(x);
    double fy = f.eval(y);
    if (fx * fy >= 0.0) {
        r.middle = std::sqrt(fx * fy);
    } else {
        r.note += "; geometric mean undefined: f(x)f(y) < 0";
    }
    Expr df = f.derivative(1);
    QuadResult qd = integrate(mul(df, df), iv, tol);
    r.right = std::sqrt((y - x) / 12.0 * qd.value);
    r.link1_holds = std::isfinite(r.middle) && r.left <= r.middle + link_tol(r.middle);
    r.link2_holds = std::isfinite(r.middle) && r.middle <= r.right + link_tol(r.right);
    return r;
}

double invert_monotone(const Expr& f, const Interval& iv, double v) {
    ExtremaResult slope = extrema(f.derivative(1), iv);
    bool increasing = slope.min_value > 0.0;
    bool decreasing = slope.max_value < 0.0;
    if (!increasing && !decreasing) {
        throw InvalidError("inverse requires strict monotonicity; f' changes sign or vanishes");
    }
    double fa = f.eval(iv.a);
    double fb = f.eval(iv.b);
    double lo_v = std::min(fa, fb);
    double hi_v = std::max(fa, fb);
    double slack = 1e-9 * (1.0 + hi_v - lo_v);
    if (v < lo_v - slack || v > hi_v + slack) {
        throw RangeError("inversion failure: value " + std::to_string(v) +
                         " outside the range of f");
    }
    v = std::min(std::max(v, lo_v), hi_v);

    double lo = iv.a;
    double hi = iv.b;
    double flo = fa;
    for (int i = 0; i < kInvertIters && hi - lo > kInvertTol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f.eval(mid);
        bool go_right = increasing ? fm < v : fm > v;
        if (go_right) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (void)flo;
    return 0.5 * (lo + hi);
}

MeanChainReport bijective_generalization(const Expr& f, const Interval& iv, double x, double y,
                                         double lambda, double tol) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidError("lambda must lie in [0, 1]");
    if (x < iv.a || x > iv.b || y < iv.a || y > iv.b) {
        throw InvalidError("x and y must lie inside the interval");
    }
    MeanChainReport r;
    r.lambda = lambda;
    r.note = "bound integral limits taken as [alpha, beta] = "
             "[f^-1(f(x)^lambda), f^-1(f(y)^(1-lambda))]";

    ExtremaResult slope = extrema(f.derivative(1), iv);
    r.evidence.evaluated = true;
    r.evidence.value = slope.min_value > 0.0 || slope.max_value < 0.0;
    r.evidence.witness = slope.min_value > 0.0 ? slope.min_value : slope.max_value;
    if (!r.evidence.value) {
        throw InvalidError("bijective bound requires strict monotonicity on [a, b]");
    }

    double fx = f.eval(x);
    double fy = f.eval(y);
    double vx = std::pow(fx, lambda);
    double vy = std::pow(fy, 1.0 - lambda);
    if (!std::isfinite(vx) || !std::isfinite(vy)) {
        throw InvalidError("fractional power of a non-positive value in G_lambda");
    }
    r.alpha = invert_monotone(f, iv, vx);
    r.beta = invert_monotone(f, iv, vy);
    r.ordering_ok = r.beta > r.alpha;
    if (!r.ordering_ok) r.note += "; beta <= alpha: degenerate ordering, reported as-is";

    r.left = f.eval(lambda * x + (1.0 - lambda) * y);
    r.middle = vx * vy;
    if (r.alpha == r.beta) {
        r.right = 0.0;
    } else {
        Interval span{std::min(r.alpha, r.beta), std::max(r.alpha, r.beta)};
        Expr df = f.derivative(1);
        QuadResult qd = integrate(mul(df, df), span, tol);
        // (beta-alpha) int_alpha^beta = |beta-alpha| int over the sorted span
        r.right = span.width() / 12.0 * qd.value;
    }
    r.link1_holds = r.left <= r.middle + link_tol(r.middle);
    r.link2_holds = r.middle <= r.right + link_tol(r.right);
    return r;
}

} // namespace alzer

#include "quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace alzer {

namespace {

constexpr int kGridPoints = 4097; // resolves trig polynomials up to degree ~100
constexpr int kRefineCells = 8;
constexpr int kDepthCap = 60;
constexpr int kBisectIters = 200;

double sample(const Expr& f, double x) {
    double v = f.eval(x);
    if (!std::isfinite(v)) throw QuadError("non-finite integrand sample at x=" + std::to_string(x));
    return v;
}

struct AdaptiveState {
    const Expr& f;
    double err = 0.0;
    long long panels = 0;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(AdaptiveState& st, double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    if (lm <= a || rm <= lm || rm >= b) {
        throw QuadError("interval too small to subdivide near x=" + std::to_string(m));
    }
    double flm = sample(st.f, lm);
    double frm = sample(st.f, rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) {
        st.err += std::fabs(delta) / 15.0;
        st.panels += 2;
        return left + right + delta / 15.0;
    }
    if (depth >= kDepthCap) {
        throw QuadError("recursion depth cap (60) reached without meeting tolerance near x=" +
                        std::to_string(m));
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

struct BestPoint {
    double x = 0.0;
    double v = 0.0;
};

void consider(BestPoint& best, double x, double v) {
    if (v > best.v) best = {x, v};
}

// Bisect g to a sign change root; g(lo) and g(hi) must have opposite signs.
double bisect_root(const Expr& g, double lo, double hi, double glo) {
    for (int i = 0; i < kBisectIters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double gm = g.eval(mid);
        if (gm == 0.0) return mid;
        if ((glo > 0.0) == (gm > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * (1.0 + std::fabs(lo) + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximization, used when f' is unavailable.
double golden_max(const Expr& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f.eval(x1);
    double f2 = f.eval(x2);
    for (int i = 0; i < 120 && hi - lo > 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f.eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f.eval(x1);
        }
    }
    return 0.5 * (lo + hi);
}

// Grid max of g plus local refinement around the best cells. dg is the
// derivative of the *underlying* f; its critical points serve g = f and
// g = -f alike.
BestPoint grid_max(const Expr& g, const std::vector<double>& xs, const std::vector<double>& vs,
                   const Expr* dg) {
    BestPoint best{xs[0], vs[0]};
    for (int i = 1; i < kGridPoints; ++i) consider(best, xs[i], vs[i]);

    // indices of the top cells, by sample value
    std::vector<int> order(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + kRefineCells, order.end(),
                      [&](int l, int r) { return vs[l] > vs[r]; });

    for (int k = 0; k < kRefineCells; ++k) {
        int i = order[k];
        int lo = std::max(i - 1, 0);
        int hi = std::min(i + 1, kGridPoints - 1);
        if (dg) {
            // look for a sign change of g' in the two half-cells
            for (int j = lo; j < hi; ++j) {
                double dl = dg->eval(xs[j]);
                double dr = dg->eval(xs[j + 1]);
                if (dl == 0.0) consider(best, xs[j], vs[j]);
                if ((dl > 0.0 && dr < 0.0) || (dl < 0.0 && dr > 0.0)) {
                    double root = bisect_root(*dg, xs[j], xs[j + 1], dl);
                    consider(best, root, g.eval(root));
                }
            }
        } else {
            double xc = golden_max(g, xs[lo], xs[hi]);
            consider(best, xc, g.eval(xc));
        }
    }
    return best;
}

} // namespace

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidError("invalid interval: require finite a < b");
    }
}

QuadResult integrate(const Expr& f, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw InvalidError("integration tolerance must be positive");
    AdaptiveState st{f};
    double fa = sample(f, iv.a);
    double fb = sample(f, iv.b);
    double fm = sample(f, 0.5 * (iv.a + iv.b));
    double whole = simpson(fa, fm, fb, iv.width());
    QuadResult out;
    out.value = adapt(st, iv.a, iv.b, fa, fm, fb, whole, tol, 0);
    out.error_estimate = st.err;
    out.subdivisions = st.panels;
    return out;
}

ExtremaResult extrema(const Expr& f, const Interval& iv) {
    std::vector<double> xs(kGridPoints), vs(kGridPoints), neg(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        double t = static_cast<double>(i) / (kGridPoints - 1);
        xs[i] = iv.a + t * iv.width();
    }
    xs.front() = iv.a;
    xs.back() = iv.b;
    for (int i = 0; i < kGridPoints; ++i) {
        double v = f.eval(xs[i]);
        if (!std::isfinite(v)) {
            throw QuadError("non-finite sample at grid point x=" + std::to_string(xs[i]));
        }
        vs[i] = v;
        neg[i] = -v;
    }

    Expr df;
    const Expr* dfp = nullptr;
    try {
        df = f.derivative(1);
        dfp = &df;
    } catch (const Error&) {
        // refinement falls back to golden section
    }

    BestPoint mx = grid_max(f, xs, vs, dfp);
    Expr negf = negate(f);
    BestPoint mn = grid_max(negf, xs, neg, dfp);

    ExtremaResult out;
    out.max_value = mx.v;
    out.argmax = mx.x;
    out.min_value = -mn.v;
    out.argmin = mn.x;
    return out;
}

SupNormResult sup_norm(const Expr& f, const Interval& iv) {
    ExtremaResult ex = extrema(f, iv);
    SupNormResult out;
    out.max_value = ex.max_value;
    out.argmax = ex.argmax;
    out.abs_max = std::max(ex.max_value, -ex.min_value);
    return out;
}

Expr mean_zero_shift(const Expr& f, const Interval& iv, double tol) {
    QuadResult q = integrate(f, iv, tol);
    double mean = q.value / iv.width();
    return sub(f, constant(mean));
}

} // namespace alzer

#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace alzer {

namespace {

constexpr int kRejectCap = 10000;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// mt19937_64 output mapped to doubles by hand: the standard pins the engine
// but not the distributions, and corpora must be byte-stable across builds.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Dense polynomial in the power basis, index = power.
using Poly = std::vector<double>;

Poly poly_mul(const Poly& p, const Poly& q) {
    Poly out(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    }
    return out;
}

void poly_add_inplace(Poly& p, const Poly& q, double scale = 1.0) {
    if (q.size() > p.size()) p.resize(q.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) p[i] += scale * q[i];
}

Poly poly_antiderivative(const Poly& p) {
    Poly out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<double>(i + 1);
    return out;
}

// p(alpha + beta x) by binomial expansion; degrees here stay small.
Poly poly_compose_affine(const Poly& p, double alpha, double beta) {
    Poly out{0.0};
    Poly base{1.0};
    Poly lin{alpha, beta};
    for (std::size_t k = 0; k < p.size(); ++k) {
        poly_add_inplace(out, base, p[k]);
        if (k + 1 < p.size()) base = poly_mul(base, lin);
    }
    return out;
}

Expr poly_to_expr(const Poly& p) {
    Expr x = variable();
    Expr acc = constant(p.empty() ? 0.0 : p[0]);
    for (std::size_t k = 1; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        Expr term = k == 1 ? mul(constant(p[k]), x)
                           : mul(constant(p[k]), pow_of(x, static_cast<double>(k)));
        acc = add(acc, term);
    }
    return acc;
}

Poly random_poly(Rng& rng, int degree, double lo, double hi) {
    Poly p(static_cast<std::size_t>(degree) + 1);
    for (double& c : p) c = rng.uniform(lo, hi);
    return p;
}

// Nonnegative polynomial: a squared random polynomial plus a sum of even
// powers with nonnegative weights.
Poly nonnegative_poly(Rng& rng, int max_degree, double lo, double hi) {
    double span = std::max(std::fabs(lo), std::fabs(hi));
    int half = std::max(0, max_degree / 2);
    Poly sq = random_poly(rng, half, -span, span);
    Poly out = poly_mul(sq, sq);
    for (int i = 0; 2 * i <= max_degree; ++i) {
        double w = rng.unit() * span;
        Poly even(static_cast<std::size_t>(2 * i) + 1, 0.0);
        even.back() = w;
        poly_add_inplace(out, even);
    }
    return out;
}

Expr build_polynomial(Rng& rng, const GeneratorSpec& spec) {
    const TargetHypotheses& t = spec.target;
    int deg = std::max(2, spec.degree_cap);
    if (t.convex || t.endpoint_max) {
        // f'' = q >= 0 everywhere
        Poly q = nonnegative_poly(rng, deg - 2, spec.coeff_lo, spec.coeff_hi);
        Poly f = poly_antiderivative(poly_antiderivative(q));
        double slope = rng.uniform(spec.coeff_lo, spec.coeff_hi) * 0.25;
        poly_add_inplace(f, Poly{0.0, slope});
        if (t.endpoint_max) {
            // symmetrize about the midpoint: f(x) + f(a+b-x) keeps convexity
            // and pins equal maxima to the endpoints
            Poly reflected = poly_compose_affine(f, spec.interval.a + spec.interval.b, -1.0);
            poly_add_inplace(f, reflected);
        }
        return poly_to_expr(f);
    }
    if (t.increasing || t.decreasing) {
        Poly q = nonnegative_poly(rng, deg - 1, spec.coeff_lo, spec.coeff_hi);
        Poly f = poly_antiderivative(q);
        if (t.decreasing) {
            for (double& c : f) c = -c;
        }
        return poly_to_expr(f);
    }
    return poly_to_expr(random_poly(rng, deg, spec.coeff_lo, spec.coeff_hi));
}

Expr build_trig(Rng& rng, const GeneratorSpec& spec) {
    int harmonics = rng.uniform_int(1, std::max(1, spec.degree_cap));
    Expr x = variable();
    Expr acc = constant(0.0);
    for (int k = 1; k <= harmonics; ++k) {
        double ak = rng.uniform(spec.coeff_lo, spec.coeff_hi);
        double bk = rng.uniform(spec.coeff_lo, spec.coeff_hi);
        Expr kx = k == 1 ? x : mul(constant(static_cast<double>(k)), x);
        acc = add(acc, add(mul(constant(ak), sin_of(kx)), mul(constant(bk), cos_of(kx))));
    }
    return acc;
}

Expr build_exp_mixture(Rng& rng, const GeneratorSpec& spec) {
    const TargetHypotheses& t = spec.target;
    int terms = rng.uniform_int(1, std::max(1, spec.degree_cap));
    Expr x = variable();
    Expr acc = constant(0.0);
    for (int i = 0; i < terms; ++i) {
        double a = rng.uniform(spec.coeff_lo, spec.coeff_hi);
        double b = rng.uniform(-2.0, 2.0);
        if (t.convex || t.endpoint_max) a = std::fabs(a); // sum of a e^{bx}, a >= 0 is convex
        if (t.increasing) a = std::fabs(a) * (b >= 0.0 ? 1.0 : -1.0);
        if (t.decreasing) a = std::fabs(a) * (b >= 0.0 ? -1.0 : 1.0);
        acc = add(acc, mul(constant(a), exp_of(mul(constant(b), x))));
    }
    if (t.endpoint_max) {
        Expr reflected =
            acc.substitute(sub(constant(spec.interval.a + spec.interval.b), variable()));
        acc = add(acc, reflected);
    }
    return acc;
}

bool passes_targets(const Expr& f, const GeneratorSpec& spec) {
    const TargetHypotheses& t = spec.target;
    const Interval& iv = spec.interval;
    if (t.convex && !evidence::convex(f, iv).value) return false;
    if (t.increasing && !evidence::increasing(f, iv).value) return false;
    if (t.decreasing && !evidence::decreasing(f, iv).value) return false;
    if (t.mean_zero && !evidence::mean_zero(f, iv).value) return false;
    if (t.endpoint_max && !evidence::endpoints_are_max(f, iv).value) return false;
    if (t.positive_endpoint_product && !evidence::endpoint_product_positive(f, iv).value) {
        return false;
    }
    return true;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master ^ splitmix64(trial));
}

Expr generate_trial(const GeneratorSpec& spec, int trial) {
    Rng rng(trial_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    for (int rejects = 0; rejects <= kRejectCap; ++rejects) {
        Expr f;
        switch (spec.family) {
        case Family::polynomial: f = build_polynomial(rng, spec); break;
        case Family::trig_polynomial: f = build_trig(rng, spec); break;
        case Family::exp_mixture: f = build_exp_mixture(rng, spec); break;
        }
        if (spec.target.mean_zero) f = mean_zero_shift(f, spec.interval);
        if (passes_targets(f, spec)) return f;
    }
    throw CapError("generator rejection cap exceeded (" + std::to_string(kRejectCap) +
                   " rejects) for trial " + std::to_string(trial) +
                   "; the target hypotheses look unreachable for this family");
}

std::vector<Expr> generate(const GeneratorSpec& spec) {
    if (spec.trials < 0) throw InvalidError("trial count must be >= 0");
    std::vector<Expr> corpus;
    corpus.reserve(static_cast<std::size_t>(spec.trials));
    for (int i = 0; i < spec.trials; ++i) corpus.push_back(generate_trial(spec, i));
    return corpus;
}

MineResult mine(const GeneratorSpec& spec, const std::vector<std::string>& theorems, int n,
                double tol) {
    const auto& known = known_theorems();
    for (const std::string& id : theorems) {
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            throw InvalidError("unknown theorem id '" + id + "'");
        }
    }

    MineResult out;
    out.stats.reserve(theorems.size());
    for (const std::string& id : theorems) {
        TheoremStat st;
        st.theorem_id = id;
        out.stats.push_back(st);
    }

    for (int trial = 0; trial < spec.trials; ++trial) {
        Expr f;
        try {
            f = generate_trial(spec, trial);
        } catch (const Error&) {
            for (TheoremStat& st : out.stats) ++st.errors;
            continue;
        }
        for (std::size_t ti = 0; ti < theorems.size(); ++ti) {
            TheoremStat& st = out.stats[ti];
            try {
                IneqReport r = run_check(theorems[ti], f, spec.interval, n, tol);
                ++st.checked;
                if (std::isfinite(r.sharpness_ratio) &&
                    (!std::isfinite(st.worst_ratio) || r.sharpness_ratio > st.worst_ratio)) {
                    st.worst_ratio = r.sharpness_ratio;
                }
                if (r.satisfied) continue;
                // confirmation pass at 10x tighter quadrature tolerance
                IneqReport c = run_check(theorems[ti], f, spec.interval, n, tol / 10.0);
                if (c.satisfied) continue;
                ++st.violations;
                CounterexampleRecord rec;
                rec.theorem_id = c.theorem_id;
                rec.function_text = f.str();
                rec.interval = c.interval;
                rec.lhs = c.lhs;
                rec.rhs = c.rhs;
                rec.margin = c.margin;
                rec.hypotheses = c.hypotheses;
                rec.trial = trial;
                rec.seed = trial_seed(spec.seed, static_cast<std::uint64_t>(trial));
                out.records.push_back(std::move(rec));
            } catch (const Error&) {
                ++st.errors;
            }
        }
    }
    return out;
}

} // namespace alzer

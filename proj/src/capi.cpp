#include "alzer/alzer.h"

#include "apps.hpp"
#include "expr.hpp"
#include "ineq.hpp"
#include "quad.hpp"
#include "search.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct alz_expr {
    alzer::Expr impl;
};

struct alz_corpus {
    std::vector<alzer::Expr> exprs;
    std::vector<std::string> texts;
};

struct alz_mine_result {
    alzer::MineResult impl;
};

namespace {

thread_local std::string g_last_error;
thread_local long long g_last_offset = -1;

void clear_error() {
    g_last_error.clear();
    g_last_offset = -1;
}

alz_errc record_error(const alzer::Error& e) {
    g_last_error = e.what();
    g_last_offset = -1;
    if (const auto* pe = dynamic_cast<const alzer::ParseError*>(&e)) {
        g_last_offset = static_cast<long long>(pe->offset());
    }
    switch (e.code()) {
    case alzer::Errc::parse: return ALZ_ERR_PARSE;
    case alzer::Errc::eval: return ALZ_ERR_EVAL;
    case alzer::Errc::diff: return ALZ_ERR_DIFF;
    case alzer::Errc::quad: return ALZ_ERR_QUAD;
    case alzer::Errc::range: return ALZ_ERR_RANGE;
    case alzer::Errc::invalid: return ALZ_ERR_INVALID;
    case alzer::Errc::cap: return ALZ_ERR_CAP;
    case alzer::Errc::internal: break;
    }
    return ALZ_ERR_INTERNAL;
}

template <typename Fn> alz_errc guarded(Fn&& fn) noexcept {
    clear_error();
    try {
        fn();
        return ALZ_OK;
    } catch (const alzer::Error& e) {
        return record_error(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ALZ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ALZ_ERR_INTERNAL;
    }
}

alz_errc invalid(const char* msg) {
    clear_error();
    g_last_error = msg;
    return ALZ_ERR_INVALID;
}

double pick_tol(double tol) { return tol > 0.0 ? tol : alzer::kDefaultTol; }

void copy_str(char* dst, std::size_t cap, const std::string& src) {
    std::size_t n = src.size() < cap - 1 ? src.size() : cap - 1;
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

alz_flag to_c(const alzer::Flag& f) {
    return alz_flag{f.evaluated ? 1 : 0, f.value ? 1 : 0, f.witness};
}

alz_hypotheses to_c(const alzer::HypothesisFlags& h) {
    alz_hypotheses out;
    out.mean_zero = to_c(h.mean_zero);
    out.convex = to_c(h.convex);
    out.increasing = to_c(h.increasing);
    out.decreasing = to_c(h.decreasing);
    out.endpoint_product_positive = to_c(h.endpoint_product_positive);
    out.endpoints_are_max = to_c(h.endpoints_are_max);
    out.periodic_match = to_c(h.periodic_match);
    return out;
}

void to_c(const alzer::IneqReport& r, alz_ineq_report* out) {
    copy_str(out->theorem_id, sizeof(out->theorem_id), r.theorem_id);
    out->a = r.interval.a;
    out->b = r.interval.b;
    out->lhs = r.lhs;
    out->rhs = r.rhs;
    out->margin = r.margin;
    out->sharpness_ratio = r.sharpness_ratio;
    out->satisfied = r.satisfied ? 1 : 0;
    out->hypotheses_met = r.hypotheses_met ? 1 : 0;
    out->sharp_confirmed = r.sharp_confirmed ? 1 : 0;
    out->used_abs_max = r.used_abs_max ? 1 : 0;
    out->t_rap = r.t_rap;
    out->vanishing_residual = r.vanishing_residual;
    out->hypotheses = to_c(r.hypotheses);
    out->quad_integrals = r.budget.integrals;
    out->quad_subdivisions = r.budget.subdivisions;
    out->quad_error_sum = r.budget.error_sum;
    copy_str(out->note, sizeof(out->note), r.note);
}

void chain_to_c(const alzer::MeanChainReport& r, alz_chain_report* out) {
    out->lambda = r.lambda;
    out->left = r.left;
    out->middle = r.middle;
    out->right = r.right;
    out->link1_holds = r.link1_holds ? 1 : 0;
    out->link2_holds = r.link2_holds ? 1 : 0;
    out->alpha = r.alpha;
    out->beta = r.beta;
    out->ordering_ok = r.ordering_ok ? 1 : 0;
    out->evidence = to_c(r.evidence);
    copy_str(out->note, sizeof(out->note), r.note);
}

alzer::GeneratorSpec to_cpp(const alz_generator_spec& s) {
    alzer::GeneratorSpec spec;
    switch (s.family) {
    case ALZ_FAMILY_POLYNOMIAL: spec.family = alzer::Family::polynomial; break;
    case ALZ_FAMILY_TRIG: spec.family = alzer::Family::trig_polynomial; break;
    case ALZ_FAMILY_EXP: spec.family = alzer::Family::exp_mixture; break;
    default: throw alzer::InvalidError("unknown generator family");
    }
    spec.interval = alzer::Interval{s.a, s.b};
    spec.degree_cap = s.degree_cap;
    spec.coeff_lo = s.coeff_lo;
    spec.coeff_hi = s.coeff_hi;
    spec.target.convex = (s.hypotheses & ALZ_HYP_CONVEX) != 0;
    spec.target.increasing = (s.hypotheses & ALZ_HYP_INCREASING) != 0;
    spec.target.decreasing = (s.hypotheses & ALZ_HYP_DECREASING) != 0;
    spec.target.mean_zero = (s.hypotheses & ALZ_HYP_MEAN_ZERO) != 0;
    spec.target.endpoint_max = (s.hypotheses & ALZ_HYP_ENDPOINT_MAX) != 0;
    spec.target.positive_endpoint_product =
        (s.hypotheses & ALZ_HYP_POSITIVE_ENDPOINT_PRODUCT) != 0;
    spec.seed = s.seed;
    spec.trials = s.trials;
    if (spec.coeff_lo >= spec.coeff_hi) {
        throw alzer::InvalidError("coefficient range requires lo < hi");
    }
    return spec;
}

} // namespace

extern "C" {

const char* alz_version(void) { return "0.1.0"; }

const char* alz_errc_name(alz_errc code) {
    switch (code) {
    case ALZ_OK: return "ok";
    case ALZ_ERR_PARSE: return "parse";
    case ALZ_ERR_EVAL: return "eval";
    case ALZ_ERR_DIFF: return "diff";
    case ALZ_ERR_QUAD: return "quad";
    case ALZ_ERR_RANGE: return "range";
    case ALZ_ERR_INVALID: return "invalid";
    case ALZ_ERR_CAP: return "cap";
    case ALZ_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* alz_last_error(void) { return g_last_error.c_str(); }

long long alz_last_error_offset(void) { return g_last_offset; }

alz_errc alz_parse(const char* text, alz_expr** out) {
    if (!text || !out) return invalid("null argument");
    return guarded([&] { *out = new alz_expr{alzer::parse(text)}; });
}

void alz_expr_free(alz_expr* e) { delete e; }

alz_errc alz_expr_eval(const alz_expr* e, double x, double* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] { *out = e->impl.eval(x); });
}

alz_errc alz_expr_diff(const alz_expr* e, int order, alz_expr** out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] { *out = new alz_expr{e->impl.derivative(order)}; });
}

alz_errc alz_expr_str(const alz_expr* e, char** out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        std::string s = e->impl.str();
        char* buf = static_cast<char*>(std::malloc(s.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *out = buf;
    });
}

void alz_string_free(char* s) { std::free(s); }

alz_errc alz_integrate(const alz_expr* e, double a, double b, double tol, alz_quad_result* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::QuadResult q = alzer::integrate(e->impl, alzer::Interval{a, b}, pick_tol(tol));
        out->value = q.value;
        out->error_estimate = q.error_estimate;
        out->subdivisions = q.subdivisions;
    });
}

alz_errc alz_sup_norm(const alz_expr* e, double a, double b, alz_sup_result* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::SupNormResult s = alzer::sup_norm(e->impl, alzer::Interval{a, b});
        out->max_value = s.max_value;
        out->abs_max = s.abs_max;
        out->argmax = s.argmax;
    });
}

alz_errc alz_mean_zero_shift(const alz_expr* e, double a, double b, double tol, alz_expr** out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        *out = new alz_expr{
            alzer::mean_zero_shift(e->impl, alzer::Interval{a, b}, pick_tol(tol))};
    });
}

alz_errc alz_check(const char* theorem_id, const alz_expr* e, double a, double b, int n,
                   double tol, alz_ineq_report* out) {
    if (!theorem_id || !e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::IneqReport r =
            alzer::run_check(theorem_id, e->impl, alzer::Interval{a, b}, n, pick_tol(tol));
        to_c(r, out);
    });
}

alz_errc alz_vanishing_residual(const alz_expr* e, double a, double b, int n, double tol,
                                double* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        *out = alzer::vanishing_integral_residual(e->impl, alzer::Interval{a, b}, n,
                                                  pick_tol(tol));
    });
}

alz_errc alz_higher_order_constants(int n, double a, double b, double* beta_out,
                                    double* alpha_out) {
    if (!beta_out || !alpha_out) return invalid("null argument");
    return guarded([&] {
        alzer::HigherOrderConstants c =
            alzer::HigherOrderConstants::make(n, alzer::Interval{a, b});
        *beta_out = c.beta;
        *alpha_out = c.alpha;
    });
}

alz_errc alz_audit_sharpness(const char* theorem_id, int has_interval, double a, double b,
                             double tol, alz_ineq_report* out) {
    if (!theorem_id || !out) return invalid("null argument");
    return guarded([&] {
        std::optional<alzer::Interval> iv;
        if (has_interval) iv = alzer::Interval{a, b};
        alzer::IneqReport r = alzer::audit_sharpness(theorem_id, iv, pick_tol(tol));
        to_c(r, out);
    });
}

alz_errc alz_trapezoid_bounds(const alz_expr* e, double a, double b, double tol,
                              alz_trap_bounds* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::TrapezoidBounds t =
            alzer::trapezoid_bounds(e->impl, alzer::Interval{a, b}, pick_tol(tol));
        out->t_rap = t.t_rap;
        out->true_abs = t.true_abs;
        out->classic_bound = t.classic_bound;
        out->m_constant = t.m_constant;
        out->new_bound = t.new_bound;
        out->classic_applicable = t.classic_applicable ? 1 : 0;
        out->new_applicable = t.new_applicable ? 1 : 0;
        copy_str(out->note, sizeof(out->note), t.hypothesis_note);
    });
}

alz_errc alz_geometric_mean_bound(const alz_expr* e, double a, double b, double tol,
                                  alz_ineq_report* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::IneqReport r =
            alzer::geometric_mean_bound(e->impl, alzer::Interval{a, b}, pick_tol(tol));
        to_c(r, out);
    });
}

alz_errc alz_log_convex_chain(const alz_expr* e, double x, double y, double tol,
                              alz_chain_report* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::MeanChainReport r = alzer::log_convex_chain(e->impl, x, y, pick_tol(tol));
        chain_to_c(r, out);
    });
}

alz_errc alz_bijective_chain(const alz_expr* e, double a, double b, double x, double y,
                             double lambda, double tol, alz_chain_report* out) {
    if (!e || !out) return invalid("null argument");
    return guarded([&] {
        alzer::MeanChainReport r = alzer::bijective_generalization(
            e->impl, alzer::Interval{a, b}, x, y, lambda, pick_tol(tol));
        chain_to_c(r, out);
    });
}

alz_errc alz_invert_monotone(const alz_expr* e, double a, double b, double v, double* out) {
    if (!e || !out) return invalid("null argument");
    return guarded(
        [&] { *out = alzer::invert_monotone(e->impl, alzer::Interval{a, b}, v); });
}

alz_errc alz_generate(const alz_generator_spec* spec, alz_corpus** out) {
    if (!spec || !out) return invalid("null argument");
    return guarded([&] {
        alzer::GeneratorSpec s = to_cpp(*spec);
        auto corpus = std::make_unique<alz_corpus>();
        corpus->exprs = alzer::generate(s);
        corpus->texts.reserve(corpus->exprs.size());
        for (const alzer::Expr& e : corpus->exprs) corpus->texts.push_back(e.str());
        *out = corpus.release();
    });
}

size_t alz_corpus_size(const alz_corpus* corpus) { return corpus ? corpus->exprs.size() : 0; }

alz_errc alz_corpus_expr(const alz_corpus* corpus, size_t index, alz_expr** out) {
    if (!corpus || !out) return invalid("null argument");
    if (index >= corpus->exprs.size()) return invalid("corpus index out of range");
    return guarded([&] { *out = new alz_expr{corpus->exprs[index]}; });
}

const char* alz_corpus_text(const alz_corpus* corpus, size_t index) {
    if (!corpus || index >= corpus->texts.size()) return nullptr;
    return corpus->texts[index].c_str();
}

void alz_corpus_free(alz_corpus* corpus) { delete corpus; }

alz_errc alz_mine(const alz_generator_spec* spec, const char* const* theorems, size_t n_theorems,
                  int n_order, double tol, alz_mine_result** out) {
    if (!spec || !theorems || !out) return invalid("null argument");
    return guarded([&] {
        alzer::GeneratorSpec s = to_cpp(*spec);
        std::vector<std::string> ids;
        ids.reserve(n_theorems);
        for (size_t i = 0; i < n_theorems; ++i) {
            if (!theorems[i]) throw alzer::InvalidError("null theorem id");
            ids.emplace_back(theorems[i]);
        }
        auto res = std::make_unique<alz_mine_result>();
        res->impl = alzer::mine(s, ids, n_order, pick_tol(tol));
        *out = res.release();
    });
}

size_t alz_mine_count(const alz_mine_result* res) { return res ? res->impl.records.size() : 0; }

alz_errc alz_mine_record(const alz_mine_result* res, size_t index, alz_counterexample* out) {
    if (!res || !out) return invalid("null argument");
    if (index >= res->impl.records.size()) return invalid("record index out of range");
    const alzer::CounterexampleRecord& r = res->impl.records[index];
    copy_str(out->theorem_id, sizeof(out->theorem_id), r.theorem_id);
    out->a = r.interval.a;
    out->b = r.interval.b;
    out->lhs = r.lhs;
    out->rhs = r.rhs;
    out->margin = r.margin;
    out->hypotheses = to_c(r.hypotheses);
    out->trial = r.trial;
    out->seed = r.seed;
    clear_error();
    return ALZ_OK;
}

const char* alz_mine_function(const alz_mine_result* res, size_t index) {
    if (!res || index >= res->impl.records.size()) return nullptr;
    return res->impl.records[index].function_text.c_str();
}

size_t alz_mine_stat_count(const alz_mine_result* res) {
    return res ? res->impl.stats.size() : 0;
}

alz_errc alz_mine_stat(const alz_mine_result* res, size_t index, alz_theorem_stat* out) {
    if (!res || !out) return invalid("null argument");
    if (index >= res->impl.stats.size()) return invalid("stat index out of range");
    const alzer::TheoremStat& st = res->impl.stats[index];
    copy_str(out->theorem_id, sizeof(out->theorem_id), st.theorem_id);
    out->checked = st.checked;
    out->violations = st.violations;
    out->errors = st.errors;
    out->worst_ratio = st.worst_ratio;
    clear_error();
    return ALZ_OK;
}

void alz_mine_free(alz_mine_result* res) { delete res; }

} // extern "C"

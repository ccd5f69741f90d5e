#include "expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace alzer {

namespace {

NodePtr make(Op op, double value, NodePtr a = nullptr, NodePtr b = nullptr) {
    return std::make_shared<Node>(Node{op, value, std::move(a), std::move(b)});
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }

bool is_integer(double v) {
    return std::isfinite(v) && v == std::nearbyint(v) && std::fabs(v) < 1e15;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

NodePtr n_const(double v) { return make(Op::constant, v); }

NodePtr n_neg(NodePtr a) {
    if (a->op == Op::constant) return n_const(-a->value);
    if (a->op == Op::neg) return a->a;
    return make(Op::neg, 0.0, std::move(a));
}

NodePtr n_add(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant) {
        double v = a->value + b->value;
        if (std::isfinite(v)) return n_const(v);
    }
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return make(Op::add, 0.0, std::move(a), std::move(b));
}

NodePtr n_sub(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant) {
        double v = a->value - b->value;
        if (std::isfinite(v)) return n_const(v);
    }
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return n_neg(std::move(b));
    return make(Op::sub, 0.0, std::move(a), std::move(b));
}

NodePtr n_mul(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant) {
        double v = a->value * b->value;
        if (std::isfinite(v)) return n_const(v);
    }
    if (is_const(a, 0.0) || is_const(b, 0.0)) return n_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (is_const(a, -1.0)) return n_neg(std::move(b));
    if (is_const(b, -1.0)) return n_neg(std::move(a));
    return make(Op::mul, 0.0, std::move(a), std::move(b));
}

NodePtr n_div(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant && b->value != 0.0) {
        double v = a->value / b->value;
        if (std::isfinite(v)) return n_const(v);
    }
    if (is_const(a, 0.0)) return n_const(0.0);
    if (is_const(b, 1.0)) return a;
    return make(Op::div, 0.0, std::move(a), std::move(b));
}

NodePtr n_pow(NodePtr base, double exponent) {
    if (exponent == 0.0) return n_const(1.0);
    if (exponent == 1.0) return base;
    if (base->op == Op::constant) {
        double v = std::pow(base->value, exponent);
        if (std::isfinite(v)) return n_const(v);
    }
    return make(Op::pow, exponent, std::move(base));
}

NodePtr n_fn(Op op, NodePtr a) {
    if (a->op == Op::constant) {
        double x = a->value;
        double v = 0.0;
        bool ok = true;
        switch (op) {
        case Op::sin: v = std::sin(x); break;
        case Op::cos: v = std::cos(x); break;
        case Op::exp: v = std::exp(x); break;
        case Op::log:
            ok = x > 0.0;
            v = ok ? std::log(x) : 0.0;
            break;
        case Op::sqrt:
            ok = x >= 0.0;
            v = ok ? std::sqrt(x) : 0.0;
            break;
        case Op::abs: v = std::fabs(x); break;
        default: ok = false; break;
        }
        if (ok && std::isfinite(v)) return n_const(v);
    }
    return make(op, 0.0, std::move(a));
}

void print_node(const NodePtr& n, std::string& out) {
    switch (n->op) {
    case Op::constant:
        if (n->value < 0.0 || std::signbit(n->value)) {
            out += "(-";
            out += format_double(-n->value);
            out += ')';
        } else {
            out += format_double(n->value);
        }
        break;
    case Op::var: out += 'x'; break;
    case Op::neg:
        out += "(-";
        print_node(n->a, out);
        out += ')';
        break;
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::log:
    case Op::sqrt:
    case Op::abs: {
        const char* name = n->op == Op::sin    ? "sin"
                           : n->op == Op::cos  ? "cos"
                           : n->op == Op::exp  ? "exp"
                           : n->op == Op::log  ? "log"
                           : n->op == Op::sqrt ? "sqrt"
                                               : "abs";
        out += name;
        out += '(';
        print_node(n->a, out);
        out += ')';
        break;
    }
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
        char sym = n->op == Op::add   ? '+'
                   : n->op == Op::sub ? '-'
                   : n->op == Op::mul ? '*'
                                      : '/';
        out += '(';
        print_node(n->a, out);
        out += sym;
        print_node(n->b, out);
        out += ')';
        break;
    }
    case Op::pow:
        out += '(';
        print_node(n->a, out);
        out += '^';
        out += format_double(n->value);
        out += ')';
        break;
    }
}

std::string subtree_str(const NodePtr& n) {
    std::string s;
    print_node(n, s);
    return s;
}

[[noreturn]] void eval_fail(const NodePtr& n, double x, const char* what) {
    char head[64];
    std::snprintf(head, sizeof(head), "%s at x=%.17g in ", what, x);
    throw EvalError(std::string(head) + subtree_str(n));
}

double eval_node(const NodePtr& n, double x) {
    switch (n->op) {
    case Op::constant: return n->value;
    case Op::var: return x;
    case Op::neg: return -eval_node(n->a, x);
    case Op::sin: return std::sin(eval_node(n->a, x));
    case Op::cos: return std::cos(eval_node(n->a, x));
    case Op::exp: {
        double v = std::exp(eval_node(n->a, x));
        if (!std::isfinite(v)) eval_fail(n, x, "non-finite value");
        return v;
    }
    case Op::log: {
        double v = eval_node(n->a, x);
        if (v <= 0.0) eval_fail(n, x, "log of non-positive value");
        return std::log(v);
    }
    case Op::sqrt: {
        double v = eval_node(n->a, x);
        if (v < 0.0) eval_fail(n, x, "sqrt of negative value");
        return std::sqrt(v);
    }
    case Op::abs: return std::fabs(eval_node(n->a, x));
    case Op::add: return eval_node(n->a, x) + eval_node(n->b, x);
    case Op::sub: return eval_node(n->a, x) - eval_node(n->b, x);
    case Op::mul: {
        double v = eval_node(n->a, x) * eval_node(n->b, x);
        if (!std::isfinite(v)) eval_fail(n, x, "non-finite value");
        return v;
    }
    case Op::div: {
        double num = eval_node(n->a, x);
        double den = eval_node(n->b, x);
        if (den == 0.0) eval_fail(n, x, "division by zero");
        return num / den;
    }
    case Op::pow: {
        double base = eval_node(n->a, x);
        double p = n->value;
        if (base < 0.0 && !is_integer(p)) eval_fail(n, x, "negative base with non-integer exponent");
        if (base == 0.0 && p < 0.0) eval_fail(n, x, "zero base with negative exponent");
        double v = std::pow(base, p);
        if (!std::isfinite(v)) eval_fail(n, x, "non-finite value");
        return v;
    }
    }
    throw EvalError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->op) {
    case Op::constant: return n_const(0.0);
    case Op::var: return n_const(1.0);
    case Op::neg: return n_neg(diff_node(n->a));
    case Op::sin: return n_mul(n_fn(Op::cos, n->a), diff_node(n->a));
    case Op::cos: return n_neg(n_mul(n_fn(Op::sin, n->a), diff_node(n->a)));
    case Op::exp: return n_mul(n_fn(Op::exp, n->a), diff_node(n->a));
    case Op::log: return n_div(diff_node(n->a), n->a);
    case Op::sqrt: return n_div(diff_node(n->a), n_mul(n_const(2.0), n_fn(Op::sqrt, n->a)));
    case Op::abs: throw DiffError("abs is not differentiable: " + subtree_str(n));
    case Op::add: return n_add(diff_node(n->a), diff_node(n->b));
    case Op::sub: return n_sub(diff_node(n->a), diff_node(n->b));
    case Op::mul:
        return n_add(n_mul(diff_node(n->a), n->b), n_mul(n->a, diff_node(n->b)));
    case Op::div:
        return n_div(n_sub(n_mul(diff_node(n->a), n->b), n_mul(n->a, diff_node(n->b))),
                     n_mul(n->b, n->b));
    case Op::pow: {
        double p = n->value;
        if (is_integer(p)) {
            // power rule keeps polynomials exact
            return n_mul(n_mul(n_const(p), n_pow(n->a, p - 1.0)), diff_node(n->a));
        }
        // non-integer exponent: differentiate the exp/log rewrite exp(p*log(base))
        NodePtr rewritten = n_fn(Op::exp, n_mul(n_const(p), n_fn(Op::log, n->a)));
        return n_mul(rewritten, n_div(n_mul(n_const(p), diff_node(n->a)), n->a));
    }
    }
    throw DiffError("corrupt expression node");
}

std::size_t count_nodes(const NodePtr& n, std::unordered_map<const Node*, std::size_t>& memo) {
    constexpr std::size_t cap = Expr::node_cap() + 1;
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    std::size_t total = 1;
    if (n->a) total += count_nodes(n->a, memo);
    if (n->b) total += count_nodes(n->b, memo);
    if (total > cap) total = cap;
    memo.emplace(n.get(), total);
    return total;
}

// ---- parser ----------------------------------------------------------------

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (eat('+')) e = n_add(e, parse_term());
            else if (eat('-')) e = n_sub(e, parse_term());
            else return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*')) e = n_mul(e, parse_unary());
            else if (eat('/')) e = n_div(e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return n_neg(parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            std::size_t caret = pos_;
            ++pos_;
            NodePtr ex = parse_unary();
            if (ex->op != Op::constant) {
                pos_ = caret;
                fail("exponent must fold to a constant");
            }
            return n_pow(std::move(base), ex->value);
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0.0;
        auto [end, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - first);
        return n_const(v);
    }

    NodePtr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            bool ident = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                         (c >= '0' && c <= '9') || c == '_';
            if (!ident) break;
            ++pos_;
        }
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make(Op::var, 0.0);
        if (name == "pi") return n_const(std::numbers::pi);
        if (name == "e") return n_const(std::numbers::e);

        Op fn;
        if (name == "sin") fn = Op::sin;
        else if (name == "cos") fn = Op::cos;
        else if (name == "exp") fn = Op::exp;
        else if (name == "log") fn = Op::log;
        else if (name == "sqrt") fn = Op::sqrt;
        else if (name == "abs") fn = Op::abs;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return n_fn(fn, std::move(arg));
    }
};

} // namespace

double Expr::eval(double x) const {
    if (!root_) throw EvalError("empty expression");
    return eval_node(root_, x);
}

Expr Expr::derivative(int order) const {
    if (!root_) throw DiffError("empty expression");
    if (order < 1) throw InvalidError("derivative order must be >= 1");
    NodePtr d = root_;
    for (int k = 0; k < order; ++k) {
        d = diff_node(d);
        Expr tmp(d);
        if (tmp.node_count() > node_cap()) {
            throw CapError("simplification cap exceeded: derivative of order " +
                           std::to_string(k + 1) + " has more than " +
                           std::to_string(node_cap()) + " nodes");
        }
    }
    return Expr(std::move(d));
}

std::string Expr::str() const {
    if (!root_) return "<empty>";
    return subtree_str(root_);
}

std::size_t Expr::node_count() const {
    if (!root_) return 0;
    std::unordered_map<const Node*, std::size_t> memo;
    return count_nodes(root_, memo);
}

bool Expr::contains(Op op) const {
    if (!root_) return false;
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->op == op) return true;
        if (n->a) stack.push_back(n->a.get());
        if (n->b) stack.push_back(n->b.get());
    }
    return false;
}

namespace {

NodePtr substitute_node(const NodePtr& n, const NodePtr& repl,
                        std::unordered_map<const Node*, NodePtr>& memo) {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    NodePtr out;
    switch (n->op) {
    case Op::constant: out = n; break;
    case Op::var: out = repl; break;
    case Op::neg: out = n_neg(substitute_node(n->a, repl, memo)); break;
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::log:
    case Op::sqrt:
    case Op::abs: out = n_fn(n->op, substitute_node(n->a, repl, memo)); break;
    case Op::add:
        out = n_add(substitute_node(n->a, repl, memo), substitute_node(n->b, repl, memo));
        break;
    case Op::sub:
        out = n_sub(substitute_node(n->a, repl, memo), substitute_node(n->b, repl, memo));
        break;
    case Op::mul:
        out = n_mul(substitute_node(n->a, repl, memo), substitute_node(n->b, repl, memo));
        break;
    case Op::div:
        out = n_div(substitute_node(n->a, repl, memo), substitute_node(n->b, repl, memo));
        break;
    case Op::pow: out = n_pow(substitute_node(n->a, repl, memo), n->value); break;
    }
    memo.emplace(n.get(), out);
    return out;
}

} // namespace

Expr Expr::substitute(const Expr& replacement) const {
    if (!root_ || !replacement.root()) throw InvalidError("substitute on empty expression");
    std::unordered_map<const Node*, NodePtr> memo;
    return Expr(substitute_node(root_, replacement.root(), memo));
}

Expr parse(std::string_view text) { return Expr(Parser(text).run()); }

Expr constant(double v) { return Expr(n_const(v)); }
Expr variable() { return Expr(make(Op::var, 0.0)); }
Expr negate(const Expr& a) { return Expr(n_neg(a.root())); }
Expr add(const Expr& a, const Expr& b) { return Expr(n_add(a.root(), b.root())); }
Expr sub(const Expr& a, const Expr& b) { return Expr(n_sub(a.root(), b.root())); }
Expr mul(const Expr& a, const Expr& b) { return Expr(n_mul(a.root(), b.root())); }
Expr divide(const Expr& a, const Expr& b) { return Expr(n_div(a.root(), b.root())); }
Expr pow_of(const Expr& base, double exponent) { return Expr(n_pow(base.root(), exponent)); }
Expr sin_of(const Expr& a) { return Expr(n_fn(Op::sin, a.root())); }
Expr cos_of(const Expr& a) { return Expr(n_fn(Op::cos, a.root())); }
Expr exp_of(const Expr& a) { return Expr(n_fn(Op::exp, a.root())); }
Expr log_of(const Expr& a) { return Expr(n_fn(Op::log, a.root())); }
Expr sqrt_of(const Expr& a) { return Expr(n_fn(Op::sqrt, a.root())); }
Expr abs_of(const Expr& a) { return Expr(n_fn(Op::abs, a.root())); }

} // namespace alzer

#pragma once

#include "errors.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace alzer {

// Closed-form functions of one real variable.
//
// Grammar accepted by parse():
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('-'|'+')* power
//   power   := primary ('^' unary)?            right associative
//   primary := number | 'x' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
//   fn      := sin | cos | exp | log | sqrt | abs
//
// The exponent of '^' must fold to a constant; 'x^x' is rejected.
// Expr values are immutable trees and cheap to copy (shared subtrees).

enum class Op {
    constant,
    var,
    neg,
    sin,
    cos,
    exp,
    log,
    sqrt,
    abs,
    add,
    sub,
    mul,
    div,
    pow, // child^value, exponent stored in Node::value
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    double value = 0.0; // payload for constant and pow
    NodePtr a, b;
};

class Expr {
  public:
    Expr() = default;

    bool valid() const { return root_ != nullptr; }
    const NodePtr& root() const { return root_; }

    // Throws EvalError on domain violations (log of non-positive, division by
    // zero, ...) or non-finite results; the message names the failing subtree.
    double eval(double x) const;

    // Exact symbolic derivative of the given order, simplified as it is built.
    // Throws DiffError on abs nodes and CapError when the simplified tree
    // exceeds node_cap().
    Expr derivative(int order) const;

    // Canonical fully parenthesized form; parse(str()) reproduces the tree.
    std::string str() const;

    // Logical tree size (shared subtrees counted with multiplicity),
    // saturated at node_cap() + 1.
    std::size_t node_count() const;

    bool contains(Op op) const;

    // Replace every occurrence of the variable by `replacement`.
    Expr substitute(const Expr& replacement) const;

    static constexpr std::size_t node_cap() { return 20000; }

    explicit Expr(NodePtr n) : root_(std::move(n)) {}

  private:
    NodePtr root_;
};

Expr parse(std::string_view text);

// AST builders; all simplify on construction (constant folding, 0/1 rules).
Expr constant(double v);
Expr variable();
Expr negate(const Expr& a);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr divide(const Expr& a, const Expr& b);
Expr pow_of(const Expr& base, double exponent);
Expr sin_of(const Expr& a);
Expr cos_of(const Expr& a);
Expr exp_of(const Expr& a);
Expr log_of(const Expr& a);
Expr sqrt_of(const Expr& a);
Expr abs_of(const Expr& a);

} // namespace alzer

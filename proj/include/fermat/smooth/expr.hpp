#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fermat/core/errors.hpp"
#include "fermat/core/rational.hpp"

namespace fermat {

enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, PowInt, Sin, Cos, Exp, Log, Sqrt };

inline const char* to_string(Kind k)
{
    switch (k) {
    case Kind::Const: return "const";
    case Kind::Var: return "var";
    case Kind::Add: return "+";
    case Kind::Sub: return "-";
    case Kind::Mul: return "*";
    case Kind::Div: return "/";
    case Kind::Neg: return "neg";
    case Kind::PowInt: return "^";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Exp: return "exp";
    case Kind::Log: return "log";
    case Kind::Sqrt: return "sqrt";
    }
    return "?";
}

inline bool is_function(Kind k)
{
    return k == Kind::Sin || k == Kind::Cos || k == Kind::Exp || k == Kind::Log || k == Kind::Sqrt;
}

class Expr;

struct Node {
    Kind kind;
    Rational value;          // Const
    std::size_t index = 0;   // Var
    unsigned long power = 0; // PowInt
    std::vector<Expr> kids;
};

/// Immutable smooth-function expression; copies share structure.
class Expr {
public:
    Expr() : Expr(Rational(0)) {}
    Expr(Rational c) : node_(std::make_shared<const Node>(Node{Kind::Const, std::move(c), 0, 0, {}})) {}
    Expr(int c) : Expr(Rational(c)) {}
    Expr(long c) : Expr(Rational(c)) {}

    static Expr var(std::size_t i) { return Expr(Node{Kind::Var, Rational(0), i, 0, {}}); }
    static Expr unary(Kind k, Expr a) { return Expr(Node{k, Rational(0), 0, 0, {std::move(a)}}); }
    static Expr binary(Kind k, Expr a, Expr b) { return Expr(Node{k, Rational(0), 0, 0, {std::move(a), std::move(b)}}); }
    static Expr pow(Expr a, unsigned long n) { return Expr(Node{Kind::PowInt, Rational(0), 0, n, {std::move(a)}}); }

    Kind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    std::size_t index() const { return node_->index; }
    unsigned long power() const { return node_->power; }
    const std::vector<Expr>& kids() const { return node_->kids; }
    const Expr& kid(std::size_t i = 0) const { return node_->kids.at(i); }

    bool is_const() const { return kind() == Kind::Const; }
    bool is_const(const Rational& c) const { return is_const() && value() == c; }

    friend bool operator==(const Expr& a, const Expr& b)
    {
        if (a.node_ == b.node_) {
            return true;
        }
        if (a.kind() != b.kind() || a.value() != b.value() || a.index() != b.index() || a.power() != b.power()
            || a.kids().size() != b.kids().size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.kids().size(); ++i) {
            if (!(a.kids()[i] == b.kids()[i])) {
                return false;
            }
        }
        return true;
    }

private:
    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr a, Expr b) { return Expr::binary(Kind::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(Kind::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(Kind::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(Kind::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::unary(Kind::Neg, std::move(a)); }
inline Expr pow(Expr a, unsigned long n) { return Expr::pow(std::move(a), n); }
inline Expr sin(Expr a) { return Expr::unary(Kind::Sin, std::move(a)); }
inline Expr cos(Expr a) { return Expr::unary(Kind::Cos, std::move(a)); }
inline Expr exp(Expr a) { return Expr::unary(Kind::Exp, std::move(a)); }
inline Expr log(Expr a) { return Expr::unary(Kind::Log, std::move(a)); }
inline Expr sqrt(Expr a) { return Expr::unary(Kind::Sqrt, std::move(a)); }

/// Number of variables the expression mentions: 1 + largest index, 0 if none.
inline std::size_t arity(const Expr& e)
{
    if (e.kind() == Kind::Var) {
        return e.index() + 1;
    }
    std::size_t d = 0;
    for (const auto& k : e.kids()) {
        d = std::max(d, arity(k));
    }
    return d;
}

inline void collect_vars(const Expr& e, std::set<std::size_t>& out)
{
    if (e.kind() == Kind::Var) {
        out.insert(e.index());
    }
    for (const auto& k : e.kids()) {
        collect_vars(k, out);
    }
}

inline bool depends_on(const Expr& e, std::size_t var)
{
    if (e.kind() == Kind::Var) {
        return e.index() == var;
    }
    for (const auto& k : e.kids()) {
        if (depends_on(k, var)) {
            return true;
        }
    }
    return false;
}

/// e with variable `var` replaced by `by` (not simplified).
inline Expr substitute(const Expr& e, std::size_t var, const Expr& by)
{
    switch (e.kind()) {
    case Kind::Const: return e;
    case Kind::Var: return e.index() == var ? by : e;
    case Kind::PowInt: return Expr::pow(substitute(e.kid(), var, by), e.power());
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: return Expr::binary(e.kind(), substitute(e.kid(0), var, by), substitute(e.kid(1), var, by));
    default: return Expr::unary(e.kind(), substitute(e.kid(), var, by));
    }
}

// ------------------------------------------------------------ canonical form

namespace detail {

inline Expr fold_unary(Kind k, const Expr& a);
inline Expr fold_pow(const Expr& a, unsigned long n);

inline Expr fold(Kind k, const Expr& a, const Expr& b)
{
    const bool ca = a.is_const(), cb = b.is_const();
    switch (k) {
    case Kind::Add:
        if (ca && cb) return a.value() + b.value();
        if (a.is_const(0)) return b;
        if (b.is_const(0)) return a;
        if (b.kind() == Kind::Neg) return fold(Kind::Sub, a, b.kid());
        if (cb && b.value() < 0) return fold(Kind::Sub, a, Expr(-b.value()));
        break;
    case Kind::Sub:
        if (ca && cb) return a.value() - b.value();
        if (b.is_const(0)) return a;
        if (a.is_const(0)) return fold_unary(Kind::Neg, b);
        if (a == b) return Expr(0);
        if (b.kind() == Kind::Neg) return fold(Kind::Add, a, b.kid());
        if (cb && b.value() < 0) return fold(Kind::Add, a, Expr(-b.value()));
        break;
    case Kind::Mul:
        if (ca && cb) return a.value() * b.value();
        if (a.is_const(0) || b.is_const(0)) return Expr(0);
        if (a.is_const(1)) return b;
        if (b.is_const(1)) return a;
        if (a.is_const(-1)) return fold_unary(Kind::Neg, b);
        if (cb) return fold(Kind::Mul, b, a);
        if (a.kind() == Kind::Neg) {
            return fold_unary(Kind::Neg, fold(Kind::Mul, a.kid(), b));
        }
        if (b.kind() == Kind::Neg) {
            return fold_unary(Kind::Neg, fold(Kind::Mul, a, b.kid()));
        }
        if (ca && b.kind() == Kind::Mul && b.kid(0).is_const()) return fold(Kind::Mul, Expr(a.value() * b.kid(0).value()), b.kid(1));
        if (a == b) return fold_pow(a, 2);
        break;
    case Kind::Div:
        if (cb && b.value().is_zero()) break; // left for evaluation to report
        if (ca && cb) return a.value() / b.value();
        if (b.is_const(1)) return a;
        if (a.is_const(0)) return Expr(0);
        break;
    default:
        break;
    }
    return Expr::binary(k, a, b);
}

inline Expr fold_unary(Kind k, const Expr& a)
{
    switch (k) {
    case Kind::Neg:
        if (a.is_const()) return -a.value();
        if (a.kind() == Kind::Neg) return a.kid();
        if (a.kind() == Kind::Mul && a.kid(0).is_const()) return fold(Kind::Mul, Expr(-a.kid(0).value()), a.kid(1));
        break;
    case Kind::Sin:
        if (a.is_const(0)) return Expr(0);
        break;
    case Kind::Cos:
    case Kind::Exp:
        if (a.is_const(0)) return Expr(1);
        break;
    case Kind::Log:
        if (a.is_const(1)) return Expr(0);
        break;
    case Kind::Sqrt:
        if (a.is_const() && a.value() >= 0) {
            if (auto r = exact_root(a.value(), 2)) {
                return *r;
            }
        }
        break;
    default:
        break;
    }
    return Expr::unary(k, a);
}

inline Expr fold_pow(const Expr& a, unsigned long n)
{
    if (n == 0) return Expr(1);
    if (n == 1) return a;
    if (a.is_const()) return fermat::pow(a.value(), static_cast<long>(n));
    if (a.kind() == Kind::PowInt) return Expr::pow(a.kid(), a.power() * n);
    return Expr::pow(a, n);
}

} // namespace detail

/// Bottom-up rewriting with constant folding and the neutral-element and
/// sign identities; idempotent.
inline Expr simplify(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Const:
    case Kind::Var:
        return e;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
        return detail::fold(e.kind(), simplify(e.kid(0)), simplify(e.kid(1)));
    case Kind::PowInt:
        return detail::fold_pow(simplify(e.kid()), e.power());
    default:
        return detail::fold_unary(e.kind(), simplify(e.kid()));
    }
}

// ------------------------------------------------------------ differentiation

namespace detail {

inline Expr derive(const Expr& e, std::size_t v)
{
    using detail::fold;
    using detail::fold_unary;
    switch (e.kind()) {
    case Kind::Const:
        return Expr(0);
    case Kind::Var:
        return Expr(e.index() == v ? 1 : 0);
    case Kind::Add:
    case Kind::Sub:
        return fold(e.kind(), derive(e.kid(0), v), derive(e.kid(1), v));
    case Kind::Mul:
        return fold(Kind::Add, fold(Kind::Mul, derive(e.kid(0), v), e.kid(1)), fold(Kind::Mul, e.kid(0), derive(e.kid(1), v)));
    case Kind::Div: {
        const Expr& f = e.kid(0);
        const Expr& g = e.kid(1);
        auto df = derive(f, v), dg = derive(g, v);
        if (dg.is_const(0)) {
            return fold(Kind::Div, df, g);
        }
        auto num = fold(Kind::Sub, fold(Kind::Mul, df, g), fold(Kind::Mul, f, dg));
        return fold(Kind::Div, num, fold_pow(g, 2));
    }
    case Kind::Neg:
        return fold_unary(Kind::Neg, derive(e.kid(), v));
    case Kind::PowInt: {
        auto n = e.power();
        auto outer = fold(Kind::Mul, Expr(Rational(static_cast<long>(n))), fold_pow(e.kid(), n - 1));
        return fold(Kind::Mul, outer, derive(e.kid(), v));
    }
    case Kind::Sin:
        return fold(Kind::Mul, fold_unary(Kind::Cos, e.kid()), derive(e.kid(), v));
    case Kind::Cos:
        return fold_unary(Kind::Neg, fold(Kind::Mul, fold_unary(Kind::Sin, e.kid()), derive(e.kid(), v)));
    case Kind::Exp:
        return fold(Kind::Mul, e, derive(e.kid(), v));
    case Kind::Log:
        return fold(Kind::Div, derive(e.kid(), v), e.kid());
    case Kind::Sqrt:
        return fold(Kind::Div, derive(e.kid(), v), fold(Kind::Mul, Expr(2), e));
    }
    return Expr(0);
}

} // namespace detail

/// Symbolic partial derivative with respect to variable `var`, simplified.
inline Expr differentiate(const Expr& f, std::size_t var)
{
    return simplify(detail::derive(simplify(f), var));
}

// ------------------------------------------------------------ printing

namespace detail {

enum Prec { P_ADD = 1, P_MUL = 2, P_NEG = 3, P_POW = 4, P_ATOM = 5 };

inline int precedence(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Const:
        if (e.value().sign() < 0) return e.value().is_integer() ? P_NEG : P_MUL;
        return e.value().is_integer() ? P_ATOM : P_MUL;
    case Kind::Add:
    case Kind::Sub: return P_ADD;
    case Kind::Mul:
    case Kind::Div: return P_MUL;
    case Kind::Neg: return P_NEG;
    case Kind::PowInt: return P_POW;
    default: return P_ATOM;
    }
}

inline std::string var_name(std::size_t i, std::span<const std::string> names, bool single)
{
    if (i < names.size()) return names[i];
    return single ? "x" : "x" + std::to_string(i + 1);
}

inline std::string print(const Expr& e, int min_prec, std::span<const std::string> names, bool single)
{
    std::string s;
    int p = precedence(e);
    switch (e.kind()) {
    case Kind::Const:
        s = e.value().to_string();
        break;
    case Kind::Var:
        s = var_name(e.index(), names, single);
        break;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
        const char* op = e.kind() == Kind::Add ? " + " : e.kind() == Kind::Sub ? " - " : e.kind() == Kind::Mul ? "*" : "/";
        s = print(e.kid(0), p, names, single) + op + print(e.kid(1), p + 1, names, single);
        break;
    }
    case Kind::Neg:
        s = "-" + print(e.kid(), P_NEG, names, single);
        break;
    case Kind::PowInt:
        s = print(e.kid(), P_ATOM, names, single) + "^" + std::to_string(e.power());
        break;
    default:
        s = std::string(to_string(e.kind())) + "(" + print(e.kid(), 0, names, single) + ")";
        break;
    }
    return p < min_prec ? "(" + s + ")" : s;
}

} // namespace detail

/// Infix text with minimal parentheses. Without names, variables print as
/// `x` when the expression has arity <= 1 and as `x1..xd` otherwise.
inline std::string to_string(const Expr& e, std::span<const std::string> names = {})
{
    return detail::print(e, 0, names, arity(e) <= 1);
}

inline std::string to_string(const Expr& e, std::size_t dimension)
{
    std::vector<std::string> names;
    if (dimension > 1) {
        for (std::size_t i = 0; i < dimension; ++i) {
            names.push_back("x" + std::to_string(i + 1));
        }
    }
    return to_string(e, names);
}

} // namespace fermat

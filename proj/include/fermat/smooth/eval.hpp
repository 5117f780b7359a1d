#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "fermat/core/scalar.hpp"
#include "fermat/smooth/expr.hpp"

namespace fermat {

namespace detail {

inline Scalar same_mode(const Scalar& a, const Scalar& b)
{
    return a.mode() == b.mode() ? a : a.in_mode(Mode::approx);
}

inline Scalar eval_at(const Expr& e, std::span<const Scalar> x)
{
    switch (e.kind()) {
    case Kind::Const:
        return e.value();
    case Kind::Var:
        if (e.index() >= x.size()) {
            throw PreconditionError("variable index " + std::to_string(e.index()) + " outside a point of dimension "
                                    + std::to_string(x.size()));
        }
        return x[e.index()];
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
        Scalar a = eval_at(e.kid(0), x), b = eval_at(e.kid(1), x);
        a = same_mode(a, b);
        b = same_mode(b, a);
        switch (e.kind()) {
        case Kind::Add: return a + b;
        case Kind::Sub: return a - b;
        case Kind::Mul: return a * b;
        default:
            if (b.is_zero()) throw EvalError("/", "division by zero");
            return a / b;
        }
    }
    case Kind::Neg:
        return -eval_at(e.kid(), x);
    case Kind::PowInt: {
        Scalar a = eval_at(e.kid(), x);
        if (a.is_exact()) return pow(a.exact(), static_cast<long>(e.power()));
        return Scalar::approx(std::pow(a.to_double(), static_cast<double>(e.power())));
    }
    default:
        break;
    }
    Scalar a = eval_at(e.kid(), x);
    const double v = a.to_double();
    switch (e.kind()) {
    case Kind::Sin:
        if (a.is_exact() && a.is_zero()) return Rational(0);
        return Scalar::approx(std::sin(v));
    case Kind::Cos:
        if (a.is_exact() && a.is_zero()) return Rational(1);
        return Scalar::approx(std::cos(v));
    case Kind::Exp:
        if (a.is_exact() && a.is_zero()) return Rational(1);
        return Scalar::approx(std::exp(v));
    case Kind::Log:
        if (a.sign() <= 0) throw EvalError("log", "argument " + a.to_string() + " is not positive");
        if (a.is_exact() && a.exact() == 1) return Rational(0);
        return Scalar::approx(std::log(v));
    case Kind::Sqrt:
        if (a.sign() < 0) throw EvalError("sqrt", "argument " + a.to_string() + " is negative");
        if (a.is_exact()) {
            if (auto r = exact_root(a.exact(), 2)) return *r;
        }
        return Scalar::approx(std::sqrt(v));
    default:
        break;
    }
    throw PreconditionError("unknown expression kind");
}

} // namespace detail

/// Value of f at a real point: exact while every primitive on the way has an
/// exact value (ring operations on rationals, sin/cos/exp at 0, log at 1,
/// sqrt of rational squares), approximate otherwise.
inline Scalar eval_real(const Expr& f, std::span<const Scalar> x)
{
    return detail::eval_at(f, x);
}

inline Scalar eval_real(const Expr& f, std::initializer_list<Scalar> x)
{
    return eval_real(f, std::span<const Scalar>(x.begin(), x.size()));
}

inline bool is_polynomial(const Expr& e)
{
    switch (e.kind()) {
    case Kind::Const:
    case Kind::Var: return true;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul: return is_polynomial(e.kid(0)) && is_polynomial(e.kid(1));
    case Kind::Div: return is_polynomial(e.kid(0)) && e.kid(1).is_const() && !e.kid(1).value().is_zero();
    case Kind::Neg:
    case Kind::PowInt: return is_polynomial(e.kid());
    default: return false;
    }
}

/// Evaluates a polynomial expression in any commutative ring R that embeds
/// the rationals through `lift`.
template <class R, class Lift>
R eval_ring(const Expr& e, std::span<const R> x, const Lift& lift)
{
    switch (e.kind()) {
    case Kind::Const: return lift(e.value());
    case Kind::Var: return x[e.index()];
    case Kind::Add: return eval_ring(e.kid(0), x, lift) + eval_ring(e.kid(1), x, lift);
    case Kind::Sub: return eval_ring(e.kid(0), x, lift) - eval_ring(e.kid(1), x, lift);
    case Kind::Mul: return eval_ring(e.kid(0), x, lift) * eval_ring(e.kid(1), x, lift);
    case Kind::Div:
        if (!e.kid(1).is_const() || e.kid(1).value().is_zero()) {
            throw PreconditionError("eval_ring: division by a non-constant");
        }
        return eval_ring(e.kid(0), x, lift) * lift(Rational(1) / e.kid(1).value());
    case Kind::Neg: return -eval_ring(e.kid(), x, lift);
    case Kind::PowInt: {
        R base = eval_ring(e.kid(), x, lift);
        R r = lift(Rational(1));
        for (unsigned long i = 0; i < e.power(); ++i) {
            r = r * base;
        }
        return r;
    }
    default:
        throw PreconditionError(std::string("eval_ring: ") + to_string(e.kind()) + " is not a ring operation");
    }
}

/// Expanded multivariate polynomial: exponent vector -> nonzero coefficient.
class Polynomial {
public:
    using Monomial = std::vector<unsigned long>;

    Polynomial() = default;
    Polynomial(const Rational& c)
    {
        if (!c.is_zero()) terms_[{}] = c;
    }

    static Polynomial var(std::size_t i)
    {
        Monomial m(i + 1, 0);
        m[i] = 1;
        Polynomial p;
        p.terms_[m] = Rational(1);
        return p;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) { return a * Polynomial(Rational(-1)); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(std::max(ma.size(), mb.size()), 0);
                for (std::size_t i = 0; i < m.size(); ++i) {
                    m[i] = (i < ma.size() ? ma[i] : 0) + (i < mb.size() ? mb[i] : 0);
                }
                r.add(m, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    std::map<Monomial, Rational> terms_;

    void add(Monomial m, const Rational& c)
    {
        while (!m.empty() && m.back() == 0) m.pop_back();
        auto& slot = terms_[m];
        slot += c;
        if (slot.is_zero()) terms_.erase(m);
    }
};

inline Polynomial to_polynomial(const Expr& e)
{
    if (!is_polynomial(e)) {
        throw PreconditionError("to_polynomial: expression is not polynomial");
    }
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < arity(e); ++i) vars.push_back(Polynomial::var(i));
    return eval_ring<Polynomial>(e, vars, [](const Rational& c) { return Polynomial(c); });
}

} // namespace fermat

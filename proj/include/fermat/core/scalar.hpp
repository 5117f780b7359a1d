#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "fermat/core/errors.hpp"
#include "fermat/core/rational.hpp"

namespace fermat {

enum class Mode { exact, approx };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "approx"; }

/// Relative threshold below which approximate coefficients are pruned to zero.
inline constexpr double approx_epsilon = 1e-12;

/// A coefficient: either an exact rational or a double. The mode is part of
/// the value; binary operations require both operands in the same mode.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}

    static Scalar approx(double d) { Scalar s; s.v_ = d; return s; }

    Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::exact : Mode::approx; }
    bool is_exact() const { return mode() == Mode::exact; }

    const Rational& exact() const
    {
        if (auto p = std::get_if<Rational>(&v_)) {
            return *p;
        }
        throw ModeError("exact value requested from an approximate scalar");
    }

    double to_double() const
    {
        if (auto p = std::get_if<Rational>(&v_)) {
            return p->to_double();
        }
        return std::get<double>(v_);
    }

    /// Same value, converted to the requested mode.
    Scalar in_mode(Mode m) const
    {
        if (m == mode()) {
            return *this;
        }
        if (m == Mode::approx) {
            return approx(to_double());
        }
        throw ModeError("cannot convert an approximate scalar to exact");
    }

    bool is_zero() const { return is_exact() ? exact().is_zero() : std::get<double>(v_) == 0.0; }

    int sign() const
    {
        if (is_exact()) {
            return exact().sign();
        }
        double d = std::get<double>(v_);
        return (d > 0) - (d < 0);
    }

    double magnitude() const { return std::fabs(to_double()); }

    std::string to_string() const
    {
        if (is_exact()) {
            return exact().to_string();
        }
        return Rational::approximate(std::get<double>(v_)).to_string();
    }

    Scalar operator-() const
    {
        if (is_exact()) {
            return Scalar(-exact());
        }
        return approx(-std::get<double>(v_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        check(a, b, "+");
        return a.is_exact() ? Scalar(a.exact() + b.exact()) : approx(a.to_double() + b.to_double());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b)
    {
        check(a, b, "-");
        return a.is_exact() ? Scalar(a.exact() - b.exact()) : approx(a.to_double() - b.to_double());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        check(a, b, "*");
        return a.is_exact() ? Scalar(a.exact() * b.exact()) : approx(a.to_double() * b.to_double());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b)
    {
        check(a, b, "/");
        if (b.is_zero()) {
            throw DomainError("scalar division by zero");
        }
        return a.is_exact() ? Scalar(a.exact() / b.exact()) : approx(a.to_double() / b.to_double());
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Exact equality; approximate scalars compare bitwise.
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

    /// -1, 0, +1; approximate values are compared with a relative tolerance.
    friend int compare(const Scalar& a, const Scalar& b)
    {
        check(a, b, "compare");
        if (a.is_exact()) {
            auto c = a.exact() <=> b.exact();
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        double x = a.to_double(), y = b.to_double();
        if (std::fabs(x - y) <= approx_epsilon * (1.0 + std::fabs(x) + std::fabs(y))) {
            return 0;
        }
        return x < y ? -1 : 1;
    }

    friend Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

private:
    static void check(const Scalar& a, const Scalar& b, const char* op)
    {
        if (a.mode() != b.mode()) {
            throw ModeError(std::string("mixed exact/approx operands in '") + op + "'");
        }
    }

    std::variant<Rational, double> v_;
};

} // namespace fermat

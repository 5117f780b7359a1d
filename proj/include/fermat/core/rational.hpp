#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fermat/core/errors.hpp"

namespace fermat {

/// Exact arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(long long n) : q_(static_cast<long>(n)) {}
    Rational(unsigned long n) : q_(n) {}
    Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}

    Rational(const mpz_class& n, const mpz_class& d)
    {
        if (d == 0) {
            throw DomainError("rational with zero denominator");
        }
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }

    explicit Rational(const mpz_class& n) : q_(n) {}

    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts "p", "-p/q" and finite decimals such as "0.25" or "-1.5".
    static Rational parse(std::string_view text)
    {
        auto fail = [&] { return DomainError("malformed rational literal '" + std::string(text) + "'"); };
        if (text.empty()) {
            throw fail();
        }
        auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            mpz_class n, d;
            if (n.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
                d.set_str(std::string(text.substr(slash + 1)), 10) != 0) {
                throw fail();
            }
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot != std::string_view::npos) {
            std::string digits(text.substr(0, dot));
            std::string frac(text.substr(dot + 1));
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
                throw fail();
            }
            bool negative = !digits.empty() && digits[0] == '-';
            if (digits.empty() || digits == "-" || digits == "+") {
                digits += "0";
            }
            mpz_class whole, part;
            if (whole.set_str(digits, 10) != 0 || part.set_str(frac, 10) != 0) {
                throw fail();
            }
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            mpz_class magnitude = abs(whole) * scale + part;
            return Rational(negative ? mpz_class(-magnitude) : magnitude, scale);
        }
        mpz_class n;
        if (n.set_str(std::string(text), 10) != 0) {
            throw fail();
        }
        return Rational(n);
    }

    /// Best rational approximation of x with denominator at most max_den
    /// (continued-fraction convergents and semiconvergents).
    static Rational approximate(double x, long max_den = 1000000)
    {
        if (!std::isfinite(x)) {
            throw DomainError("cannot approximate a non-finite value");
        }
        bool negative = x < 0;
        double v = std::fabs(x);
        mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double r = v;
        for (int iter = 0; iter < 64; ++iter) {
            double a_d = std::floor(r);
            mpz_class a(a_d);
            mpz_class q2 = a * q1 + q0;
            if (q2 > max_den) {
                mpz_class k = (mpz_class(max_den) - q0) / q1;
                mpz_class ps = k * p1 + p0, qs = k * q1 + q0;
                Rational semi(ps, qs), conv(p1, q1);
                Rational target{mpq_class(v)};
                Rational best = (abs(semi - target) < abs(conv - target)) ? semi : conv;
                return negative ? -best : best;
            }
            mpz_class p2 = a * p1 + p0;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            double f = r - a_d;
            if (f < 1e-15 || std::fabs(v - p1.get_d() / q1.get_d()) < 1e-16 * std::max(1.0, v)) {
                break;
            }
            r = 1.0 / f;
        }
        Rational result(p1, q1);
        return negative ? -result : result;
    }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    mpz_class floor() const
    {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    double to_double() const { return q_.get_d(); }

    long double to_long_double() const
    {
        // mpq_get_d truncates to double; split for a little more headroom.
        long double hi = q_.get_d();
        mpq_class rest = q_ - mpq_class(static_cast<double>(hi));
        return hi + static_cast<long double>(rest.get_d());
    }

    std::string to_string() const
    {
        if (q_.get_den() == 1) {
            return q_.get_num().get_str();
        }
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) {
            throw DomainError("rational division by zero");
        }
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_;
};

/// r^k for integer k (negative k inverts; 0^0 = 1).
inline Rational pow(const Rational& r, long k)
{
    if (k < 0) {
        if (r.is_zero()) {
            throw DomainError("zero raised to a negative power");
        }
        return pow(Rational(r.den(), r.num()), -k);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(n, d);
}

/// Exact k-th root when r is a perfect k-th power of a rational.
inline std::optional<Rational> exact_root(const Rational& r, unsigned long k)
{
    if (k == 0) {
        throw DomainError("zeroth root");
    }
    if (r.sign() < 0 && k % 2 == 0) {
        return std::nullopt;
    }
    mpz_class n, d;
    if (mpz_root(n.get_mpz_t(), r.num().get_mpz_t(), k) == 0) {
        return std::nullopt;
    }
    if (mpz_root(d.get_mpz_t(), r.den().get_mpz_t(), k) == 0) {
        return std::nullopt;
    }
    return Rational(n, d);
}

/// base^exponent for positive base when the result is rational.
inline std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent)
{
    if (base.sign() < 0) {
        throw DomainError("fractional power of a negative rational");
    }
    if (base.is_zero()) {
        if (exponent.sign() <= 0) {
            throw DomainError("zero raised to a non-positive power");
        }
        return Rational(0);
    }
    if (!exponent.den().fits_ulong_p() || !exponent.num().fits_slong_p()) {
        throw DomainError("exponent too large");
    }
    auto root = exact_root(base, exponent.den().get_ui());
    if (!root) {
        return std::nullopt;
    }
    return pow(*root, exponent.num().get_si());
}

inline long double approx_pow(const Rational& base, const Rational& exponent)
{
    return std::pow(base.to_long_double(), exponent.to_long_double());
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b)
{
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace fermat

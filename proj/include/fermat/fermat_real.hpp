#pragma once

// The ring of Fermat reals: a standard part plus finitely many nilpotent
// infinitesimal terms c*dt_w, where dt_w is the class of (1/n)^(1/w).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fermat/core/errors.hpp"
#include "fermat/core/rational.hpp"
#include "fermat/core/scalar.hpp"

namespace fermat {

/// One summand coef * dt_order of the decomposition.
struct Term {
    Scalar coef;
    Rational order;

    friend bool operator==(const Term&, const Term&) = default;
};

class FermatReal;

namespace detail {

// Collects standard and infinitesimal contributions, merges equal orders and
// prunes zeros. Approximate sums whose magnitude is below approx_epsilon
// relative to the contributions that produced them are treated as zero.
class TermAccumulator {
public:
    explicit TermAccumulator(Mode mode) : mode_(mode), std_(zero(mode)) {}

    void add_std(const Scalar& c)
    {
        std_ += c;
        std_mag_ += c.magnitude();
    }

    void add(const Rational& order, const Scalar& c)
    {
        if (order < 1 || c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(order, zero(mode_), 0.0);
        it->second.first += c;
        it->second.second += c.magnitude();
    }

    FermatReal finish() &&;

private:
    static Scalar zero(Mode m) { return m == Mode::exact ? Scalar(0) : Scalar::approx(0.0); }

    bool negligible(const Scalar& s, double mag) const
    {
        if (s.is_zero()) {
            return true;
        }
        return mode_ == Mode::approx && s.magnitude() <= approx_epsilon * (1.0 + mag);
    }

    Mode mode_;
    Scalar std_;
    double std_mag_ = 0.0;
    std::map<Rational, std::pair<Scalar, double>, std::greater<>> terms_;
};

} // namespace detail

/// Canonical decomposition st + sum_i c_i * dt_{w_i}, orders strictly
/// decreasing, every order >= 1, every coefficient nonzero.
class FermatReal {
public:
    FermatReal() = default;
    FermatReal(Scalar s) : std_(std::move(s)) {}
    FermatReal(Rational r) : std_(std::move(r)) {}
    FermatReal(int n) : std_(Rational(n)) {}
    FermatReal(long n) : std_(Rational(n)) {}

    static FermatReal zero(Mode m = Mode::exact) { return m == Mode::exact ? FermatReal() : FermatReal(Scalar::approx(0.0)); }

    /// dt_a; zero for a < 1.
    static FermatReal dt(const Rational& a, Mode m = Mode::exact)
    {
        if (a.sign() <= 0) {
            throw DomainError("dt: order must be positive, got " + a.to_string());
        }
        FermatReal x = zero(m);
        if (a >= 1) {
            x.terms_.push_back({m == Mode::exact ? Scalar(1) : Scalar::approx(1.0), a});
        }
        return x;
    }

    /// Builds the canonical form from arbitrary (coefficient, order) pairs.
    static FermatReal from_terms(const Scalar& st, std::span<const Term> terms)
    {
        detail::TermAccumulator acc(st.mode());
        acc.add_std(st);
        for (const auto& t : terms) {
            if (t.order.sign() <= 0) {
                throw DomainError("order must be positive, got " + t.order.to_string());
            }
            if (t.coef.mode() != st.mode()) {
                throw ModeError("mixed exact/approx coefficients in one Fermat real");
            }
            acc.add(t.order, t.coef);
        }
        return std::move(acc).finish();
    }

    static FermatReal from_terms(const Scalar& st, std::initializer_list<Term> terms)
    {
        return from_terms(st, std::span<const Term>(terms.begin(), terms.size()));
    }

    Mode mode() const { return std_.mode(); }

    /// Same number with every coefficient converted to the given mode.
    FermatReal in_mode(Mode m) const
    {
        if (m == mode()) {
            return *this;
        }
        FermatReal r(std_.in_mode(m));
        for (const auto& t : terms_) {
            r.terms_.push_back({t.coef.in_mode(m), t.order});
        }
        return r;
    }

    const Scalar& st() const { return std_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t n_terms() const { return terms_.size(); }

    std::vector<Scalar> std_parts() const
    {
        std::vector<Scalar> out;
        for (const auto& t : terms_) {
            out.push_back(t.coef);
        }
        return out;
    }

    std::vector<Rational> orders() const
    {
        std::vector<Rational> out;
        for (const auto& t : terms_) {
            out.push_back(t.order);
        }
        return out;
    }

    /// Order of the leading infinitesimal; undefined for standard reals.
    const Rational& order() const
    {
        if (terms_.empty()) {
            throw PartialityError("order of a standard real is undefined");
        }
        return terms_.front().order;
    }

    bool is_zero() const { return std_.is_zero() && terms_.empty(); }
    bool is_real() const { return terms_.empty(); }
    bool is_infinitesimal() const { return std_.is_zero(); }
    bool is_invertible() const { return !std_.is_zero(); }

    /// Membership in the ideal D_a = { st = 0, order < a + 1 }.
    bool in_ideal(const Rational& a) const
    {
        return is_infinitesimal() && (terms_.empty() || order() < a + 1);
    }

    /// Membership in D_infinity, i.e. all infinitesimals.
    bool in_ideal_infinity() const { return is_infinitesimal(); }

    /// Infinitesimal part x - st(x).
    FermatReal infinitesimal_part() const
    {
        FermatReal r = zero(mode());
        r.terms_ = terms_;
        return r;
    }

    /// Coefficient of dt_w, zero if absent.
    Scalar coefficient(const Rational& w) const
    {
        for (const auto& t : terms_) {
            if (t.order == w) {
                return t.coef;
            }
        }
        return mode() == Mode::exact ? Scalar(0) : Scalar::approx(0.0);
    }

    FermatReal operator-() const
    {
        FermatReal r(-std_);
        for (const auto& t : terms_) {
            r.terms_.push_back({-t.coef, t.order});
        }
        return r;
    }

    friend FermatReal operator+(const FermatReal& x, const FermatReal& y)
    {
        check_modes(x, y, "+");
        detail::TermAccumulator acc(x.mode());
        acc.add_std(x.std_);
        acc.add_std(y.std_);
        for (const auto& t : x.terms_) acc.add(t.order, t.coef);
        for (const auto& t : y.terms_) acc.add(t.order, t.coef);
        return std::move(acc).finish();
    }

    friend FermatReal operator-(const FermatReal& x, const FermatReal& y) { return x + (-y); }

    /// dt_a * dt_b = dt_{ab/(a+b)}; products of order below 1 vanish.
    friend FermatReal operator*(const FermatReal& x, const FermatReal& y)
    {
        check_modes(x, y, "*");
        detail::TermAccumulator acc(x.mode());
        acc.add_std(x.std_ * y.std_);
        if (!y.std_.is_zero()) {
            for (const auto& t : x.terms_) acc.add(t.order, t.coef * y.std_);
        }
        if (!x.std_.is_zero()) {
            for (const auto& t : y.terms_) acc.add(t.order, x.std_ * t.coef);
        }
        for (const auto& a : x.terms_) {
            for (const auto& b : y.terms_) {
                Rational w = a.order * b.order / (a.order + b.order);
                if (w < 1) {
                    break; // orders of y decrease, so the rest vanish too
                }
                acc.add(w, a.coef * b.coef);
            }
        }
        return std::move(acc).finish();
    }

    friend FermatReal operator/(const FermatReal& x, const FermatReal& y) { return x * invert(y); }

    FermatReal& operator+=(const FermatReal& o) { return *this = *this + o; }
    FermatReal& operator-=(const FermatReal& o) { return *this = *this - o; }
    FermatReal& operator*=(const FermatReal& o) { return *this = *this * o; }

    /// 1/y via the finite geometric series in the nilpotent part.
    friend FermatReal invert(const FermatReal& y)
    {
        if (!y.is_invertible()) {
            throw NotInvertible("not invertible: standard part is zero");
        }
        FermatReal r_inv(one(y.mode()).std_ / y.std_);
        if (y.is_real()) {
            return r_inv;
        }
        FermatReal q = -(y.infinitesimal_part() * r_inv);
        mpz_class n = y.order().floor();
        FermatReal sum = one(y.mode());
        FermatReal power = one(y.mode());
        for (mpz_class m = 1; m <= n; ++m) {
            power = power * q;
            if (power.is_zero()) {
                break;
            }
            sum = sum + power;
        }
        return r_inv * sum;
    }

    /// Canonical-form equality (exact in exact mode).
    friend bool operator==(const FermatReal& x, const FermatReal& y)
    {
        return x.std_ == y.std_ && x.terms_ == y.terms_;
    }

    /// Total order: standard parts first, then the sign of the leading
    /// coefficient of the difference.
    friend int compare(const FermatReal& x, const FermatReal& y)
    {
        check_modes(x, y, "compare");
        int c = compare(x.std_, y.std_);
        if (c != 0) {
            return c;
        }
        FermatReal d = x.infinitesimal_part() - y.infinitesimal_part();
        if (d.terms_.empty()) {
            return 0;
        }
        return d.terms_.front().coef.sign();
    }

    friend std::weak_ordering operator<=>(const FermatReal& x, const FermatReal& y)
    {
        int c = compare(x, y);
        return c < 0 ? std::weak_ordering::less : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
    }

    friend FermatReal fabs(const FermatReal& x) { return compare(x, zero(x.mode())) < 0 ? -x : x; }

private:
    friend class detail::TermAccumulator;

    static FermatReal one(Mode m) { return m == Mode::exact ? FermatReal(1) : FermatReal(Scalar::approx(1.0)); }

    static void check_modes(const FermatReal& x, const FermatReal& y, const char* op)
    {
        if (x.mode() != y.mode()) {
            throw ModeError(std::string("mixed exact/approx Fermat reals in '") + op + "'");
        }
    }

    Scalar std_;
    std::vector<Term> terms_;
};

inline FermatReal detail::TermAccumulator::finish() &&
{
    FermatReal r(negligible(std_, std_mag_) ? zero(mode_) : std_);
    for (auto& [order, entry] : terms_) {
        if (!negligible(entry.first, entry.second)) {
            r.terms_.push_back({std::move(entry.first), order});
        }
    }
    return r;
}

/// x^k by repeated squaring; x^0 = 1.
inline FermatReal pow(const FermatReal& x, unsigned long k)
{
    FermatReal result = x.mode() == Mode::exact ? FermatReal(1) : FermatReal(Scalar::approx(1.0));
    FermatReal base = x;
    while (k > 0) {
        if (k & 1UL) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
            if (base.is_zero()) {
                return FermatReal::zero(x.mode());
            }
        }
    }
    return result;
}

/// (dt_a)^p = dt_{a/p} for rational p >= 1.
inline FermatReal term_pow(const Rational& a, const Rational& p)
{
    if (a.sign() <= 0) {
        throw DomainError("term_pow: order must be positive");
    }
    if (p < 1) {
        throw DomainError("term_pow: exponent must be >= 1, got " + p.to_string());
    }
    return FermatReal::dt(a / p);
}

/// Decides x^k == 0 from the decomposition alone: st x = 0 and order < k.
inline bool nilpotent_power_is_zero(const FermatReal& x, unsigned long k)
{
    if (k <= 1) {
        throw PreconditionError("nilpotent_power_is_zero: k must exceed 1");
    }
    if (x.is_zero()) {
        return true;
    }
    return x.is_infinitesimal() && x.order() < Rational(static_cast<long>(k));
}

struct PowerProductVerdict {
    bool is_zero;
    /// Order of the nonzero product; empty when every exponent is zero.
    std::optional<Rational> order;
};

/// Decides h_1^{i_1} * ... * h_n^{i_n} == 0 for nonzero infinitesimals:
/// zero iff sum_k i_k / order(h_k) > 1, otherwise the product has order
/// 1 / that sum.
inline PowerProductVerdict power_product_decision(std::span<const FermatReal> hs, std::span<const unsigned long> exps)
{
    if (hs.size() != exps.size()) {
        throw PreconditionError("power_product_decision: length mismatch");
    }
    Rational sum = 0;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (!hs[k].is_infinitesimal() || hs[k].is_zero()) {
            throw DomainError("power_product_decision: factors must be nonzero infinitesimals");
        }
        sum += Rational(exps[k]) / hs[k].order();
    }
    if (sum > 1) {
        return {true, std::nullopt};
    }
    if (sum.is_zero()) {
        return {false, std::nullopt};
    }
    return {false, Rational(1) / sum};
}

/// d(x, y) = |st x - st y|.
inline Scalar pseudo_distance(const FermatReal& x, const FermatReal& y)
{
    return abs(x.st() - y.st());
}

/// Decomposition text: "2 + 3*dt_2 - 1/3*dt", "dt_3 + 2*dt_2 + 1/2*dt_6/5".
inline std::string to_string(const FermatReal& x)
{
    std::string out;
    bool first = true;
    if (!x.st().is_zero() || x.terms().empty()) {
        out = x.st().to_string();
        first = false;
    }
    for (const auto& t : x.terms()) {
        bool negative = t.coef.sign() < 0;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        Scalar mag = abs(t.coef);
        bool unit = mag.is_exact() ? mag.exact() == 1 : mag.to_string() == "1";
        if (!unit) {
            out += mag.to_string() + "*";
        }
        out += t.order == 1 ? std::string("dt") : "dt_" + t.order.to_string();
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const FermatReal& x) { return os << to_string(x); }

} // namespace fermat

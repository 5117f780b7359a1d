#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/core/rational.hpp"
#include "fermat/hyper/ep_set.hpp"

namespace fermat {

struct PowerTerm {
    Rational alpha; // nonzero
    Rational q;     // > 0

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Largest index below which a sign threshold is resolved term by term.
inline constexpr std::size_t sign_threshold_limit = std::size_t{1} << 20;

/// Generalized power sum n -> c + sum_i alpha_i * (n+1)^(-q_i), exponents
/// strictly increasing. Converges to c.
class PowerSum {
public:
    PowerSum() = default;
    PowerSum(Rational c) : c_(std::move(c)) {}
    PowerSum(int c) : c_(c) {}
    PowerSum(long c) : c_(c) {}

    static PowerSum from(Rational c, std::vector<PowerTerm> terms)
    {
        std::map<Rational, Rational> acc;
        for (auto& t : terms) {
            if (t.q <= 0) throw DomainError("power sum exponent must be positive, got " + t.q.to_string());
            acc[t.q] += t.alpha;
        }
        PowerSum p(std::move(c));
        for (auto& [q, a] : acc) {
            if (!a.is_zero()) p.terms_.push_back({a, q});
        }
        return p;
    }

    /// alpha * (n+1)^(-q)
    static PowerSum term(Rational alpha, Rational q) { return from(Rational(0), {{std::move(alpha), std::move(q)}}); }

    const Rational& limit() const { return c_; }
    const std::vector<PowerTerm>& terms() const { return terms_; }
    bool is_zero() const { return c_.is_zero() && terms_.empty(); }
    bool is_constant() const { return terms_.empty(); }

    /// Leading (coefficient, exponent): the constant with exponent 0 when it is
    /// nonzero, else the first term. Empty for the zero sequence.
    std::optional<PowerTerm> leading() const
    {
        if (!c_.is_zero()) return PowerTerm{c_, Rational(0)};
        if (!terms_.empty()) return terms_.front();
        return std::nullopt;
    }

    friend PowerSum operator+(const PowerSum& a, const PowerSum& b)
    {
        std::vector<PowerTerm> t = a.terms_;
        t.insert(t.end(), b.terms_.begin(), b.terms_.end());
        return from(a.c_ + b.c_, std::move(t));
    }
    friend PowerSum operator-(const PowerSum& a) { return a.scaled(Rational(-1)); }
    friend PowerSum operator-(const PowerSum& a, const PowerSum& b) { return a + (-b); }
    friend PowerSum operator*(const PowerSum& a, const PowerSum& b)
    {
        std::vector<PowerTerm> t;
        for (const auto& x : a.terms_) {
            if (!b.c_.is_zero()) t.push_back({x.alpha * b.c_, x.q});
            for (const auto& y : b.terms_) t.push_back({x.alpha * y.alpha, x.q + y.q});
        }
        if (!a.c_.is_zero()) {
            for (const auto& y : b.terms_) t.push_back({a.c_ * y.alpha, y.q});
        }
        return from(a.c_ * b.c_, std::move(t));
    }
    friend bool operator==(const PowerSum&, const PowerSum&) = default;

    PowerSum scaled(const Rational& k) const
    {
        std::vector<PowerTerm> t;
        for (const auto& x : terms_) t.push_back({x.alpha * k, x.q});
        return from(c_ * k, std::move(t));
    }

    /// Exact value when every (n+1)^(-q) is rational.
    std::optional<Rational> value_exact(std::size_t n) const
    {
        Rational v = c_;
        Rational t(static_cast<unsigned long>(n + 1));
        for (const auto& x : terms_) {
            auto p = exact_pow(t, -x.q);
            if (!p) return std::nullopt;
            v += x.alpha * *p;
        }
        return v;
    }

    long double value_approx(std::size_t n) const
    {
        long double v = c_.to_long_double();
        Rational t(static_cast<unsigned long>(n + 1));
        for (const auto& x : terms_) v += x.alpha.to_long_double() * approx_pow(t, -x.q);
        return v;
    }

    /// Sign of the value at index n. Decided in long double when the margin
    /// is safe, else exactly or by interval bisection on (n+1)^(-1/L).
    int sign_at(std::size_t n) const
    {
        if (terms_.empty()) return c_.sign();
        long double sum = c_.to_long_double(), mag = std::fabs(sum);
        Rational t(static_cast<unsigned long>(n + 1));
        for (const auto& x : terms_) {
            long double v = x.alpha.to_long_double() * approx_pow(t, -x.q);
            sum += v;
            mag += std::fabs(v);
        }
        if (std::fabs(sum) > 1e-15L * mag) return sum > 0 ? 1 : -1;
        if (auto v = value_exact(n)) return v->sign();
        return sign_by_bisection(n);
    }

    int eventual_sign() const
    {
        auto l = leading();
        return l ? l->alpha.sign() : 0;
    }

    /// Index N1 from which on every value has the eventual sign. With
    /// u = (n+1)^(-1/L) the tail is beta0 u^k0 (1 + sum beta_i/beta0 u^(k_i-k0));
    /// a rational t with sum |beta_i| t^(k_i-k0) < |beta0| certifies every
    /// u <= t, found by bisection.
    std::size_t sign_threshold() const
    {
        std::vector<PowerTerm> all;
        if (!c_.is_zero()) all.push_back({c_, Rational(0)});
        all.insert(all.end(), terms_.begin(), terms_.end());
        if (all.size() <= 1) return 0;
        mpz_class l = 1;
        for (const auto& x : terms_) l = lcm(l, x.q.den());
        const Rational lead = abs(all[0].alpha);
        auto h = [&](const Rational& t) {
            Rational v = 0;
            for (std::size_t i = 1; i < all.size(); ++i) {
                v += abs(all[i].alpha) * pow(t, ((all[i].q - all[0].q) * Rational(l)).num().get_si());
            }
            return v;
        };
        if (h(Rational(1)) < lead) return 0;
        Rational lo = 0, hi = 1; // h(lo) < lead <= h(hi)
        for (int iter = 0; iter < 64; ++iter) {
            Rational mid = (lo + hi) / 2;
            (h(mid) < lead ? lo : hi) = mid;
            if (lo > 0 && hi / lo < Rational(1001, 1000)) break;
        }
        if (lo.is_zero()) throw PreconditionError("power sum sign threshold exceeds " + std::to_string(sign_threshold_limit));
        // least n with (n+1)^(-1/L) <= lo, i.e. n+1 >= lo^(-L)
        Rational bound = pow(Rational(1) / lo, l.get_si());
        mpz_class n1 = bound.floor();
        if (Rational(n1) == bound) n1 -= 1;
        if (n1 > sign_threshold_limit) {
            throw PreconditionError("power sum sign threshold exceeds " + std::to_string(sign_threshold_limit));
        }
        return n1.get_ui();
    }

    /// {n : keep(sign of the value at n)}
    EpSet sign_set(const std::function<bool(int)>& keep) const
    {
        std::size_t n1 = sign_threshold();
        std::vector<bool> prefix(n1);
        for (std::size_t n = 0; n < n1; ++n) prefix[n] = keep(sign_at(n));
        return EpSet(n1, prefix, {keep(eventual_sign())});
    }

    /// sign_set up to finitely many indices: all or nothing.
    EpSet eventual_sign_set(const std::function<bool(int)>& keep) const
    {
        return keep(eventual_sign()) ? EpSet::all() : EpSet::empty();
    }

    EpSet sign_set(const std::function<bool(int)>& keep, bool exact) const
    {
        return exact ? sign_set(keep) : eventual_sign_set(keep);
    }

    std::string to_string() const;
    static PowerSum parse(std::string_view text);

private:
    Rational c_;
    std::vector<PowerTerm> terms_;

    int sign_by_bisection(std::size_t n) const
    {
        mpz_class l = 1;
        for (const auto& x : terms_) l = lcm(l, x.q.den());
        const unsigned long L = l.get_ui();
        const Rational target(mpz_class(1), mpz_class(static_cast<unsigned long>(n + 1))); // u^L
        auto below = [&](const Rational& u) { return pow(u, static_cast<long>(L)) <= target; };
        long double u0 = std::pow(static_cast<long double>(n + 1), -1.0L / static_cast<long double>(L));
        Rational lo{mpq_class(static_cast<double>(u0 * (1 - 1e-12L)))};
        Rational hi{mpq_class(static_cast<double>(u0 * (1 + 1e-12L)))};
        if (!below(lo) || below(hi)) {
            lo = 0;
            hi = 1;
        }
        for (int iter = 0; iter < 200; ++iter) {
            Rational glo = c_, ghi = c_;
            for (const auto& x : terms_) {
                long k = (x.q * Rational(l)).num().get_si();
                Rational a = x.alpha * pow(lo, k), b = x.alpha * pow(hi, k);
                glo += std::min(a, b);
                ghi += std::max(a, b);
            }
            if (glo > 0) return 1;
            if (ghi < 0) return -1;
            Rational mid = (lo + hi) / 2;
            (below(mid) ? lo : hi) = mid;
        }
        return 0;
    }
};

namespace detail {

inline std::string rational_atom(const Rational& r)
{
    return r.is_integer() ? r.to_string() : "(" + r.to_string() + ")";
}

} // namespace detail

/// `2 + 1/(n+1) - (1/3)/(n+1)^(3/2)`
inline std::string PowerSum::to_string() const
{
    std::string s;
    if (!c_.is_zero() || terms_.empty()) s = c_.is_integer() ? c_.to_string() : detail::rational_atom(c_);
    for (const auto& x : terms_) {
        Rational a = x.alpha;
        if (s.empty()) {
            if (a < 0) {
                s = "-";
                a = -a;
            }
        } else {
            s += a < 0 ? " - " : " + ";
            a = abs(a);
        }
        s += detail::rational_atom(a) + "/(n+1)";
        if (x.q != 1) s += "^" + detail::rational_atom(x.q);
    }
    return s;
}

/// Reads the form written by to_string: a sum of rational constants and
/// terms `a/(n+1)` or `a/(n+1)^q`, where a and q are integers or
/// parenthesized fractions.
inline PowerSum PowerSum::parse(std::string_view text)
{
    std::string t;
    std::vector<std::size_t> col;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != ' ' && text[i] != '\t') {
            t += text[i];
            col.push_back(i + 1);
        }
    }
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> PowerSum {
        throw ParseError(what, pos < col.size() ? col[pos] : text.size() + 1);
    };
    auto atom = [&]() -> Rational {
        std::size_t start = pos;
        bool paren = pos < t.size() && t[pos] == '(';
        if (paren) ++pos;
        std::size_t body = pos;
        while (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '.' || (paren && (t[pos] == '/' || t[pos] == '-')))) {
            ++pos;
        }
        if (body == pos) {
            pos = start;
            fail("expected a number");
        }
        Rational r;
        try {
            r = Rational::parse(t.substr(body, pos - body));
        } catch (const DomainError&) {
            pos = body;
            fail("malformed number");
        }
        if (paren) {
            if (pos >= t.size() || t[pos] != ')') fail("expected ')'");
            ++pos;
        }
        return r;
    };
    if (t.empty()) return fail("empty power sum");
    Rational c = 0;
    std::vector<PowerTerm> terms;
    bool first = true;
    while (pos < t.size()) {
        int sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        first = false;
        Rational a = atom() * Rational(sign);
        if (t.compare(pos, 6, "/(n+1)") == 0) {
            pos += 6;
            Rational q = 1;
            if (pos < t.size() && t[pos] == '^') {
                ++pos;
                q = atom();
            }
            if (q <= 0) return fail("exponent must be positive");
            terms.push_back({a, q});
        } else {
            c += a;
        }
    }
    return from(c, std::move(terms));
}

inline std::ostream& operator<<(std::ostream& os, const PowerSum& p) { return os << p.to_string(); }

} // namespace fermat

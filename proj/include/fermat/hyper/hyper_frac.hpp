#pragma once

#include <optional>
#include <string>

#include "fermat/hyper/star.hpp"

namespace fermat {

/// Quotient [u]/[v] in the field of fractions; v is nonzero under the oracle
/// that built it.
class HyperFrac {
public:
    static HyperFrac make(FilterOracle& o, Hyper num, Hyper den)
    {
        if (hyper_eq(o, den, Hyper(0))) throw DivisionByZero("denominator " + den.to_string() + " is zero under the oracle");
        return HyperFrac(std::move(num), std::move(den));
    }

    HyperFrac(Hyper x) : num_(std::move(x)), den_(1) {}

    const Hyper& num() const { return num_; }
    const Hyper& den() const { return den_; }

    // products of oracle-nonzero elements stay nonzero: the ring is a domain
    friend HyperFrac operator+(const HyperFrac& a, const HyperFrac& b)
    {
        return HyperFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend HyperFrac operator-(const HyperFrac& a) { return HyperFrac(-a.num_, a.den_); }
    friend HyperFrac operator-(const HyperFrac& a, const HyperFrac& b) { return a + (-b); }
    friend HyperFrac operator*(const HyperFrac& a, const HyperFrac& b) { return HyperFrac(a.num_ * b.num_, a.den_ * b.den_); }

    std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

private:
    Hyper num_, den_;

    HyperFrac(Hyper n, Hyper d) : num_(std::move(n)), den_(std::move(d)) {}

    friend HyperFrac frac_div(FilterOracle& o, const HyperFrac& a, const HyperFrac& b);
};

inline std::ostream& operator<<(std::ostream& os, const HyperFrac& x) { return os << x.to_string(); }

inline HyperFrac frac_div(FilterOracle& o, const HyperFrac& a, const HyperFrac& b)
{
    if (hyper_eq(o, b.num_, Hyper(0))) throw DivisionByZero("divisor " + b.to_string() + " is zero under the oracle");
    return HyperFrac(a.num_ * b.den_, a.den_ * b.num_);
}

inline bool frac_eq(FilterOracle& o, const HyperFrac& a, const HyperFrac& b)
{
    return hyper_eq(o, a.num() * b.den(), b.num() * a.den());
}

namespace detail {

/// Walks the common refinement of numerator and denominator branches.
template <class F>
void for_each_frac_branch(const HyperFrac& x, F f)
{
    for (const auto& a : x.num().rep().branches()) {
        for (const auto& b : x.den().rep().branches()) {
            EpSet s = a.where & b.where;
            if (!s.is_empty()) f(s, a.seq, b.seq);
        }
    }
}

/// lim u_n / v_n by leading terms; empty when it diverges.
inline std::optional<Rational> ratio_limit(const PowerSum& u, const PowerSum& v)
{
    auto lu = u.leading(), lv = v.leading();
    if (!lu) return Rational(0);
    if (lu->q > lv->q) return Rational(0);
    if (lu->q == lv->q) return lu->alpha / lv->alpha;
    return std::nullopt;
}

} // namespace detail

/// lim u_n / v_n when it exists and is finite. Branches where v vanishes
/// identically carry no quotient and are skipped.
inline std::optional<Rational> frac_st(const HyperFrac& x)
{
    std::optional<Rational> out;
    bool diverges = false, split = false;
    detail::for_each_frac_branch(x, [&](const EpSet& s, const PowerSum& u, const PowerSum& v) {
        if (!s.is_infinite() || v.is_zero()) return;
        auto l = detail::ratio_limit(u, v);
        if (!l) {
            diverges = true;
        } else if (out && *out != *l) {
            split = true;
        } else {
            out = l;
        }
    });
    if (diverges || split) return std::nullopt;
    return out;
}

/// Standard part relative to the oracle: branch limits may differ, and
/// the one on a dominant set of indices wins. Empty when that set diverges.
inline std::optional<Rational> frac_st(FilterOracle& o, const HyperFrac& x)
{
    std::vector<std::pair<std::optional<Rational>, EpSet>> groups;
    detail::for_each_frac_branch(x, [&](const EpSet& s, const PowerSum& u, const PowerSum& v) {
        if (v.is_zero()) return;
        auto l = detail::ratio_limit(u, v);
        for (auto& g : groups) {
            if (g.first == l) {
                g.second = g.second | s;
                return;
            }
        }
        groups.emplace_back(l, s);
    });
    for (const auto& [l, s] : groups) {
        if (o.dominant(s)) return l;
    }
    return std::nullopt;
}

/// |x| exceeds every standard N: the branches where the leading exponent
/// of u is below that of v form a dominant set.
inline bool is_infinite_frac(FilterOracle& o, const HyperFrac& x)
{
    EpSet big;
    detail::for_each_frac_branch(x, [&](const EpSet& s, const PowerSum& u, const PowerSum& v) {
        if (v.is_zero() || u.is_zero()) return;
        if (!detail::ratio_limit(u, v)) big = big | s;
    });
    return o.dominant(big);
}

/// {n : v_n != 0 and u_n / v_n in D}
inline EpSet membership_set(const HyperFrac& x, const RealSet& d, bool exact = true)
{
    const SeqExpr& u = x.num().rep();
    const SeqExpr& v = x.den().rep();
    EpSet defined = v.where([&](const PowerSum& p) { return p.sign_set([](int s) { return s != 0; }, exact); });
    // sign of u_n/v_n - p is the sign of (u_n - p v_n) v_n
    auto side = [&](const Rational& p, auto keep) {
        SeqExpr w = (u - SeqExpr(p) * v) * v;
        return defined & w.where([&](const PowerSum& q) { return q.sign_set(keep, exact); });
    };
    auto at = [&](const Rational& p) {
        SeqExpr w = u - SeqExpr(p) * v;
        return defined & w.where([&](const PowerSum& q) { return q.sign_set([](int s) { return s == 0; }, exact); });
    };
    return detail::membership(
        d, [&](const Rational& p) { return side(p, [](int s) { return s < 0; }); }, at,
        [&](const Rational& p) { return side(p, [](int s) { return s > 0; }); });
}

inline bool star_member(FilterOracle& o, const HyperFrac& x, const RealSet& d) { return o.dominant(membership_set(x, d, false)); }

} // namespace fermat

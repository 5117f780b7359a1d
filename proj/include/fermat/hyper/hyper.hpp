#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "fermat/hyper/filter_oracle.hpp"
#include "fermat/hyper/seq_expr.hpp"
#include "fermat/smooth/eval.hpp"

namespace fermat {

/// Class of a Cauchy sequence modulo agreement on a dominant set. The
/// representative is kept as given; equality and order are oracle questions.
class Hyper {
public:
    Hyper() = default;
    Hyper(SeqExpr s) : rep_(std::move(s)) {}
    Hyper(PowerSum p) : rep_(std::move(p)) {}
    Hyper(Rational c) : rep_(std::move(c)) {}
    Hyper(int c) : rep_(c) {}

    /// 1/(n+1)
    static Hyper harmonic() { return Hyper(PowerSum::term(Rational(1), Rational(1))); }

    const SeqExpr& rep() const { return rep_; }

    friend Hyper operator+(const Hyper& a, const Hyper& b) { return Hyper(a.rep_ + b.rep_); }
    friend Hyper operator-(const Hyper& a, const Hyper& b) { return Hyper(a.rep_ - b.rep_); }
    friend Hyper operator*(const Hyper& a, const Hyper& b) { return Hyper(a.rep_ * b.rep_); }
    friend Hyper operator-(const Hyper& a) { return Hyper(-a.rep_); }

    /// Same representative; stronger than oracle equality.
    bool same_representative(const Hyper& o) const { return rep_ == o.rep_; }

    std::string to_string() const { return "[" + rep_.to_string() + "]"; }

private:
    SeqExpr rep_;
};

inline std::ostream& operator<<(std::ostream& os, const Hyper& h) { return os << h.to_string(); }

inline Hyper hyper_add(const Hyper& a, const Hyper& b) { return a + b; }
inline Hyper hyper_mul(const Hyper& a, const Hyper& b) { return a * b; }
inline Hyper hyper_neg(const Hyper& a) { return -a; }

/// {n : sign of x_n - y_n satisfies keep}. With exact = false the set is
/// only right up to finitely many indices, which is all the oracle sees;
/// the exact set may need an early segment beyond sign_threshold_limit.
template <class Keep>
EpSet sign_index_set(const Hyper& x, const Hyper& y, Keep keep, bool exact = true)
{
    return (x - y).rep().where([&](const PowerSum& p) { return p.sign_set(keep, exact); });
}

inline EpSet equal_set(const Hyper& x, const Hyper& y, bool exact = true)
{
    return sign_index_set(x, y, [](int s) { return s == 0; }, exact);
}

inline bool hyper_eq(FilterOracle& o, const Hyper& x, const Hyper& y) { return o.dominant(equal_set(x, y, false)); }

/// x <= y: {n : x_n <= y_n} is dominant.
inline bool hyper_le(FilterOracle& o, const Hyper& x, const Hyper& y)
{
    return o.dominant(sign_index_set(x, y, [](int s) { return s <= 0; }, false));
}

inline bool hyper_lt(FilterOracle& o, const Hyper& x, const Hyper& y)
{
    return o.dominant(sign_index_set(x, y, [](int s) { return s < 0; }, false));
}

inline Rational st_hyper(const Hyper& x) { return x.rep().limit(); }

inline Rational pseudo_distance_hyper(const Hyper& x, const Hyper& y) { return abs(st_hyper(x) - st_hyper(y)); }

/// -1/k < x < 1/k for k = 1..K, with K large enough to separate a nonzero
/// standard part from 0. Throws if the answer disagrees with st(x) = 0.
inline bool is_infinitesimal_hyper(FilterOracle& o, const Hyper& x, long bound = 0)
{
    Rational c = st_hyper(x);
    long k_max = bound;
    if (k_max <= 0) {
        k_max = 50;
        if (!c.is_zero()) k_max = std::max<long>(k_max, (Rational(1) / abs(c)).floor().get_si() + 2);
    }
    bool small = true;
    for (long k = 1; k <= k_max && small; ++k) {
        Hyper eps(Rational(1, k));
        small = hyper_lt(o, -eps, x) && hyper_lt(o, x, eps);
    }
    if (small != c.is_zero()) {
        throw PreconditionError("infinitesimal test disagrees with the standard part of " + x.to_string());
    }
    return small;
}

/// Pointwise image under a polynomial with rational coefficients.
inline Hyper star_apply_poly(const Expr& p, std::span<const Hyper> xs)
{
    if (!is_polynomial(p)) throw PreconditionError("star_apply_poly: expression is not polynomial");
    if (arity(p) > xs.size()) throw PreconditionError("star_apply_poly: too few arguments");
    return eval_ring<Hyper>(p, xs, [](const Rational& c) { return Hyper(c); });
}

inline Hyper star_apply_poly(const Expr& p, std::initializer_list<Hyper> xs)
{
    return star_apply_poly(p, std::span<const Hyper>(xs.begin(), xs.size()));
}

} // namespace fermat

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <vector>

#include "fermat/fermat_real.hpp"
#include "fermat/smooth/eval.hpp"

namespace fermat {

using MultiIndex = std::vector<unsigned long>;

/// Lazily filled table of symbolic mixed partials of one expression. Filling
/// is a pure cache: the same multi-index always yields the same Expr.
class DerivativeTable {
public:
    explicit DerivativeTable(Expr f) : f_(simplify(f)) {}

    const Expr& function() const { return f_; }

    Expr partial(const MultiIndex& j) const
    {
        MultiIndex key = trimmed(j);
        std::lock_guard lock(mutex_);
        return partial_locked(key);
    }

private:
    Expr f_;
    mutable std::map<MultiIndex, Expr> cache_;
    mutable std::mutex mutex_;

    static MultiIndex trimmed(MultiIndex j)
    {
        while (!j.empty() && j.back() == 0) j.pop_back();
        return j;
    }

    Expr partial_locked(const MultiIndex& j) const
    {
        if (j.empty()) return f_;
        if (auto it = cache_.find(j); it != cache_.end()) return it->second;
        // peel one derivative off the last variable that has one
        MultiIndex parent = j;
        std::size_t v = parent.size() - 1;
        --parent[v];
        Expr d = differentiate(partial_locked(trimmed(parent)), v);
        cache_.emplace(j, d);
        return d;
    }
};

struct TaylorData {
    std::vector<Scalar> base;
    unsigned long degree = 0;
    std::map<MultiIndex, Scalar> partials; // every multi-index with |j| <= degree
};

namespace detail {

inline void for_each_multi_index(std::size_t d, unsigned long max_total, MultiIndex& cur, std::size_t pos, unsigned long used,
                                 const std::function<void(const MultiIndex&)>& fn)
{
    if (pos == d) {
        fn(cur);
        return;
    }
    for (unsigned long k = 0; used + k <= max_total; ++k) {
        cur[pos] = k;
        for_each_multi_index(d, max_total, cur, pos + 1, used + k, fn);
    }
    cur[pos] = 0;
}

inline void for_each_multi_index(std::size_t d, unsigned long max_total, const std::function<void(const MultiIndex&)>& fn)
{
    MultiIndex cur(d, 0);
    for_each_multi_index(d, max_total, cur, 0, 0, fn);
}

inline Rational factorial(unsigned long k)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return Rational(r);
}

/// Raises NotSmoothHere for log/sqrt whose argument has standard part 0 and
/// depends on a variable that moves infinitesimally.
inline void check_smooth(const Expr& e, std::span<const Scalar> r, const std::vector<bool>& moving)
{
    for (const auto& k : e.kids()) {
        check_smooth(k, r, moving);
    }
    if (e.kind() != Kind::Log && e.kind() != Kind::Sqrt) return;
    std::set<std::size_t> vars;
    collect_vars(e.kid(), vars);
    bool moves = false;
    for (auto v : vars) {
        moves = moves || (v < moving.size() && moving[v]);
    }
    if (moves && eval_real(e.kid(), r).is_zero()) {
        throw NotSmoothHere(to_string(e.kind()), "argument has standard part 0 and a nonzero infinitesimal part");
    }
}

} // namespace detail

/// Full table of partials of f at a real point up to total degree n.
inline TaylorData taylor_data(const Expr& f, std::span<const Scalar> base, unsigned long n)
{
    DerivativeTable table(f);
    TaylorData t{{base.begin(), base.end()}, n, {}};
    detail::for_each_multi_index(base.size(), n, [&](const MultiIndex& j) { t.partials.emplace(j, eval_real(table.partial(j), base)); });
    return t;
}

/// Taylor degree that makes the infinitesimal Taylor formula exact at these
/// arguments: the least n with every (x_j - st x_j)^(n+1) = 0.
inline unsigned long taylor_degree(std::span<const FermatReal> args)
{
    unsigned long n = 0;
    for (const auto& a : args) {
        if (!a.is_real()) {
            n = std::max(n, a.order().floor().get_ui());
        }
    }
    return n;
}

/// Fermat extension of f at the given arguments:
///   sum_{|j| <= n} h^j / j! * d^j f(r),  r = st(args), h = args - r.
/// `extra_degree` raises n; the extra terms vanish by nilpotency.
inline FermatReal ext_apply(const DerivativeTable& table, std::span<const FermatReal> args, unsigned long extra_degree = 0)
{
    const std::size_t d = args.size();
    const Expr& f = table.function();
    if (arity(f) > d) {
        throw PreconditionError("ext: function of " + std::to_string(arity(f)) + " variables applied to " + std::to_string(d)
                                + " arguments");
    }
    bool approx = false;
    for (const auto& a : args) {
        approx = approx || a.mode() == Mode::approx;
    }
    const Mode arg_mode = approx ? Mode::approx : Mode::exact;
    std::vector<Scalar> r;
    std::vector<FermatReal> h;
    std::vector<bool> moving;
    for (const auto& a : args) {
        FermatReal b = a.in_mode(arg_mode);
        r.push_back(b.st());
        h.push_back(b.infinitesimal_part());
        moving.push_back(!b.is_real());
    }
    const unsigned long n = taylor_degree(args) + extra_degree;
    detail::check_smooth(f, r, moving);

    std::vector<std::pair<Scalar, FermatReal>> contributions;
    detail::for_each_multi_index(d, n, [&](const MultiIndex& j) {
        FermatReal hj(Scalar(1).in_mode(arg_mode));
        Rational denom(1);
        for (std::size_t k = 0; k < d; ++k) {
            if (j[k] == 0) continue;
            if (!moving[k]) return;
            hj = hj * pow(h[k], j[k]);
            denom *= detail::factorial(j[k]);
        }
        if (hj.is_zero()) return;
        Scalar c = eval_real(table.partial(j), r);
        approx = approx || !c.is_exact();
        contributions.emplace_back(c.is_exact() ? Scalar(c.exact() / denom) : Scalar::approx(c.to_double() / denom.to_double()),
                                   hj);
    });
    const Mode m = approx ? Mode::approx : Mode::exact;
    FermatReal total = FermatReal::zero(m);
    for (const auto& [c, hj] : contributions) {
        total = total + FermatReal(c.in_mode(m)) * hj.in_mode(m);
    }
    return total;
}

inline FermatReal ext_apply(const Expr& f, std::span<const FermatReal> args, unsigned long extra_degree = 0)
{
    return ext_apply(DerivativeTable(f), args, extra_degree);
}

inline FermatReal ext_apply(const Expr& f, std::initializer_list<FermatReal> args, unsigned long extra_degree = 0)
{
    return ext_apply(f, std::span<const FermatReal>(args.begin(), args.size()), extra_degree);
}

/// The unique m with f(x + h) = f(x) + h*m for every h in D_1, read off
/// ext f(x + dt).
inline Scalar derivative_at(const Expr& f, const Scalar& x)
{
    FermatReal arg = FermatReal(x) + FermatReal::dt(1, x.mode());
    std::vector<FermatReal> args{arg};
    FermatReal value = ext_apply(f, args);
    FermatReal diff = value - FermatReal(eval_real(f, {x})).in_mode(value.mode());
    Scalar m = diff.coefficient(Rational(1));
    for (const auto& t : diff.terms()) {
        if (t.order != 1) {
            throw PreconditionError("derivative_at: unexpected term of order " + t.order.to_string());
        }
    }
    if (!diff.st().is_zero()) {
        throw PreconditionError("derivative_at: standard part did not cancel");
    }
    return m;
}

inline FermatReal ext_abs(const FermatReal& x) { return fabs(x); }

} // namespace fermat

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fermat/hyper/hyper.hpp"
#include "fermat/hyper/real_set.hpp"
#include "fermat/sets/relation.hpp"

namespace fermat {

namespace detail {

/// {n : x_n in D}, assembled from the index sets on which x_n lies below,
/// at or above each breakpoint of D.
template <class Below, class At, class Above>
EpSet membership(const RealSet& d, Below below, At at, Above above)
{
    const auto& pts = d.breakpoints();
    const std::size_t k = pts.size();
    if (k == 0) return d.gap_in(0) ? EpSet::all() : EpSet::empty();
    std::vector<EpSet> lt, gt;
    for (const auto& p : pts) {
        lt.push_back(below(p));
        gt.push_back(above(p));
    }
    EpSet out;
    for (std::size_t j = 0; j <= k; ++j) {
        if (!d.gap_in(j)) continue;
        if (j == 0) {
            out = out | lt[0];
        } else if (j == k) {
            out = out | gt[k - 1];
        } else {
            out = out | (gt[j - 1] & lt[j]);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (d.point_in(i)) out = out | at(pts[i]);
    }
    return out;
}

inline EpSet membership(const PowerSum& s, const RealSet& d, bool exact)
{
    auto shifted = [&](const Rational& p) { return s - PowerSum(p); };
    return membership(
        d, [&](const Rational& p) { return shifted(p).sign_set([](int v) { return v < 0; }, exact); },
        [&](const Rational& p) { return shifted(p).sign_set([](int v) { return v == 0; }, exact); },
        [&](const Rational& p) { return shifted(p).sign_set([](int v) { return v > 0; }, exact); });
}

} // namespace detail

/// {n : x_n in D}, exactly or up to finitely many indices.
inline EpSet membership_set(const Hyper& x, const RealSet& d, bool exact = true)
{
    return x.rep().where([&](const PowerSum& p) { return detail::membership(p, d, exact); });
}

inline bool star_member(FilterOracle& o, const Hyper& x, const RealSet& d) { return o.dominant(membership_set(x, d, false)); }

inline bool star_member(FilterOracle& o, const Hyper& x, const OpenSet& d) { return star_member(o, x, RealSet::from(d)); }

/// {n : (x_n, y_n) in C}
inline EpSet pair_membership_set(const Hyper& x, const Hyper& y, const OpenRelation& c, bool exact = true)
{
    EpSet out;
    for (const auto& a : x.rep().branches()) {
        for (const auto& b : y.rep().branches()) {
            EpSet both = a.where & b.where;
            if (both.is_empty()) continue;
            for (const auto& r : c.rectangles()) {
                out = out | (both & detail::membership(a.seq, RealSet::from(OpenSet(r.x)), exact)
                             & detail::membership(b.seq, RealSet::from(OpenSet(r.y)), exact));
            }
        }
    }
    return out;
}

inline bool star_pair_member(FilterOracle& o, const Hyper& x, const Hyper& y, const OpenRelation& c)
{
    return o.dominant(pair_membership_set(x, y, c, false));
}

inline OpenSet relation_dom(const OpenRelation& c) { return project_exists(c); }

inline OpenSet relation_cod(const OpenRelation& c)
{
    std::vector<Interval> ys;
    for (const auto& r : c.rectangles()) ys.push_back(r.y);
    return OpenSet::from(std::move(ys));
}

/// The branches of u approach points where the slices of C have no common
/// value, so no single Cauchy witness exists.
struct ContinuityCounterexample {
    Hyper u;
    std::vector<OpenSet> slices;
    std::string detail;
};

/// For u in ext[dom C], a v with (u, v) in ext C. On every infinite branch
/// the slice is the union of the y-intervals of rectangles that eventually
/// contain u_n; v is the midpoint of the first piece common to all slices.
inline std::variant<Hyper, ContinuityCounterexample> exists_witness(FilterOracle& o, const OpenRelation& c, const Hyper& u)
{
    if (!star_member(o, u, relation_dom(c))) {
        throw PreconditionError(u.to_string() + " is not in the extension of the domain");
    }
    std::optional<OpenSet> common;
    std::vector<OpenSet> slices;
    for (const auto& b : u.rep().branches()) {
        if (!b.where.is_infinite()) continue;
        std::vector<Interval> ys;
        for (const auto& r : c.rectangles()) {
            EpSet inside = detail::membership(b.seq, RealSet::from(OpenSet(r.x)), false);
            if ((b.where - inside).is_finite()) ys.push_back(r.y);
        }
        if (ys.empty()) continue; // u leaves dom C on this branch
        OpenSet slice = OpenSet::from(ys);
        slices.push_back(slice);
        common = common ? intersect(*common, slice) : slice;
    }
    if (!common || common->is_empty()) {
        return ContinuityCounterexample{u, slices, "no value lies in every eventual slice along " + u.to_string()};
    }
    const auto& piece = common->pieces().front();
    Rational mid = detail::midpoint(piece.lo, piece.hi);
    Hyper v(mid);
    if (!star_pair_member(o, u, v, c)) {
        return ContinuityCounterexample{u, slices, "witness " + mid.to_string() + " is rejected by the oracle"};
    }
    return v;
}

} // namespace fermat

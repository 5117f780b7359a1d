#pragma once

#include <set>
#include <vector>

#include "fermat/sets/open_set.hpp"

namespace fermat {

struct Rectangle {
    Interval x, y;

    bool contains(const Rational& a, const Rational& b) const { return x.contains(a) && y.contains(b); }
};

/// Open subset of R x R given as a finite union of open rectangles.
class OpenRelation {
public:
    OpenRelation() = default;
    OpenRelation(std::vector<Rectangle> rects) : rects_(std::move(rects)) {}

    const std::vector<Rectangle>& rectangles() const { return rects_; }

    bool contains(const Rational& a, const Rational& b) const
    {
        for (const auto& r : rects_) {
            if (r.contains(a, b)) return true;
        }
        return false;
    }

    bool within(const OpenSet& a, const OpenSet& b) const
    {
        for (const auto& r : rects_) {
            if (!subset(OpenSet(r.x), a) || !subset(OpenSet(r.y), b)) return false;
        }
        return true;
    }

private:
    std::vector<Rectangle> rects_;
};

/// Projection of C onto the first coordinate.
inline OpenSet project_exists(const OpenRelation& c)
{
    std::vector<Interval> xs;
    for (const auto& r : c.rectangles()) xs.push_back(r.x);
    return OpenSet::from(std::move(xs));
}

namespace detail {

/// Points b of B with (a, b) outside the closure of every rectangle.
inline OpenSet free_fiber(const OpenRelation& c, const OpenSet& b, const Rational& a)
{
    std::vector<Interval> covered;
    for (const auto& r : c.rectangles()) {
        bool in_closed_x = !(a < r.x.lo) && !(r.x.hi < a);
        if (in_closed_x) covered.push_back(r.y);
    }
    return int_diff(b, OpenSet::from(std::move(covered)));
}

inline Rational midpoint(const Bound& lo, const Bound& hi)
{
    if (lo.is_finite() && hi.is_finite()) return (lo.value() + hi.value()) / 2;
    if (lo.is_finite()) return lo.value() + 1;
    if (hi.is_finite()) return hi.value() - 1;
    return Rational(0);
}

} // namespace detail

/// Projection onto the first coordinate of int((A x B) \ C).
inline OpenSet project_complement(const OpenRelation& c, const OpenSet& a, const OpenSet& b)
{
    std::set<Rational> cuts;
    for (const auto& p : a.pieces()) {
        if (p.lo.is_finite()) cuts.insert(p.lo.value());
        if (p.hi.is_finite()) cuts.insert(p.hi.value());
    }
    for (const auto& r : c.rectangles()) {
        if (r.x.lo.is_finite()) cuts.insert(r.x.lo.value());
        if (r.x.hi.is_finite()) cuts.insert(r.x.hi.value());
    }
    // Cells alternate open gaps and cut points; a cut point joins its two
    // neighbours when its own fiber is nonempty.
    std::vector<Bound> edges{Bound::neg_inf()};
    for (const auto& r : cuts) edges.emplace_back(r);
    edges.push_back(Bound::pos_inf());

    auto open_cell_free = [&](std::size_t k) {
        Rational m = detail::midpoint(edges[k], edges[k + 1]);
        return a.contains(m) && !detail::free_fiber(c, b, m).is_empty();
    };

    std::vector<Interval> out;
    std::size_t k = 0;
    const std::size_t cells = edges.size() - 1;
    while (k < cells) {
        if (!open_cell_free(k)) {
            ++k;
            continue;
        }
        Bound lo = edges[k];
        while (k + 1 < cells) {
            const Rational& cut = edges[k + 1].value();
            if (a.contains(cut) && !detail::free_fiber(c, b, cut).is_empty() && open_cell_free(k + 1)) {
                ++k;
            } else {
                break;
            }
        }
        out.emplace_back(lo, edges[k + 1]);
        ++k;
    }
    return OpenSet::from(std::move(out));
}

/// Intuitionistic universal quantifier: int(A \ p(int((A x B) \ C))).
inline OpenSet project_forall(const OpenRelation& c, const OpenSet& a, const OpenSet& b)
{
    if (!c.within(a, b)) {
        throw PreconditionError("project_forall: relation is not contained in A x B");
    }
    return int_diff(a, project_complement(c, a, b));
}

} // namespace fermat

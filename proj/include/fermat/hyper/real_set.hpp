#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/core/rational.hpp"
#include "fermat/sets/open_set.hpp"

namespace fermat {

/// Finite union of intervals with open or closed endpoints and of isolated
/// points. Stored as sorted breakpoints p_1 < ... < p_k, a membership bit
/// for each breakpoint and one for each of the k+1 gaps between them.
class RealSet {
public:
    RealSet() : gaps_(1, false) {}

    static RealSet empty() { return {}; }
    static RealSet reals() { return build({}, {}, {true}); }
    static RealSet point(const Rational& p) { return build({p}, {true}, {false, false}); }

    /// Interval with the given endpoint flags; infinite endpoints are open.
    static RealSet interval(const Bound& lo, const Bound& hi, bool lo_closed = false, bool hi_closed = false)
    {
        if (hi < lo || (lo == hi && !(lo_closed && hi_closed))) {
            throw DomainError("empty interval " + lo.to_string() + "," + hi.to_string());
        }
        if (!lo.is_finite() && !hi.is_finite()) return reals();
        if (lo == hi) return point(lo.value());
        if (!lo.is_finite()) return build({hi.value()}, {hi_closed}, {true, false});
        if (!hi.is_finite()) return build({lo.value()}, {lo_closed}, {false, true});
        return build({lo.value(), hi.value()}, {lo_closed, hi_closed}, {false, true, false});
    }

    static RealSet from(const OpenSet& s)
    {
        RealSet r;
        for (const auto& p : s.pieces()) r = r | interval(p.lo, p.hi);
        return r;
    }

    const std::vector<Rational>& breakpoints() const { return points_; }
    /// Membership of breakpoint i.
    bool point_in(std::size_t i) const { return point_in_[i]; }
    /// Membership of the open gap before breakpoint j (j = k is the last gap).
    bool gap_in(std::size_t j) const { return gaps_[j]; }

    bool is_empty() const { return points_.empty() && !gaps_[0]; }

    bool contains(const Rational& x) const
    {
        auto it = std::lower_bound(points_.begin(), points_.end(), x);
        auto i = static_cast<std::size_t>(it - points_.begin());
        if (it != points_.end() && *it == x) return point_in_[i];
        return gaps_[i];
    }

    RealSet complement() const
    {
        RealSet r = *this;
        r.point_in_.flip();
        r.gaps_.flip();
        return r;
    }

    template <class Op>
    static RealSet combine(const RealSet& a, const RealSet& b, Op op)
    {
        std::vector<Rational> pts;
        std::merge(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(), std::back_inserter(pts));
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<bool> in, gaps;
        for (std::size_t j = 0; j <= pts.size(); ++j) {
            Rational probe = j == 0 ? (pts.empty() ? Rational(0) : pts[0] - 1)
                                    : (j == pts.size() ? pts[j - 1] + 1 : (pts[j - 1] + pts[j]) / 2);
            gaps.push_back(op(a.contains(probe), b.contains(probe)));
            if (j < pts.size()) in.push_back(op(a.contains(pts[j]), b.contains(pts[j])));
        }
        return build(std::move(pts), std::move(in), std::move(gaps));
    }

    friend RealSet operator|(const RealSet& a, const RealSet& b) { return combine(a, b, [](bool x, bool y) { return x || y; }); }
    friend RealSet operator&(const RealSet& a, const RealSet& b) { return combine(a, b, [](bool x, bool y) { return x && y; }); }
    friend RealSet operator-(const RealSet& a, const RealSet& b) { return combine(a, b, [](bool x, bool y) { return x && !y; }); }
    friend bool operator==(const RealSet&, const RealSet&) = default;

    bool subset_of(const RealSet& o) const { return (*this - o).is_empty(); }

    /// `[0,1)u{2}u(3,inf)`, or `empty`.
    std::string to_string() const
    {
        if (is_empty()) return "empty";
        // items alternate gap 0, point 1, gap 1, ..., point k, gap k
        const std::size_t k = points_.size();
        auto member = [&](std::size_t item) { return item % 2 == 0 ? gaps_[item / 2] : point_in_[item / 2]; };
        std::string s;
        for (std::size_t i = 0; i <= 2 * k; ++i) {
            if (!member(i)) continue;
            std::size_t j = i;
            while (j + 1 <= 2 * k && member(j + 1)) ++j;
            if (!s.empty()) s += "u";
            if (i == j && i % 2 == 1) {
                s += "{" + points_[i / 2].to_string() + "}";
            } else {
                s += i % 2 == 1 ? "[" + points_[i / 2].to_string() : (i == 0 ? "(-inf" : "(" + points_[i / 2 - 1].to_string());
                s += ",";
                s += j % 2 == 1 ? points_[j / 2].to_string() + "]" : (j == 2 * k ? "inf)" : points_[j / 2].to_string() + ")");
            }
            i = j;
        }
        return s;
    }

    static RealSet parse(std::string_view text)
    {
        std::string t;
        std::vector<std::size_t> col;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                t += text[i];
                col.push_back(i + 1);
            }
        }
        std::size_t pos = 0;
        auto fail = [&](const std::string& what) -> RealSet { throw ParseError(what, pos < col.size() ? col[pos] : text.size() + 1); };
        if (t == "empty") return empty();
        auto bound = [&]() -> Bound {
            std::size_t start = pos;
            while (pos < t.size() && t[pos] != ',' && t[pos] != ')' && t[pos] != ']' && t[pos] != '}') ++pos;
            std::string tok = t.substr(start, pos - start);
            if (tok == "-inf") return Bound::neg_inf();
            if (tok == "inf" || tok == "+inf") return Bound::pos_inf();
            try {
                return Bound(Rational::parse(tok));
            } catch (const DomainError&) {
                pos = start;
                fail("expected a number");
            }
            return Bound(0);
        };
        RealSet r;
        while (true) {
            if (pos >= t.size()) return fail("expected an interval or '{'");
            if (t[pos] == '{') {
                ++pos;
                while (true) {
                    Bound b = bound();
                    if (!b.is_finite()) return fail("point must be finite");
                    r = r | point(b.value());
                    if (pos < t.size() && t[pos] == ',') {
                        ++pos;
                        continue;
                    }
                    if (pos >= t.size() || t[pos] != '}') return fail("expected '}'");
                    ++pos;
                    break;
                }
            } else if (t[pos] == '(' || t[pos] == '[') {
                bool lc = t[pos++] == '[';
                Bound lo = bound();
                if (pos >= t.size() || t[pos] != ',') return fail("expected ','");
                ++pos;
                Bound hi = bound();
                if (pos >= t.size() || (t[pos] != ')' && t[pos] != ']')) return fail("expected ')' or ']'");
                bool hc = t[pos++] == ']';
                if ((lc && !lo.is_finite()) || (hc && !hi.is_finite())) return fail("infinite endpoint must be open");
                try {
                    r = r | interval(lo, hi, lc, hc);
                } catch (const DomainError& e) {
                    return fail(e.what());
                }
            } else {
                return fail("expected an interval or '{'");
            }
            if (pos == t.size()) return r;
            if (t[pos] != 'u') return fail("expected 'u'");
            ++pos;
        }
    }

private:
    std::vector<Rational> points_;
    std::vector<bool> point_in_;
    std::vector<bool> gaps_;

    static RealSet build(std::vector<Rational> pts, std::vector<bool> in, std::vector<bool> gaps)
    {
        RealSet r;
        r.gaps_ = {gaps[0]};
        for (std::size_t i = 0; i < pts.size(); ++i) {
            // a breakpoint that agrees with both neighbouring gaps is no breakpoint
            if (in[i] == r.gaps_.back() && in[i] == gaps[i + 1]) continue;
            r.points_.push_back(std::move(pts[i]));
            r.point_in_.push_back(in[i]);
            r.gaps_.push_back(gaps[i + 1]);
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const RealSet& s) { return os << s.to_string(); }

} // namespace fermat

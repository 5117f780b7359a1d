#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/core/errors.hpp"
#include "fermat/fermat_real.hpp"

namespace fermat {

/// Interval endpoint: a rational or one of the two infinities.
class Bound {
public:
    Bound(Rational v) : kind_(0), v_(std::move(v)) {}
    Bound(int v) : Bound(Rational(v)) {}
    Bound(long v) : Bound(Rational(v)) {}

    static Bound neg_inf() { return Bound(-1, Rational(0)); }
    static Bound pos_inf() { return Bound(1, Rational(0)); }

    bool is_finite() const { return kind_ == 0; }
    const Rational& value() const
    {
        if (!is_finite()) throw PreconditionError("infinite bound has no value");
        return v_;
    }

    friend bool operator==(const Bound& a, const Bound& b) { return a.kind_ == b.kind_ && a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b)
    {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        return a.v_ <=> b.v_;
    }
    friend bool operator<(const Bound& a, const Rational& r) { return a.kind_ < 0 || (a.kind_ == 0 && a.v_ < r); }
    friend bool operator<(const Rational& r, const Bound& b) { return b.kind_ > 0 || (b.kind_ == 0 && r < b.v_); }

    double to_double() const
    {
        if (kind_ < 0) return -HUGE_VAL;
        if (kind_ > 0) return HUGE_VAL;
        return v_.to_double();
    }

    std::string to_string() const
    {
        if (kind_ < 0) return "-inf";
        if (kind_ > 0) return "inf";
        return v_.to_string();
    }

private:
    Bound(int kind, Rational v) : kind_(kind), v_(std::move(v)) {}

    int kind_; // -1, 0, +1
    Rational v_;
};

/// Open interval (lo, hi) with lo < hi.
struct Interval {
    Bound lo, hi;

    Interval(Bound l, Bound h) : lo(std::move(l)), hi(std::move(h))
    {
        if (!(lo < hi)) throw DomainError("empty interval (" + lo.to_string() + "," + hi.to_string() + ")");
    }

    bool contains(const Rational& r) const { return lo < r && r < hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of open intervals with rational or infinite endpoints, kept
/// sorted and with overlapping pieces merged. Pieces that merely touch, like
/// (0,1) and (1,2), stay apart: the common endpoint belongs to neither.
class OpenSet {
public:
    OpenSet() = default;
    OpenSet(Interval i) : pieces_{std::move(i)} {}

    static OpenSet empty() { return {}; }
    static OpenSet reals() { return OpenSet(Interval(Bound::neg_inf(), Bound::pos_inf())); }
    static OpenSet interval(Bound lo, Bound hi) { return OpenSet(Interval(std::move(lo), std::move(hi))); }

    static OpenSet from(std::vector<Interval> pieces)
    {
        std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        OpenSet s;
        for (auto& p : pieces) {
            if (!s.pieces_.empty() && p.lo < s.pieces_.back().hi) {
                s.pieces_.back().hi = std::max(s.pieces_.back().hi, p.hi);
            } else {
                s.pieces_.push_back(std::move(p));
            }
        }
        return s;
    }

    const std::vector<Interval>& pieces() const { return pieces_; }
    bool is_empty() const { return pieces_.empty(); }

    bool contains(const Rational& r) const
    {
        return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& i) { return i.contains(r); });
    }

    bool contains(const Scalar& r) const
    {
        if (r.is_exact()) return contains(r.exact());
        double v = r.to_double();
        return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& i) { return i.lo.to_double() < v && v < i.hi.to_double(); });
    }

    /// Open complement of the closure: the exterior of the set.
    OpenSet exterior() const
    {
        std::vector<Interval> out;
        Bound cursor = Bound::neg_inf();
        for (const auto& p : pieces_) {
            if (cursor < p.lo) {
                out.emplace_back(cursor, p.lo);
            }
            cursor = p.hi;
        }
        if (pieces_.empty()) {
            return reals();
        }
        if (cursor < Bound::pos_inf()) {
            out.emplace_back(cursor, Bound::pos_inf());
        }
        return from(std::move(out));
    }

    friend OpenSet set_union(const OpenSet& a, const OpenSet& b)
    {
        std::vector<Interval> all = a.pieces_;
        all.insert(all.end(), b.pieces_.begin(), b.pieces_.end());
        return from(std::move(all));
    }

    friend OpenSet intersect(const OpenSet& a, const OpenSet& b)
    {
        std::vector<Interval> out;
        for (const auto& p : a.pieces_) {
            for (const auto& q : b.pieces_) {
                Bound lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
                if (lo < hi) out.emplace_back(lo, hi);
            }
        }
        return from(std::move(out));
    }

    /// Interior of the set difference A \ B.
    friend OpenSet int_diff(const OpenSet& a, const OpenSet& b) { return intersect(a, b.exterior()); }

    friend bool subset(const OpenSet& a, const OpenSet& b)
    {
        return std::all_of(a.pieces_.begin(), a.pieces_.end(), [&](const Interval& p) {
            return std::any_of(b.pieces_.begin(), b.pieces_.end(), [&](const Interval& q) { return q.contains(p); });
        });
    }

    friend bool operator==(const OpenSet&, const OpenSet&) = default;

    std::string to_string() const
    {
        if (pieces_.empty()) return "empty";
        std::string s;
        for (const auto& p : pieces_) {
            if (!s.empty()) s += "u";
            s += "(" + p.lo.to_string() + "," + p.hi.to_string() + ")";
        }
        return s;
    }

    /// Reads `(a,b)u(c,d)`, `(-inf,0)`, `empty`.
    static OpenSet parse(std::string_view text)
    {
        std::string t;
        for (char c : text) {
            if (c != ' ' && c != '\t') t += c;
        }
        if (t == "empty" || t == "{}") return {};
        std::vector<Interval> pieces;
        std::size_t pos = 0;
        auto bound = [&](char stop) {
            std::size_t end = t.find(stop, pos);
            if (end == std::string::npos) throw ParseError(std::string("expected '") + stop + "'", pos + 1);
            std::string tok = t.substr(pos, end - pos);
            std::size_t col = pos + 1;
            pos = end + 1;
            if (tok == "-inf") return Bound::neg_inf();
            if (tok == "inf" || tok == "+inf") return Bound::pos_inf();
            try {
                return Bound(Rational::parse(tok));
            } catch (const DomainError&) {
                throw ParseError("malformed endpoint '" + tok + "'", col);
            }
        };
        while (pos < t.size()) {
            if (t[pos] != '(') throw ParseError("expected '('", pos + 1);
            ++pos;
            Bound lo = bound(',');
            std::size_t col = pos + 1;
            Bound hi = bound(')');
            if (!(lo < hi)) throw ParseError("empty interval", col);
            pieces.emplace_back(lo, hi);
            if (pos < t.size()) {
                if (t[pos] != 'u' && t[pos] != 'U') throw ParseError("expected 'u'", pos + 1);
                ++pos;
            }
        }
        if (pieces.empty()) throw ParseError("empty input", 1);
        return from(std::move(pieces));
    }

private:
    std::vector<Interval> pieces_;
};

inline std::ostream& operator<<(std::ostream& os, const OpenSet& s) { return os << s.to_string(); }

/// x lies in the Fermat extension of U exactly when its standard part lies in U.
inline bool member_ext(const FermatReal& x, const OpenSet& u) { return u.contains(x.st()); }

} // namespace fermat

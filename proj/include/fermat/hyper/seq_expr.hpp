#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "fermat/hyper/power_sum.hpp"

namespace fermat {

struct Branch {
    EpSet where;
    PowerSum seq;

    friend bool operator==(const Branch&, const Branch&) = default;
};

/// Piecewise power-sum sequence: the index sets of the branches partition N.
/// Every branch over an infinite index set shares the same limit, so the
/// sequence is Cauchy.
class SeqExpr {
public:
    SeqExpr() : SeqExpr(PowerSum()) {}
    SeqExpr(PowerSum p) : branches_{{EpSet::all(), std::move(p)}} {}
    SeqExpr(Rational c) : SeqExpr(PowerSum(std::move(c))) {}
    SeqExpr(int c) : SeqExpr(PowerSum(c)) {}

    static SeqExpr piecewise(std::vector<Branch> branches)
    {
        EpSet covered;
        for (const auto& b : branches) {
            if (!(covered & b.where).is_empty()) throw DomainError("sequence branches overlap");
            covered = covered | b.where;
        }
        if (!(covered == EpSet::all())) throw DomainError("sequence branches do not cover every index");
        const Rational* limit = nullptr;
        for (const auto& b : branches) {
            if (!b.where.is_infinite()) continue;
            if (limit && *limit != b.seq.limit()) {
                throw DomainError("branches converge to " + limit->to_string() + " and " + b.seq.limit().to_string()
                                  + "; the sequence is not Cauchy");
            }
            limit = &b.seq.limit();
        }
        SeqExpr s;
        s.branches_ = std::move(branches);
        s.normalize();
        return s;
    }

    const std::vector<Branch>& branches() const { return branches_; }

    const Branch& branch_at(std::size_t n) const
    {
        for (const auto& b : branches_) {
            if (b.where.contains(n)) return b;
        }
        throw PreconditionError("index not covered");
    }

    std::optional<Rational> value_exact(std::size_t n) const { return branch_at(n).seq.value_exact(n); }
    long double value_approx(std::size_t n) const { return branch_at(n).seq.value_approx(n); }
    int sign_at(std::size_t n) const { return branch_at(n).seq.sign_at(n); }

    /// Common limit of the infinite branches.
    const Rational& limit() const
    {
        for (const auto& b : branches_) {
            if (b.where.is_infinite()) return b.seq.limit();
        }
        throw PreconditionError("no infinite branch");
    }

    /// Pointwise combination over the common refinement of both partitions.
    static SeqExpr combine(const SeqExpr& x, const SeqExpr& y, const std::function<PowerSum(const PowerSum&, const PowerSum&)>& op)
    {
        std::vector<Branch> out;
        for (const auto& a : x.branches_) {
            for (const auto& b : y.branches_) {
                EpSet s = a.where & b.where;
                if (!s.is_empty()) out.push_back({s, op(a.seq, b.seq)});
            }
        }
        SeqExpr r;
        r.branches_ = std::move(out);
        r.normalize();
        return r;
    }

    SeqExpr map(const std::function<PowerSum(const PowerSum&)>& f) const
    {
        SeqExpr r = *this;
        for (auto& b : r.branches_) b.seq = f(b.seq);
        r.normalize();
        return r;
    }

    /// Union over branches of (branch set intersected with f(branch sequence)).
    EpSet where(const std::function<EpSet(const PowerSum&)>& f) const
    {
        EpSet out;
        for (const auto& b : branches_) out = out | (b.where & f(b.seq));
        return out;
    }

    friend SeqExpr operator+(const SeqExpr& x, const SeqExpr& y) { return combine(x, y, [](const PowerSum& a, const PowerSum& b) { return a + b; }); }
    friend SeqExpr operator-(const SeqExpr& x, const SeqExpr& y) { return combine(x, y, [](const PowerSum& a, const PowerSum& b) { return a - b; }); }
    friend SeqExpr operator*(const SeqExpr& x, const SeqExpr& y) { return combine(x, y, [](const PowerSum& a, const PowerSum& b) { return a * b; }); }
    friend SeqExpr operator-(const SeqExpr& x) { return x.map([](const PowerSum& a) { return -a; }); }
    friend bool operator==(const SeqExpr&, const SeqExpr&) = default;

    std::string to_string() const
    {
        if (branches_.size() == 1) return branches_.front().seq.to_string();
        std::string s;
        for (const auto& b : branches_) {
            if (!s.empty()) s += "; ";
            s += label(b.where) + ": " + b.seq.to_string();
        }
        return s;
    }

    static std::string label(const EpSet& s)
    {
        if (s == EpSet::evens()) return "even";
        if (s == EpSet::odds()) return "odd";
        if (s.threshold() == 0 && std::count(s.residues().begin(), s.residues().end(), true) == 1) {
            auto r = std::find(s.residues().begin(), s.residues().end(), true) - s.residues().begin();
            return "mod(" + std::to_string(s.period()) + "," + std::to_string(r) + ")";
        }
        return "[" + s.to_string() + "]";
    }

private:
    std::vector<Branch> branches_;

    void normalize()
    {
        std::vector<Branch> merged;
        for (auto& b : branches_) {
            if (b.where.is_empty()) continue;
            auto it = std::find_if(merged.begin(), merged.end(), [&](const Branch& m) { return m.seq == b.seq; });
            if (it != merged.end()) {
                it->where = it->where | b.where;
            } else {
                merged.push_back(std::move(b));
            }
        }
        // order by first index so equal sequences compare equal
        auto first = [](const EpSet& s) {
            std::size_t n = 0;
            while (!s.contains(n)) ++n;
            return n;
        };
        std::sort(merged.begin(), merged.end(), [&](const Branch& a, const Branch& b) { return first(a.where) < first(b.where); });
        branches_ = std::move(merged);
    }
};

inline std::ostream& operator<<(std::ostream& os, const SeqExpr& s) { return os << s.to_string(); }

} // namespace fermat

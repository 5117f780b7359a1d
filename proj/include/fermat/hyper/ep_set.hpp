#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/core/errors.hpp"

namespace fermat {

/// Eventually periodic subset of N: explicit bits below a threshold N0, then
/// membership by residue modulo a period m. Canonical form has the least
/// period and, for it, the least threshold.
class EpSet {
public:
    EpSet() : residues_(1, false) {}

    EpSet(std::size_t n0, std::vector<bool> prefix, std::vector<bool> residues)
        : n0_(n0), prefix_(std::move(prefix)), residues_(std::move(residues))
    {
        if (residues_.empty()) throw PreconditionError("EpSet: period must be at least 1");
        if (prefix_.size() != n0_) throw PreconditionError("EpSet: prefix length must equal N0");
        normalize();
    }

    static EpSet empty() { return {}; }
    static EpSet all() { return EpSet(0, {}, {true}); }
    static EpSet residue(std::size_t m, std::size_t r)
    {
        if (m == 0) throw PreconditionError("EpSet: period must be at least 1");
        std::vector<bool> res(m, false);
        res[r % m] = true;
        return EpSet(0, {}, res);
    }
    static EpSet evens() { return residue(2, 0); }
    static EpSet odds() { return residue(2, 1); }
    /// {n : n >= n0}
    static EpSet from_threshold(std::size_t n0) { return EpSet(n0, std::vector<bool>(n0, false), {true}); }
    static EpSet finite(const std::vector<std::size_t>& members)
    {
        std::size_t n0 = 0;
        for (auto k : members) n0 = std::max(n0, k + 1);
        std::vector<bool> bits(n0, false);
        for (auto k : members) bits[k] = true;
        return EpSet(n0, bits, {false});
    }

    std::size_t threshold() const { return n0_; }
    std::size_t period() const { return residues_.size(); }
    const std::vector<bool>& residues() const { return residues_; }
    const std::vector<bool>& prefix() const { return prefix_; }

    bool contains(std::size_t n) const { return n < n0_ ? prefix_[n] : residues_[n % residues_.size()]; }

    bool is_empty() const { return is_finite() && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; }); }
    bool is_infinite() const { return std::any_of(residues_.begin(), residues_.end(), [](bool b) { return b; }); }
    bool is_finite() const { return !is_infinite(); }
    bool is_cofinite() const { return std::all_of(residues_.begin(), residues_.end(), [](bool b) { return b; }); }

    EpSet complement() const
    {
        EpSet r = *this;
        r.prefix_.flip();
        r.residues_.flip();
        return r;
    }

    template <class Op>
    static EpSet combine(const EpSet& a, const EpSet& b, Op op)
    {
        std::size_t m = std::lcm(a.period(), b.period());
        std::size_t n0 = std::max(a.n0_, b.n0_);
        std::vector<bool> prefix(n0), res(m);
        for (std::size_t n = 0; n < n0; ++n) prefix[n] = op(a.contains(n), b.contains(n));
        // residue j stands for every n >= n0 with n = j (mod m)
        for (std::size_t j = 0; j < m; ++j) res[j] = op(a.residues_[j % a.period()], b.residues_[j % b.period()]);
        return EpSet(n0, prefix, res);
    }

    friend EpSet operator|(const EpSet& a, const EpSet& b) { return combine(a, b, [](bool x, bool y) { return x || y; }); }
    friend EpSet operator&(const EpSet& a, const EpSet& b) { return combine(a, b, [](bool x, bool y) { return x && y; }); }
    friend EpSet operator-(const EpSet& a, const EpSet& b) { return combine(a, b, [](bool x, bool y) { return x && !y; }); }
    friend bool operator==(const EpSet&, const EpSet&) = default;

    bool subset_of(const EpSet& other) const { return (*this - other).is_empty(); }
    /// Inclusion up to finitely many exceptions.
    bool almost_subset_of(const EpSet& other) const { return (*this - other).is_finite(); }

    /// `per(m){r1,r2,...};N0=k;pre=<bits>`
    std::string to_string() const
    {
        std::string s = "per(" + std::to_string(period()) + "){";
        bool first = true;
        for (std::size_t j = 0; j < period(); ++j) {
            if (!residues_[j]) continue;
            if (!first) s += ",";
            s += std::to_string(j);
            first = false;
        }
        s += "};N0=" + std::to_string(n0_) + ";pre=";
        for (bool b : prefix_) s += b ? '1' : '0';
        return s;
    }

    static EpSet parse(std::string_view text)
    {
        std::string t(text);
        auto fail = [&](std::size_t pos, const std::string& what) -> EpSet { throw ParseError(what, pos + 1); };
        if (t.rfind("per(", 0) != 0) return fail(0, "expected 'per('");
        std::size_t pos = 4;
        auto number = [&]() {
            std::size_t start = pos;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
            if (start == pos) fail(pos, "expected a number");
            return static_cast<std::size_t>(std::stoul(t.substr(start, pos - start)));
        };
        auto expect = [&](const std::string& lit) {
            if (t.compare(pos, lit.size(), lit) != 0) fail(pos, "expected '" + lit + "'");
            pos += lit.size();
        };
        std::size_t m = number();
        if (m == 0) return fail(pos, "period must be at least 1");
        expect("){");
        std::vector<bool> res(m, false);
        while (pos < t.size() && t[pos] != '}') {
            std::size_t r = number();
            if (r >= m) return fail(pos, "residue out of range");
            res[r] = true;
            if (pos < t.size() && t[pos] == ',') ++pos;
        }
        expect("};N0=");
        std::size_t n0 = number();
        expect(";pre=");
        std::vector<bool> prefix;
        while (pos < t.size() && (t[pos] == '0' || t[pos] == '1')) prefix.push_back(t[pos++] == '1');
        if (pos != t.size()) return fail(pos, "unexpected trailing input");
        if (prefix.size() != n0) return fail(pos, "prefix length differs from N0");
        return EpSet(n0, prefix, res);
    }

private:
    std::size_t n0_ = 0;
    std::vector<bool> prefix_;
    std::vector<bool> residues_;

    void normalize()
    {
        // residues_[j] describes n >= n0 with n = j (mod m); shrink the period
        // to its least divisor that still reproduces the pattern
        const std::size_t m = residues_.size();
        for (std::size_t d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            bool ok = true;
            for (std::size_t j = 0; j < m && ok; ++j) ok = residues_[j] == residues_[j % d];
            if (ok) {
                residues_.resize(d);
                break;
            }
        }
        while (n0_ > 0 && prefix_[n0_ - 1] == residues_[(n0_ - 1) % residues_.size()]) {
            --n0_;
            prefix_.pop_back();
        }
    }
};

inline std::ostream& operator<<(std::ostream& os, const EpSet& s) { return os << s.to_string(); }

} // namespace fermat

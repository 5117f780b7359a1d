#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fermat/hyper/ep_set.hpp"

namespace fermat {

enum class Strategy { PreferIn, PreferOut, EvensFirst, OddsFirst };

inline const char* to_string(Strategy s)
{
    switch (s) {
    case Strategy::PreferIn: return "prefer-in";
    case Strategy::PreferOut: return "prefer-out";
    case Strategy::EvensFirst: return "evens-first";
    case Strategy::OddsFirst: return "odds-first";
    }
    return "?";
}

inline Strategy parse_strategy(const std::string& s)
{
    for (auto st : {Strategy::PreferIn, Strategy::PreferOut, Strategy::EvensFirst, Strategy::OddsFirst}) {
        if (s == to_string(st)) return st;
    }
    throw DomainError("unknown strategy " + s);
}

struct QueryRecord {
    EpSet set;
    bool dominant;
};

struct AuditReport {
    bool ok = true;
    std::string detail;
};

/// Lazily grown fragment of a free ultrafilter on N. Commitments keep an
/// infinite common intersection, so every answer given so far is consistent
/// with some free ultrafilter. Calls are serialized internally; the answers
/// depend only on the strategy and the order of queries.
class FilterOracle {
public:
    explicit FilterOracle(Strategy s = Strategy::PreferIn) : strategy_(s)
    {
        // EvensFirst and OddsFirst pre-commit their residue class, then
        // resolve undecided queries like PreferIn.
        if (s == Strategy::EvensFirst) commit(EpSet::evens());
        if (s == Strategy::OddsFirst) commit(EpSet::odds());
    }

    FilterOracle(const FilterOracle&) = delete;
    FilterOracle& operator=(const FilterOracle&) = delete;

    Strategy strategy() const { return strategy_; }

    bool dominant(const EpSet& s)
    {
        std::lock_guard lock(mutex_);
        bool answer = decide(s);
        records_.push_back({s, answer});
        log_.push_back("Q " + s.to_string() + (answer ? " -> dominant" : " -> rejected"));
        return answer;
    }

    std::vector<EpSet> committed() const
    {
        std::lock_guard lock(mutex_);
        return committed_;
    }

    EpSet core() const
    {
        std::lock_guard lock(mutex_);
        return core_;
    }

    std::vector<std::string> log() const
    {
        std::lock_guard lock(mutex_);
        return log_;
    }

    std::vector<QueryRecord> records() const
    {
        std::lock_guard lock(mutex_);
        return records_;
    }

    /// Re-runs a logged session on a fresh oracle; true when every answer
    /// is reproduced.
    static bool replay(Strategy s, const std::vector<std::string>& log)
    {
        FilterOracle fresh(s);
        for (const auto& line : log) {
            auto arrow = line.find(" -> ");
            if (line.rfind("Q ", 0) != 0 || arrow == std::string::npos) return false;
            EpSet set = EpSet::parse(line.substr(2, arrow - 2));
            bool expected = line.substr(arrow + 4) == "dominant";
            if (fresh.dominant(set) != expected) return false;
        }
        return true;
    }

    /// Checks the ultrafilter axioms on the queried sets.
    AuditReport audit() const
    {
        std::lock_guard lock(mutex_);
        AuditReport r;
        auto fail = [&](const std::string& what) {
            if (r.ok) r.detail = what;
            r.ok = false;
        };
        if (!core_.is_infinite()) fail("committed sets have finite intersection");
        std::map<std::string, QueryRecord> distinct;
        for (const auto& q : records_) {
            auto [it, fresh] = distinct.emplace(q.set.to_string(), q);
            if (!fresh && it->second.dominant != q.dominant) fail("repeated query for " + it->first + " changed its answer");
        }
        auto answered = [&](const EpSet& s) -> std::optional<bool> {
            auto it = distinct.find(s.to_string());
            if (it == distinct.end()) return std::nullopt;
            return it->second.dominant;
        };
        for (const auto& [text, q] : distinct) {
            // core almost inside S, or almost disjoint from it
            bool in = core_.almost_subset_of(q.set);
            bool out = (core_ & q.set).is_finite();
            if (q.dominant != in || in == out) fail("answer for " + text + " is not decided by the commitments");
            if (q.dominant && q.set.is_finite()) fail("finite set " + text + " declared dominant");
            if (!q.dominant && q.set.is_cofinite()) fail("cofinite set " + text + " rejected");
            if (answered(q.set.complement()) == q.dominant) fail("set and complement answered alike");
        }
        for (const auto& [ta, a] : distinct) {
            if (!a.dominant) continue;
            for (const auto& [tb, b] : distinct) {
                if (!b.dominant && a.set.subset_of(b.set)) fail("not closed under supersets");
                if (b.dominant && answered(a.set & b.set) == false) fail("not closed under intersections");
            }
        }
        return r;
    }

private:
    Strategy strategy_;
    std::vector<EpSet> committed_;
    EpSet core_ = EpSet::all();
    std::vector<QueryRecord> records_;
    std::vector<std::string> log_;
    mutable std::mutex mutex_;

    void commit(const EpSet& s)
    {
        committed_.push_back(s);
        core_ = core_ & s;
    }

    bool decide(const EpSet& s)
    {
        if (s.is_finite()) return false;
        if (s.is_cofinite()) return true;
        bool in_possible = (core_ & s).is_infinite();
        bool out_possible = (core_ - s).is_infinite();
        if (!out_possible) return true;
        if (!in_possible) return false;
        if (strategy_ == Strategy::PreferOut) {
            commit(s.complement());
            return false;
        }
        commit(s);
        return true;
    }
};

} // namespace fermat

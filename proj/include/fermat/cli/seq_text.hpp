#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fermat/hyper/seq_expr.hpp"

namespace fermat {

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

/// Splits on `sep` outside brackets and parentheses.
inline std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == sep && depth == 0) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.emplace_back(s.substr(start));
    return out;
}

inline std::size_t parse_count(const std::string& s, std::size_t column)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("expected a natural number", column);
    return static_cast<std::size_t>(std::stoul(s));
}

} // namespace detail

/// Index set: `even`, `odd`, `all`, `none`, `mod(m,r)`, `from(k)` (n >= k),
/// `finite{i,j,...}`, `not <set>`, or the canonical `per(m){...};N0=k;pre=...`.
inline EpSet parse_index_set(std::string_view text)
{
    std::string t = detail::trim(text);
    if (t == "even") return EpSet::evens();
    if (t == "odd") return EpSet::odds();
    if (t == "all") return EpSet::all();
    if (t == "none") return EpSet::empty();
    if (t.rfind("not ", 0) == 0) return parse_index_set(t.substr(4)).complement();
    if (t.rfind("per(", 0) == 0) return EpSet::parse(t);
    auto inner = [&](std::size_t open, char close) {
        if (t.back() != close) throw ParseError(std::string("expected '") + close + "'", t.size());
        return t.substr(open, t.size() - open - 1);
    };
    if (t.rfind("mod(", 0) == 0) {
        auto args = detail::split_top(inner(4, ')'), ',');
        if (args.size() != 2) throw ParseError("mod takes two arguments", 5);
        std::size_t m = detail::parse_count(detail::trim(args[0]), 5), r = detail::parse_count(detail::trim(args[1]), 5);
        if (m == 0 || r >= m) throw ParseError("mod(m,r) needs 0 <= r < m", 5);
        return EpSet::residue(m, r);
    }
    if (t.rfind("from(", 0) == 0) return EpSet::from_threshold(detail::parse_count(detail::trim(inner(5, ')')), 6));
    if (t.rfind("finite{", 0) == 0) {
        std::vector<std::size_t> members;
        std::string body = inner(7, '}');
        if (!detail::trim(body).empty()) {
            for (const auto& a : detail::split_top(body, ',')) members.push_back(detail::parse_count(detail::trim(a), 8));
        }
        return EpSet::finite(members);
    }
    throw ParseError("unknown index set '" + t + "'", 1);
}

/// Sequence text: a power sum such as `2 + 1/(n+1)`, or branches
/// `even: 1/(n+1); odd: -1/(n+1)` whose labels are index sets, with `else`
/// for the remaining indices. A body may start with `(-1)^n`, as in
/// `(-1)^n/(n+1)` or `(-1)^n*(1/2)/(n+1)^2`.
inline SeqExpr parse_seq(std::string_view text)
{
    std::vector<Branch> branches;
    EpSet covered;
    auto body = [](std::string b) -> std::pair<PowerSum, bool> {
        b = detail::trim(b);
        if (b.rfind("(-1)^n", 0) != 0) return {PowerSum::parse(b), false};
        std::string rest = detail::trim(b.substr(6));
        if (rest.empty()) rest = "1";
        else if (rest[0] == '*') rest = rest.substr(1);
        else if (rest[0] == '/') rest = "1" + rest;
        else throw ParseError("expected '*' or '/' after (-1)^n", 7);
        return {PowerSum::parse(rest), true};
    };
    auto parts = detail::split_top(text, ';');
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string part = detail::trim(parts[i]);
        auto colon = detail::split_top(part, ':');
        EpSet where;
        std::string expr;
        if (colon.size() == 1) {
            if (parts.size() != 1) throw ParseError("branch " + std::to_string(i + 1) + " needs a label", 1);
            where = EpSet::all();
            expr = part;
        } else if (colon.size() == 2) {
            std::string label = detail::trim(colon[0]);
            if (label == "else") {
                where = covered.complement();
            } else {
                if (label.size() > 1 && label.front() == '[' && label.back() == ']') label = label.substr(1, label.size() - 2);
                where = parse_index_set(label);
            }
            expr = colon[1];
        } else {
            throw ParseError("too many ':' in branch " + std::to_string(i + 1), 1);
        }
        auto [p, alternating] = body(expr);
        if (alternating) {
            branches.push_back({where & EpSet::evens(), p});
            branches.push_back({where & EpSet::odds(), -p});
        } else {
            branches.push_back({where, p});
        }
        covered = covered | where;
    }
    std::vector<Branch> nonempty;
    for (auto& b : branches) {
        if (!b.where.is_empty()) nonempty.push_back(std::move(b));
    }
    return SeqExpr::piecewise(std::move(nonempty));
}

} // namespace fermat

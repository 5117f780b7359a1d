#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/fermat_real.hpp"

namespace fermat {

/// Reads the decomposition text written by to_string, e.g.
/// `2 - 1/3*dt + dt_3 + 1/2*dt_6/5`. Terms may come in any order.
inline FermatReal parse_fermat(std::string_view text, Mode mode = Mode::exact)
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
    auto fail = [&](const std::string& what) -> FermatReal { throw ParseError(what, pos < col.size() ? col[pos] : text.size() + 1); };
    auto rational = [&]() -> Rational {
        std::size_t start = pos;
        while (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '.')) ++pos;
        if (pos < t.size() && t[pos] == '/' && pos + 1 < t.size() && std::isdigit(static_cast<unsigned char>(t[pos + 1]))) {
            ++pos;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        }
        if (start == pos) {
            fail("expected a number");
        }
        try {
            return Rational::parse(t.substr(start, pos - start));
        } catch (const DomainError&) {
            pos = start;
            fail("malformed number");
        }
        return Rational(0);
    };
    auto lift = [&](const Rational& r) { return mode == Mode::exact ? Scalar(r) : Scalar::approx(r.to_double()); };
    if (t.empty()) return fail("empty input");
    FermatReal x = FermatReal::zero(mode);
    bool first = true;
    while (pos < t.size()) {
        int sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        first = false;
        Rational coef = 1;
        if (pos < t.size() && t.compare(pos, 2, "dt") != 0) {
            coef = rational();
            if (pos < t.size() && t[pos] == '*') {
                ++pos;
                if (t.compare(pos, 2, "dt") != 0) return fail("expected dt after '*'");
            } else {
                x = x + FermatReal(lift(coef * Rational(sign)));
                continue;
            }
        }
        pos += 2; // dt
        Rational order = 1;
        if (pos < t.size() && t[pos] == '_') {
            ++pos;
            order = rational();
        }
        if (order < 1) return fail("order must be at least 1");
        x = x + FermatReal(lift(coef * Rational(sign))) * FermatReal::dt(order, mode);
    }
    return x;
}

} // namespace fermat

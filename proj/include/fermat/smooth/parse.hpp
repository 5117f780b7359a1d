#pragma once

#include <cctype>
#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/smooth/expr.hpp"

namespace fermat {

struct ParsedExpr {
    Expr expr;                      // canonical (simplified) form
    std::vector<std::string> names; // names[i] is variable i
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    ParsedExpr run()
    {
        Expr e = expr();
        skip();
        if (pos_ < s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return finish(e);
    }

private:
    struct Raw {
        std::string name;
        std::size_t column;
    };

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<Raw> seen_; // placeholder index -> name

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr()
    {
        Expr e = term();
        for (;;) {
            if (eat('+')) {
                e = e + term();
            } else if (eat('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term()
    {
        Expr e = unary();
        for (;;) {
            if (eat('*')) {
                e = e * unary();
            } else if (eat('/')) {
                e = e / unary();
            } else {
                return e;
            }
        }
    }

    Expr unary()
    {
        if (eat('-')) {
            return -unary();
        }
        if (eat('+')) {
            return unary();
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (eat('^')) {
            return Expr::pow(base, exponent());
        }
        return base;
    }

    unsigned long exponent()
    {
        skip();
        std::size_t start = pos_;
        unsigned long n = 0;
        if (eat('(')) {
            n = exponent();
            if (!eat(')')) fail("expected ')'");
        } else {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                n = n * 10 + static_cast<unsigned long>(s_[pos_] - '0');
                ++pos_;
            }
            if (pos_ == start) fail("exponent must be a natural number");
        }
        if (eat('^')) {
            unsigned long m = exponent();
            unsigned long r = 1;
            for (unsigned long i = 0; i < m; ++i) r *= n;
            return r;
        }
        return n;
    }

    Expr primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                ++pos_;
            }
            try {
                return Rational::parse(std::string(s_.substr(start, pos_ - start)));
            } catch (const DomainError&) {
                pos_ = start;
                fail("malformed number");
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            std::string id(s_.substr(start, pos_ - start));
            static const std::map<std::string, Kind> functions{
                {"sin", Kind::Sin}, {"cos", Kind::Cos}, {"exp", Kind::Exp}, {"log", Kind::Log}, {"sqrt", Kind::Sqrt}};
            if (auto it = functions.find(id); it != functions.end()) {
                if (!eat('(')) fail("expected '(' after " + id);
                Expr arg = expr();
                if (!eat(')')) fail("expected ')'");
                return Expr::unary(it->second, arg);
            }
            skip();
            if (pos_ < s_.size() && s_[pos_] == '(') fail("unknown function " + id);
            for (std::size_t i = 0; i < seen_.size(); ++i) {
                if (seen_[i].name == id) return Expr::var(i);
            }
            seen_.push_back({id, start + 1});
            return Expr::var(seen_.size() - 1);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    static Expr remap(const Expr& e, const std::vector<std::size_t>& to)
    {
        switch (e.kind()) {
        case Kind::Const: return e;
        case Kind::Var: return Expr::var(to[e.index()]);
        case Kind::PowInt: return Expr::pow(remap(e.kid(), to), e.power());
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: return Expr::binary(e.kind(), remap(e.kid(0), to), remap(e.kid(1), to));
        default: return Expr::unary(e.kind(), remap(e.kid(), to));
        }
    }

    ParsedExpr finish(const Expr& e) const
    {
        static const std::regex indexed("x([1-9][0-9]*)");
        std::size_t n_indexed = 0;
        std::size_t dim = 0;
        for (const auto& r : seen_) {
            std::smatch m;
            if (std::regex_match(r.name, m, indexed)) {
                ++n_indexed;
                dim = std::max(dim, static_cast<std::size_t>(std::stoul(m[1])));
            }
        }
        ParsedExpr out;
        if (n_indexed == 0) {
            for (const auto& r : seen_) out.names.push_back(r.name);
            out.expr = simplify(e);
            return out;
        }
        if (n_indexed != seen_.size()) {
            for (const auto& r : seen_) {
                if (!std::regex_match(r.name, indexed)) {
                    throw ParseError("variable " + r.name + " mixed with indexed variables", r.column);
                }
            }
        }
        std::vector<std::size_t> to;
        for (const auto& r : seen_) to.push_back(std::stoul(r.name.substr(1)) - 1);
        for (std::size_t i = 0; i < dim; ++i) out.names.push_back("x" + std::to_string(i + 1));
        out.expr = simplify(remap(e, to));
        return out;
    }
};

} // namespace detail

/// Parses the infix grammar `+ - * / ^` with sin cos exp log sqrt. `^` takes a
/// natural exponent and binds tighter than unary minus. Variables `x1..xd`
/// map to their index; any other identifiers are numbered by first appearance.
inline ParsedExpr parse_expr_named(std::string_view text)
{
    return detail::ExprParser(text).run();
}

inline Expr parse_expr(std::string_view text)
{
    return parse_expr_named(text).expr;
}

} // namespace fermat

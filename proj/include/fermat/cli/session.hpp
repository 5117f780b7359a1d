#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fermat/cli/plot.hpp"
#include "fermat/cli/seq_text.hpp"
#include "fermat/hyper/hyper_frac.hpp"
#include "fermat/smooth/ext.hpp"
#include "fermat/smooth/parse.hpp"

namespace fermat {

/// A function value: an inline expression, a named primitive, or abs
/// (which has no smooth expression and is stored without one).
struct InlineFn {
    std::optional<Expr> expr;
    std::vector<std::string> names;
    std::string label = "ans";
};

struct Text {
    std::string s;
};

using Value = std::variant<FermatReal, Hyper, HyperFrac, InlineFn, bool, Text>;

inline std::string render_payload(const Value& v)
{
    struct {
        std::string operator()(const FermatReal& x) const { return to_string(x); }
        std::string operator()(const Hyper& x) const { return x.to_string(); }
        std::string operator()(const HyperFrac& x) const { return x.to_string(); }
        std::string operator()(bool b) const { return b ? "1" : "0"; }
        std::string operator()(const Text& t) const { return t.s; }
        std::string operator()(const InlineFn& f) const
        {
            std::string args;
            for (std::size_t i = 0; i < f.names.size(); ++i) args += (i ? "," : "") + f.names[i];
            std::string body = f.expr ? to_string(*f.expr, f.names) : f.label + "(" + args + ")";
            return "Inline function: " + f.label + "(" + args + ") = " + body;
        }
    } visit;
    return std::visit(visit, v);
}

/// 1 for malformed input, 3 for file trouble, 2 for everything the
/// modules reject.
inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e)) return 1;
    if (dynamic_cast<const IoError*>(&e)) return 3;
    return 2;
}

namespace detail {

struct Token {
    enum Kind { Num, Ident, Str, Op, End } kind;
    std::string text;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        char c = s[i];
        std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            std::string num(s.substr(i, j - i));
            if (num.front() == '.') num = "0" + num;
            if (num.back() == '.') num.pop_back();
            out.push_back({Token::Num, num, col});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && is_ident(s[j])) ++j;
            out.push_back({Token::Ident, std::string(s.substr(i, j - i)), col});
            i = j;
        } else if (c == '\'') {
            std::string body;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= s.size()) throw ParseError("unterminated string", col);
                if (s[j] == '\'') {
                    if (j + 1 < s.size() && s[j + 1] == '\'') {
                        body += '\'';
                        ++j;
                        continue;
                    }
                    break;
                }
                body += s[j];
            }
            out.push_back({Token::Str, body, col});
            i = j + 1;
        } else {
            std::string two(s.substr(i, 2));
            if (two == "==" || two == "~=" || two == "!=" || two == "<=" || two == ">=") {
                out.push_back({Token::Op, two == "!=" ? "~=" : two, col});
                i += 2;
            } else if (std::string_view("+-*/^(),;<>=").find(c) != std::string_view::npos) {
                out.push_back({Token::Op, std::string(1, c), col});
                ++i;
            } else {
                throw ParseError(std::string("unexpected '") + c + "'", col);
            }
        }
    }
    out.push_back({Token::End, "", s.size() + 1});
    return out;
}

/// `plot(...) > file`: the file name is raw text, so it is cut off before
/// tokenizing. Any other line comes back whole.
inline std::pair<std::string, std::optional<std::string>> split_redirect(std::string_view line)
{
    std::string t = trim(line);
    if (t.rfind("plot", 0) != 0) return {std::string(line), std::nullopt};
    std::size_t i = 4;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    if (i >= t.size() || t[i] != '(') return {std::string(line), std::nullopt};
    int depth = 0;
    bool quoted = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '\'') quoted = !quoted;
        if (quoted) continue;
        if (t[i] == '(') ++depth;
        if (t[i] == ')' && --depth == 0) break;
    }
    if (i >= t.size()) return {std::string(line), std::nullopt};
    std::string rest = trim(std::string_view(t).substr(i + 1));
    if (rest.empty() || rest[0] != '>') return {std::string(line), std::nullopt};
    std::string path = trim(std::string_view(rest).substr(1));
    if (path.empty()) throw ParseError("expected a file name after '>'", line.size() + 1);
    return {t.substr(0, i + 1), path};
}

inline std::string strip_column(const std::string& what)
{
    auto at = what.rfind(" at column ");
    return at == std::string::npos ? what : what.substr(0, at);
}

} // namespace detail

/// A calculator workspace: named values, a scalar mode, and one filter
/// oracle shared by every sequence comparison made in the session.
class Session {
public:
    explicit Session(Mode mode = Mode::exact, Strategy strategy = Strategy::PreferIn, PlotFormat format = PlotFormat::csv)
        : mode_(mode), format_(format), oracle_(std::make_unique<FilterOracle>(strategy))
    {
    }

    Mode mode() const { return mode_; }
    PlotFormat format() const { return format_; }
    FilterOracle& oracle() { return *oracle_; }

    const Value* lookup(const std::string& name) const
    {
        auto it = vars_.find(name);
        return it == vars_.end() ? nullptr : &it->second;
    }

    void bind(const std::string& name, Value v)
    {
        if (auto f = std::get_if<InlineFn>(&v)) f->label = name;
        vars_.insert_or_assign(name, std::move(v));
    }

    /// Evaluates one line and returns what the workspace would display:
    /// `name =` and the payload on the next line, or nothing for blank
    /// lines, comments, a trailing `;` or a redirected plot.
    std::string eval_line(std::string_view line)
    {
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '%' || t[0] == '#') return "";
        auto [head, path] = detail::split_redirect(line);
        Line p(*this, detail::tokenize(head), std::move(path));
        return p.statement();
    }

    /// The line echoed after a `>> ` prompt, then its output.
    std::string transcript_line(std::string_view line) { return ">> " + std::string(line) + "\n" + eval_line(line); }

private:
    Mode mode_;
    PlotFormat format_;
    std::unique_ptr<FilterOracle> oracle_;
    std::map<std::string, Value> vars_;

    static bool is_primitive(const std::string& n)
    {
        return n == "sin" || n == "cos" || n == "exp" || n == "log" || n == "sqrt" || n == "abs";
    }

    static InlineFn primitive(const std::string& n)
    {
        InlineFn f{std::nullopt, {"x"}, n};
        Expr x = Expr::var(0);
        if (n == "sin") f.expr = sin(x);
        if (n == "cos") f.expr = cos(x);
        if (n == "exp") f.expr = exp(x);
        if (n == "log") f.expr = log(x);
        if (n == "sqrt") f.expr = sqrt(x);
        return f;
    }

    FermatReal literal(const Rational& r) const
    {
        return mode_ == Mode::exact ? FermatReal(Scalar(r)) : FermatReal(Scalar::approx(r.to_double()));
    }

    // Recursive descent over one line, evaluating as it goes.
    class Line {
    public:
        Line(Session& s, std::vector<detail::Token> toks, std::optional<std::string> path) : s_(s), t_(std::move(toks)), path_(std::move(path)) {}

        std::string statement()
        {
            if (peek().kind == detail::Token::End) return "";
            if (peek().kind == detail::Token::Ident && peek().text == "plot" && peek(1).text == "(") return plot_statement();
            if (path_) throw ParseError("only plot output can be redirected", t_.back().column);
            std::string target = "ans";
            if (peek().kind == detail::Token::Ident && peek(1).kind == detail::Token::Op && peek(1).text == "=") {
                target = peek().text;
                if (is_builtin(target)) throw ParseError("cannot assign to builtin '" + target + "'", peek().column);
                pos_ += 2;
            }
            Value v = expr();
            bool quiet = accept(";");
            expect_end();
            s_.bind(target, std::move(v));
            if (quiet) return "";
            return target + " =\n" + render_payload(*s_.lookup(target)) + "\n";
        }

    private:
        Session& s_;
        std::vector<detail::Token> t_;
        std::optional<std::string> path_;
        std::size_t pos_ = 0;

        const detail::Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }

        bool accept(const char* op)
        {
            if (peek().kind == detail::Token::Op && peek().text == op) {
                ++pos_;
                return true;
            }
            return false;
        }

        void expect(const char* op)
        {
            if (!accept(op)) throw ParseError(std::string("expected '") + op + "'", peek().column);
        }

        void expect_end()
        {
            if (peek().kind != detail::Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().column);
        }

        static bool is_builtin(const std::string& n)
        {
            static const char* names[] = {"dt", "decomposition", "ext", "inline", "abs", "log", "exp", "sin", "cos", "sqrt",
                                          "isreal", "isinfinitesimal", "isinvertible", "isinfinite", "st", "hst", "order",
                                          "orders", "plot", "seq", "dominant", "heq", "hle", "hlt", "strategy"};
            for (const char* b : names) {
                if (n == b) return true;
            }
            return false;
        }

        template <class F>
        static Value guarded(const std::string& op, F f)
        {
            try {
                return f();
            } catch (const ParseError&) {
                throw;
            } catch (const IoError&) {
                throw;
            } catch (const Error& e) {
                std::string what = e.what();
                throw DomainError(what.rfind(op + ": ", 0) == 0 ? what : op + ": " + what);
            }
        }

        // plot(delta, x[, samples]) [> path]
        std::string plot_statement()
        {
            pos_ += 2;
            std::vector<Value> args = arguments();
            expect_end();
            const auto& path = path_;
            if (args.size() < 2 || args.size() > 3) throw ParseError("plot takes 2 or 3 arguments", t_[0].column);
            std::ostringstream out;
            guarded("plot", [&]() -> Value {
                Rational delta = real_arg(args[0]);
                if (delta.sign() <= 0) throw DomainError("delta must be positive");
                const FermatReal& x = fermat_arg(args[1]);
                std::size_t samples = 100;
                if (args.size() == 3) {
                    Rational n = real_arg(args[2]);
                    if (!n.is_integer() || n.sign() <= 0 || !n.num().fits_ulong_p()) throw DomainError("samples must be a positive integer");
                    samples = n.num().get_ui();
                }
                if (path) {
                    emit_plot(*path, x, delta, samples, s_.format_);
                } else {
                    emit_plot(out, x, delta, samples, s_.format_);
                }
                return true;
            });
            return out.str();
        }

        std::vector<Value> arguments()
        {
            std::vector<Value> args;
            if (accept(")")) return args;
            do {
                args.push_back(expr());
            } while (accept(","));
            expect(")");
            return args;
        }

        Value expr()
        {
            Value a = additive();
            static const char* cmps[] = {"==", "~=", "<=", ">=", "<", ">"};
            for (const char* op : cmps) {
                if (accept(op)) {
                    Value b = additive();
                    return compare_values(op, a, b);
                }
            }
            return a;
        }

        Value additive()
        {
            Value a = multiplicative();
            for (;;) {
                if (accept("+")) {
                    a = arith('+', a, multiplicative());
                } else if (accept("-")) {
                    a = arith('-', a, multiplicative());
                } else {
                    return a;
                }
            }
        }

        Value multiplicative()
        {
            Value a = unary();
            for (;;) {
                if (accept("*")) {
                    a = arith('*', a, unary());
                } else if (accept("/")) {
                    a = arith('/', a, unary());
                } else {
                    return a;
                }
            }
        }

        Value unary()
        {
            if (accept("-")) return negate(unary());
            if (accept("+")) return unary();
            return power();
        }

        Value power()
        {
            Value a = primary();
            if (accept("^")) {
                bool neg = accept("-");
                Value k = primary();
                return guarded("power", [&]() -> Value {
                    Rational e = real_arg(k);
                    if (neg) e = -e;
                    return raise(a, e);
                });
            }
            return a;
        }

        Value primary()
        {
            const detail::Token tok = peek();
            switch (tok.kind) {
            case detail::Token::Num:
                ++pos_;
                return s_.literal(Rational::parse(tok.text));
            case detail::Token::Str:
                ++pos_;
                return Text{tok.text};
            case detail::Token::Ident:
                ++pos_;
                if (accept("(")) return call(tok);
                if (auto v = s_.lookup(tok.text)) return *v;
                if (is_primitive(tok.text)) return primitive(tok.text);
                throw ParseError("undefined name '" + tok.text + "'", tok.column);
            case detail::Token::Op:
                if (accept("(")) {
                    Value v = expr();
                    expect(")");
                    return v;
                }
                throw ParseError("unexpected '" + tok.text + "'", tok.column);
            case detail::Token::End:
                break;
            }
            throw ParseError("unexpected end of input", tok.column);
        }

        // --- argument coercion -------------------------------------------

        static const FermatReal& fermat_arg(const Value& v)
        {
            if (auto x = std::get_if<FermatReal>(&v)) return *x;
            throw DomainError("expected a Fermat real, got " + render_payload(v));
        }

        static Rational real_arg(const Value& v)
        {
            const FermatReal& x = fermat_arg(v);
            if (!x.is_real()) throw DomainError("expected a standard real, got " + to_string(x));
            return x.st().is_exact() ? x.st().exact() : Rational::approximate(x.st().to_double());
        }

        static const std::string& text_arg(const Value& v)
        {
            if (auto t = std::get_if<Text>(&v)) return t->s;
            throw DomainError("expected a quoted string, got " + render_payload(v));
        }

        static bool is_hyper(const Value& v) { return std::holds_alternative<Hyper>(v) || std::holds_alternative<HyperFrac>(v); }

        static Hyper hyper_arg(const Value& v)
        {
            if (auto h = std::get_if<Hyper>(&v)) return *h;
            if (auto x = std::get_if<FermatReal>(&v)) {
                if (x->is_real() && x->st().is_exact()) return Hyper(x->st().exact());
                throw DomainError("cannot combine " + to_string(*x) + " with a sequence");
            }
            throw DomainError("expected a sequence, got " + render_payload(v));
        }

        static HyperFrac frac_arg(const Value& v)
        {
            if (auto f = std::get_if<HyperFrac>(&v)) return *f;
            return HyperFrac(hyper_arg(v));
        }

        static std::pair<FermatReal, FermatReal> promoted(const FermatReal& a, const FermatReal& b)
        {
            if (a.mode() == b.mode()) return {a, b};
            return {a.in_mode(Mode::approx), b.in_mode(Mode::approx)};
        }

        // --- operators ---------------------------------------------------

        Value negate(const Value& a)
        {
            return guarded("uminus", [&]() -> Value {
                if (auto x = std::get_if<FermatReal>(&a)) return -*x;
                if (auto h = std::get_if<Hyper>(&a)) return -*h;
                if (auto f = std::get_if<HyperFrac>(&a)) return -*f;
                throw DomainError("cannot negate " + render_payload(a));
            });
        }

        Value arith(char op, const Value& a, const Value& b)
        {
            static const std::map<char, std::string> names = {{'+', "plus"}, {'-', "minus"}, {'*', "mtimes"}, {'/', "mrdivide"}};
            return guarded(names.at(op), [&]() -> Value {
                if (!is_hyper(a) && !is_hyper(b)) {
                    auto [x, y] = promoted(fermat_arg(a), fermat_arg(b));
                    switch (op) {
                    case '+': return x + y;
                    case '-': return x - y;
                    case '*': return x * y;
                    default: return x / y;
                    }
                }
                FilterOracle& o = s_.oracle();
                if (std::holds_alternative<HyperFrac>(a) || std::holds_alternative<HyperFrac>(b) || op == '/') {
                    HyperFrac x = frac_arg(a), y = frac_arg(b);
                    switch (op) {
                    case '+': return x + y;
                    case '-': return x - y;
                    case '*': return x * y;
                    default: return frac_div(o, x, y);
                    }
                }
                Hyper x = hyper_arg(a), y = hyper_arg(b);
                switch (op) {
                case '+': return x + y;
                case '-': return x - y;
                default: return x * y;
                }
            });
        }

        Value raise(const Value& a, const Rational& e)
        {
            if (!e.is_integer() || !e.num().fits_slong_p()) throw DomainError("exponent must be an integer");
            long k = e.num().get_si();
            if (auto x = std::get_if<FermatReal>(&a)) {
                FermatReal p = pow(*x, static_cast<unsigned long>(k < 0 ? -k : k));
                return k < 0 ? invert(p) : p;
            }
            if (k < 0) throw DomainError("negative powers of sequences are not supported");
            Hyper h = hyper_arg(a), p(1);
            for (long i = 0; i < k; ++i) p = p * h;
            return p;
        }

        Value compare_values(const std::string& op, const Value& a, const Value& b)
        {
            return guarded(op == "==" ? "eq" : op == "~=" ? "ne" : op == "<" ? "lt" : op == "<=" ? "le" : op == ">" ? "gt" : "ge", [&]() -> Value {
                int c;
                bool eq;
                if (!is_hyper(a) && !is_hyper(b)) {
                    auto [x, y] = promoted(fermat_arg(a), fermat_arg(b));
                    c = compare(x, y);
                    eq = x == y;
                } else {
                    FilterOracle& o = s_.oracle();
                    HyperFrac x = frac_arg(a), y = frac_arg(b);
                    // sign of x - y is the sign of (u_x v_y - u_y v_x) v_x v_y
                    Hyper d = (x.num() * y.den() - y.num() * x.den()) * x.den() * y.den();
                    eq = hyper_eq(o, d, Hyper(0));
                    c = eq ? 0 : hyper_lt(o, d, Hyper(0)) ? -1 : 1;
                }
                if (op == "==") return eq;
                if (op == "~=") return !eq;
                if (op == "<") return c < 0;
                if (op == "<=") return c <= 0;
                if (op == ">") return c > 0;
                return c >= 0;
            });
        }

        // --- builtin functions -------------------------------------------

        Value call(const detail::Token& fn)
        {
            std::size_t arg_col = peek().column;
            std::vector<Value> args = arguments();
            const std::string& n = fn.text;
            if (auto v = s_.lookup(n)) {
                if (auto f = std::get_if<InlineFn>(v)) return apply(n, *f, args);
                throw ParseError("'" + n + "' is not a function", fn.column);
            }
            auto arity = [&](std::size_t lo, std::size_t hi) {
                if (args.size() < lo || args.size() > hi) {
                    throw ParseError(n + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                                         " argument" + (hi == 1 ? "" : "s"),
                                     fn.column);
                }
            };
            if (is_primitive(n)) {
                arity(1, 1);
                return apply(n, primitive(n), args);
            }
            if (n == "dt") {
                arity(1, 1);
                return guarded(n, [&]() -> Value { return FermatReal::dt(real_arg(args[0]), s_.mode_); });
            }
            if (n == "decomposition") {
                arity(1, 1);
                return guarded(n, [&]() -> Value { return fermat_arg(args[0]); });
            }
            if (n == "ext") {
                if (args.empty()) throw ParseError("ext needs a function", fn.column);
                auto f = std::get_if<InlineFn>(&args[0]);
                if (!f) throw DomainError("ext: first argument must be a function, got " + render_payload(args[0]));
                return apply("ext", *f, std::vector<Value>(args.begin() + 1, args.end()));
            }
            if (n == "inline") {
                arity(1, 1);
                const std::string& body = text_arg(args[0]);
                try {
                    ParsedExpr p = parse_expr_named(body);
                    return InlineFn{p.expr, p.names.empty() ? std::vector<std::string>{"x"} : p.names};
                } catch (const ParseError& e) {
                    throw ParseError("inline: " + detail::strip_column(e.what()), arg_col + e.column());
                }
            }
            if (n == "seq") {
                arity(1, 1);
                const std::string& body = text_arg(args[0]);
                try {
                    return guarded(n, [&]() -> Value { return Hyper(parse_seq(body)); });
                } catch (const ParseError& e) {
                    throw ParseError("seq: " + detail::strip_column(e.what()), arg_col + e.column());
                }
            }
            if (n == "dominant") {
                arity(1, 1);
                const std::string& body = text_arg(args[0]);
                try {
                    return s_.oracle().dominant(parse_index_set(body));
                } catch (const ParseError& e) {
                    throw ParseError("dominant: " + detail::strip_column(e.what()), arg_col + e.column());
                }
            }
            if (n == "strategy") {
                arity(0, 1);
                return guarded(n, [&]() -> Value {
                    if (!args.empty()) s_.oracle_ = std::make_unique<FilterOracle>(parse_strategy(text_arg(args[0])));
                    return Text{to_string(s_.oracle_->strategy())};
                });
            }
            if (n == "heq" || n == "hle" || n == "hlt") {
                arity(2, 2);
                return compare_values(n == "heq" ? "==" : n == "hle" ? "<=" : "<", args[0], args[1]);
            }
            arity(1, 1);
            const Value& a = args[0];
            return guarded(n, [&]() -> Value {
                FilterOracle& o = s_.oracle();
                if (n == "st" || n == "hst") {
                    if (auto x = std::get_if<FermatReal>(&a)) return FermatReal(x->st());
                    if (auto h = std::get_if<Hyper>(&a)) return s_.literal(st_hyper(*h));
                    auto r = frac_st(o, frac_arg(a));
                    if (!r) throw DomainError(render_payload(a) + " has no standard part");
                    return s_.literal(*r);
                }
                if (n == "order") return FermatReal(Scalar(fermat_arg(a).order()));
                if (n == "orders") {
                    const FermatReal& x = fermat_arg(a);
                    if (x.is_real()) return Text{"0"};
                    std::string out = "[";
                    for (const auto& w : x.orders()) out += (out.size() > 1 ? " " : "") + w.to_string();
                    return Text{out + "]"};
                }
                if (n == "isreal") {
                    if (auto x = std::get_if<FermatReal>(&a)) return x->is_real();
                    Hyper h = hyper_arg(a);
                    return hyper_eq(o, h, Hyper(st_hyper(h)));
                }
                if (n == "isinfinitesimal") {
                    if (auto x = std::get_if<FermatReal>(&a)) return x->is_infinitesimal();
                    if (auto h = std::get_if<Hyper>(&a)) return is_infinitesimal_hyper(o, *h);
                    auto r = frac_st(o, frac_arg(a));
                    return r && r->is_zero() && !is_infinite_frac(o, frac_arg(a));
                }
                if (n == "isinvertible") {
                    if (auto x = std::get_if<FermatReal>(&a)) return x->is_invertible();
                    return !hyper_eq(o, frac_arg(a).num(), Hyper(0));
                }
                if (n == "isinfinite") {
                    if (std::holds_alternative<FermatReal>(a)) return false;
                    return is_infinite_frac(o, frac_arg(a));
                }
                throw DomainError("unknown function");
            });
        }

        Value apply(const std::string& op, const InlineFn& f, const std::vector<Value>& args)
        {
            return guarded(op, [&]() -> Value {
                if (args.size() != f.names.size()) {
                    throw DomainError(f.label + " takes " + std::to_string(f.names.size()) + " argument" + (f.names.size() == 1 ? "" : "s"));
                }
                std::vector<FermatReal> xs;
                for (const auto& a : args) xs.push_back(fermat_arg(a));
                if (!f.expr) return fabs(xs[0]);
                Mode m = xs.empty() ? s_.mode_ : xs[0].mode();
                for (const auto& x : xs) {
                    if (x.mode() != m) m = Mode::approx;
                }
                for (auto& x : xs) x = x.in_mode(m);
                return ext_apply(*f.expr, std::span<const FermatReal>(xs));
            });
        }
    };
};

/// Feeds every line of `in` to the session. Errors go to `err` as
/// `error: ...`; with stop_on_error the first one ends the run. Returns the
/// exit code of the first error, or 0.
inline int run_script(Session& s, std::istream& in, std::ostream& out, std::ostream& err, bool transcript, bool stop_on_error)
{
    int code = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            if (transcript) out << ">> " << line << '\n';
            out << s.eval_line(line);
        } catch (const std::exception& e) {
            out.flush();
            err << "error: " << e.what() << '\n';
            if (code == 0) code = exit_code_for(e);
            if (stop_on_error) break;
        }
    }
    out.flush();
    return code;
}

} // namespace fermat

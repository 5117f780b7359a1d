// One line per acceptance criterion: PASS/FAIL, elapsed time, detail.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "fermat/cli/fermat_text.hpp"
#include "fermat/cli/session.hpp"
#include "fermat/representative.hpp"
#include "support/expr_gen.hpp"
#include "support/hyper_gen.hpp"
#include "support/oracles.hpp"
#include "support/set_gen.hpp"

using namespace fermat;
using fermat::testkit::Engine;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class... Parts>
void require(bool ok, const Parts&... parts)
{
    if (ok) return;
    std::ostringstream os;
    (os << ... << parts);
    throw Failure(os.str());
}

FermatReal dt(long a, long b = 1) { return FermatReal::dt(Rational(a, b)); }
FermatReal q(long a, long b = 1) { return FermatReal(Rational(a, b)); }

const Strategy all_strategies[] = {Strategy::PreferIn, Strategy::PreferOut, Strategy::EvensFirst, Strategy::OddsFirst};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read ", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run_command(const std::string& cmd, int& status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    require(p != nullptr, "cannot run ", cmd);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    status = pclose(p);
    return out;
}

// ------------------------------------------------------------------ 1

std::string golden_transcript()
{
    const std::string want = slurp(FERMAT_DEMOS_DIR "/matlab_session.golden");
    int status = 0;
    std::string got = run_command(std::string("\"") + FERMAT_CLI + "\" --batch " FERMAT_DEMOS_DIR "/matlab_session.txt --transcript", status);
    require(status == 0, "cli exited with status ", status);
    require(got == want, "transcript differs:\n", got);

    const std::string quotient = "dt_3 + 2*dt_2 + 1/2*dt_6/5 + 5/6*dt";
    require(got.find("x =\ndt_3 + 2*dt_2\n") != std::string::npos, "payload of x");
    require(got.find("ans =\n" + quotient + "\n") != std::string::npos, "payload of the quotient");

    // sign of the dt_6/5 term by term-by-term expansion of sin(x) * (1/cos(y))
    FermatReal x = dt(3) + q(2) * dt(2), y = -dt(4) - q(4) * dt(1);
    FermatReal expansion = testkit::oracle_mul(testkit::oracle_series(testkit::sin_series(8), x),
                                               testkit::oracle_invert(testkit::oracle_series(testkit::cos_series(8), y)));
    require(expansion == parse_fermat(quotient), "expansion gives ", expansion);
    require(expansion.coefficient(Rational(6, 5)).exact() == Rational(1, 2), "dt_6/5 coefficient");
    return "transcript byte-identical; expansion confirms +1/2*dt_6/5";
}

// ------------------------------------------------------------------ 2

std::string dt_laws()
{
    Engine rng(2001);
    for (int i = 0; i < 500; ++i) {
        Rational a = testkit::random_order(rng), b = testkit::random_order(rng);
        Rational w = a * b / (a + b);
        FermatReal expected = w >= 1 ? FermatReal::dt(w) : FermatReal();
        require(FermatReal::dt(a) * FermatReal::dt(b) == expected, "dt_", a, " * dt_", b);
        require(testkit::oracle_mul(FermatReal::dt(a), FermatReal::dt(b)) == expected, "little-oh product dt_", a, " * dt_", b);
    }
    for (int i = 0; i < 500; ++i) {
        Rational a = testkit::random_order(rng);
        auto p = static_cast<unsigned long>(testkit::uniform_int(rng, 1, 6));
        Rational w = a / Rational(static_cast<long>(p));
        FermatReal expected = w >= 1 ? FermatReal::dt(w) : FermatReal();
        require(pow(FermatReal::dt(a), p) == expected, "(dt_", a, ")^", p);
        require(testkit::oracle_pow(FermatReal::dt(a), static_cast<unsigned>(p)) == expected, "little-oh power (dt_", a, ")^", p);
        // exponents p >= 1: the representative of the result is the p-th
        // power of the representative, or o(1/n) when the result is zero
        Rational r = testkit::random_order(rng, 7, 3);
        FermatReal tp = term_pow(a, r);
        if (a / r >= 1) {
            require(tp == FermatReal::dt(a / r), "term_pow(", a, ", ", r, ")");
            mpz_class L = lcm(exponent_lcm(FermatReal::dt(a)), exponent_lcm(tp));
            L = lcm(L, r.den());
            for (unsigned long m : {2ul, 3ul}) {
                if (L > 40) break;
                auto n = exact_index(m, L);
                auto base = exact_pow(sample_exact(FermatReal::dt(a), n), r);
                require(base && *base == sample_exact(tp, n), "representative of term_pow(", a, ", ", r, ") at n=", n);
            }
        } else {
            require(tp.is_zero(), "term_pow(", a, ", ", r, ") should vanish");
            require(r > a, "vanishing needs exponent r/a > 1");
        }
    }
    for (int i = 0; i < 500; ++i) {
        long d = testkit::uniform_int(rng, 2, 9);
        Rational a(testkit::uniform_int(rng, 1, d - 1), d);
        require(FermatReal::dt(a).is_zero(), "dt_", a, " should be zero");
        require(testkit::oracle_mul(FermatReal::dt(a), q(1)).is_zero(), "little-oh dt_", a);
    }
    return "1500 exact instances";
}

// ------------------------------------------------------------------ 3

std::string nilpotency()
{
    Engine rng(3001);
    for (int i = 0; i < 500; ++i) {
        auto x = testkit::random_fermat(rng, 3);
        auto k = static_cast<unsigned long>(testkit::uniform_int(rng, 2, 6));
        FermatReal brute = testkit::oracle_pow(x, static_cast<unsigned>(k));
        require(nilpotent_power_is_zero(x, k) == brute.is_zero(), x, " ^ ", k);
        require(pow(x, k) == brute, "power ", x, " ^ ", k);
    }
    for (int i = 0; i < 200; ++i) {
        auto n = static_cast<std::size_t>(testkit::uniform_int(rng, 1, 3));
        std::vector<FermatReal> hs;
        std::vector<unsigned long> exps;
        FermatReal product(1);
        for (std::size_t k = 0; k < n; ++k) {
            hs.push_back(testkit::random_nonzero_infinitesimal(rng));
            exps.push_back(static_cast<unsigned long>(testkit::uniform_int(rng, 0, 3)));
            product = testkit::oracle_mul(product, testkit::oracle_pow(hs.back(), static_cast<unsigned>(exps.back())));
        }
        auto v = power_product_decision(hs, exps);
        require(v.is_zero == product.is_zero(), "product verdict, instance ", i);
        if (!product.is_zero() && !product.is_real()) {
            require(v.order && *v.order == product.order(), "product order, instance ", i);
        }
    }
    return "500 powers, 200 products";
}

// ------------------------------------------------------------------ 4

std::string order_decision()
{
    Engine rng(4001);
    int checked = 0;
    while (checked < 300) {
        auto x = testkit::random_fermat(rng, 3);
        auto y = testkit::coin(rng, 0.3) ? x + testkit::random_infinitesimal(rng, 2) : testkit::random_fermat(rng, 3);
        auto d = x - y;
        int verdict = compare(x, y);
        if (d.is_zero()) {
            require(verdict == 0, x, " vs itself");
            ++checked;
            continue;
        }
        auto L = exponent_lcm(d);
        if (L > 12) continue;
        Rational u0 = testkit::crossover_u(d, L);
        unsigned long m0 = (Rational(1) / u0).floor().get_ui() + 1;
        std::vector<unsigned long> ms;
        for (unsigned long k : {1ul, 2ul, 3ul, 5ul, 8ul}) ms.push_back(m0 * k + 1);
        for (int s : testkit::sampled_signs(d, ms, L)) require(s == verdict, x, " vs ", y);
        ++checked;
    }
    return "300 pairs, 5 exact indices each";
}

// ------------------------------------------------------------------ 5

std::string taylor()
{
    Engine rng(5001);
    const Expr X = Expr::var(0);
    for (int i = 0; i < 100; ++i) {
        auto degree = testkit::uniform_int(rng, 0, 5);
        Expr f(0);
        std::vector<Rational> c;
        for (long k = 0; k <= degree; ++k) {
            c.push_back(testkit::small_rational(rng));
            f = f + Expr(c.back()) * pow(X, static_cast<unsigned long>(k));
        }
        Rational x0 = testkit::small_rational(rng);
        Rational slope = 0;
        for (long k = 1; k <= degree; ++k) slope += Rational(k) * c[static_cast<std::size_t>(k)] * pow(x0, k - 1);
        require(derivative_at(f, Scalar(x0)).exact() == slope, "derivative of polynomial ", i);
    }
    std::uniform_real_distribution<double> u(0.1, 3.0);
    struct Fn {
        Expr f;
        double (*value)(double);
        double (*slope)(double);
    };
    const Fn fns[] = {{sin(X), [](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }},
                      {cos(X), [](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); }},
                      {exp(X), [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }},
                      {log(X), [](double t) { return std::log(t); }, [](double t) { return 1 / t; }}};
    for (const auto& fn : fns) {
        for (int i = 0; i < 20; ++i) {
            double x = u(rng);
            double m = derivative_at(fn.f, Scalar::approx(x)).to_double();
            const double h = 1e-6;
            double central = (fn.value(x + h) - fn.value(x - h)) / (2 * h);
            require(std::fabs(m - fn.slope(x)) <= 1e-9, to_string(fn.f), " at ", x);
            require(std::fabs(m - central) <= 1e-6, to_string(fn.f), " vs central difference at ", x);
        }
    }
    // f(x, t) = t^2 at t = dt vanishes
    std::vector<FermatReal> args{q(3), dt(1)};
    require(ext_apply(pow(Expr::var(1), 2), args).is_zero(), "tau^2 = 0");
    // 1/sqrt(1 - v^2) at v = beta*dt_2 is 1 + beta^2/2 * dt
    auto gamma = Expr(1) / sqrt(Expr(1) - pow(X, 2));
    for (long b : {1, 2, 3, -5}) {
        for (long d : {1, 2, 7}) {
            Rational beta(b, d);
            require(ext_apply(gamma, {FermatReal(beta) * dt(2)}) == q(1) + FermatReal(beta * beta / 2) * dt(1), "Lorentz beta=", beta);
        }
    }
    int cases = 0;
    while (cases < 100) {
        std::size_t d = 1 + static_cast<std::size_t>(cases % 2);
        auto f = cases % 2 == 0 ? testkit::random_poly(rng, d) : testkit::random_smooth(rng, d, 2);
        std::vector<FermatReal> xs;
        for (std::size_t k = 0; k < d; ++k) xs.push_back(testkit::random_infinitesimal(rng, 2));
        DerivativeTable table(f);
        FermatReal base;
        try {
            base = ext_apply(table, xs);
        } catch (const EvalError&) {
            continue;
        }
        require(ext_apply(table, xs, 1) == base && ext_apply(table, xs, 2) == base, "truncation of ", to_string(f));
        ++cases;
    }
    return "100 exact derivatives, 80 transcendental, Einstein, Lorentz, 100 truncations";
}

// ------------------------------------------------------------------ 6

std::string set_transfer()
{
    using namespace testkit;
    Engine rng(6001);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_set(rng), b = random_set(rng);
        if (coin(rng, 0.3)) b = set_union(a, b);
        auto un = set_union(a, b), in = intersect(a, b), df = int_diff(a, b);
        bool included = true, a_empty = true;
        for (const auto& st : interesting_points({a, b, df})) {
            auto x = dress(rng, st);
            bool xa = member_ext(x, a), xb = member_ext(x, b);
            require(member_ext(x, un) == (xa || xb), "union at ", x);
            require(member_ext(x, in) == (xa && xb), "intersection at ", x);
            require(member_ext(x, df) == (xa && !in_closure(b, st)), "interior difference at ", x);
            require(!member_ext(x, OpenSet::empty()), "empty set at ", x);
            included = included && (!xa || xb);
            a_empty = a_empty && !xa;
        }
        require(subset(a, b) == included, "inclusion ", a, " vs ", b);
        require(a.is_empty() == a_empty, "emptiness of ", a);
        require((a == b) == (subset(a, b) && subset(b, a)), "equality ", a, " vs ", b);
    }
    for (int trial = 0; trial < 500; ++trial) {
        auto inst = random_instance(rng);
        auto ex = project_exists(inst.c);
        std::vector<Rational> ys = grid(inst.b, 12);
        for (const auto& a : grid(inst.a, 4)) {
            auto x = dress(rng, a);
            bool found = false;
            for (const auto& y : ys) found = found || inst.c.contains(a, y);
            require(member_ext(x, ex) == found, "exists-projection at ", a);
        }
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = random_instance(rng);
        auto all = project_forall(inst.c, inst.a, inst.b);
        std::vector<Rational> ys;
        for (const auto& b : grid(inst.b, 60)) {
            if (!is_endpoint(b, inst, false)) ys.push_back(b);
        }
        for (const auto& a : grid(inst.a, 12)) {
            if (is_endpoint(a, inst, true)) continue;
            bool every = true;
            for (const auto& b : ys) every = every && inst.c.contains(a, b);
            require(all.contains(a) == every, "forall-projection at ", a);
        }
    }
    return "500 set trials, 500 exists trials, 100 forall instances";
}

// ------------------------------------------------------------------ 7

std::string ultrapower()
{
    using namespace testkit;
    for (auto strategy : all_strategies) {
        Engine rng(7001);
        for (int session = 0; session < 10; ++session) {
            FilterOracle o(strategy);
            std::vector<EpSet> asked;
            for (int k = 0; k < 40; ++k) {
                EpSet s = random_ep_set(rng);
                if (!asked.empty() && coin(rng, 0.4)) {
                    const auto& t = asked[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(asked.size()) - 1))];
                    s = coin(rng) ? (s & t) : (coin(rng) ? (s | t) : t.complement());
                }
                bool first = o.dominant(s);
                require(o.dominant(s.complement()) != first, "complement dichotomy");
                asked.push_back(s);
            }
            auto report = o.audit();
            require(report.ok, to_string(strategy), ": ", report.detail);
            require(FilterOracle::replay(strategy, o.log()), "replay under ", to_string(strategy));
        }
    }
    Hyper u = split(PowerSum(0), PowerSum::term(1, 1));
    Hyper w = split(PowerSum::term(1, 1), PowerSum(0));
    for (auto strategy : all_strategies) {
        FilterOracle o(strategy);
        require((u * w).rep() == SeqExpr(0), "u*w is zero");
        require(hyper_eq(o, u, Hyper(0)) != hyper_eq(o, w, Hyper(0)), "exactly one zero factor under ", to_string(strategy));
    }
    {
        FilterOracle evens(Strategy::EvensFirst), odds(Strategy::OddsFirst);
        require(hyper_lt(evens, Hyper(0), alternating()) && hyper_lt(odds, alternating(), Hyper(0)), "(-1)^n/(n+1) signs");
    }
    for (auto strategy : all_strategies) {
        Engine rng(7002);
        FilterOracle o(strategy);
        for (int trial = 0; trial < 200; ++trial) {
            Hyper x = random_hyper(rng);
            require(is_infinitesimal_hyper(o, x) == st_hyper(x).is_zero(), "infinitesimal ", x);
        }
        require(o.audit().ok, "audit after infinitesimals");
    }
    for (auto strategy : all_strategies) {
        Engine rng(7003);
        FilterOracle o(strategy);
        int triples = 0;
        while (triples < 300) {
            auto a = random_real_set(rng), b = random_real_set(rng);
            bool included = true;
            for (const auto& x : probes(rng, {a, b})) {
                bool xa = star_member(o, x, a), xb = star_member(o, x, b);
                require(star_member(o, x, a | b) == (xa || xb), "union");
                require(star_member(o, x, a & b) == (xa && xb), "intersection");
                require(star_member(o, x, a - b) == (xa && !xb), "difference");
                included = included && (!xa || xb);
                ++triples;
            }
            require(included == a.subset_of(b), "inclusion ", a, " vs ", b);
        }
        // principal: standard points; free: an infinite element
        for (int trial = 0; trial < 100; ++trial) {
            Rational c = small_rational(rng);
            auto x = random_real_set(rng);
            require(star_member(o, Hyper(c), x) == x.contains(c), "principal ", c, " in ", x);
        }
        auto e = HyperFrac::make(o, Hyper(1), Hyper(PowerSum::term(1, 1)));
        require(is_infinite_frac(o, e), "1/h is infinite");
        for (long bound = 1; bound <= 1000; bound *= 10) {
            require(!star_member(o, e, RealSet::interval(Rational(-bound), Rational(bound), true, true)), "bounded by ", bound);
        }
        require(o.audit().ok, "audit after transfer");
    }
    {
        FilterOracle o;
        Hyper h(PowerSum::term(1, 1));
        auto quotient = HyperFrac::make(o, (Hyper(1) + h) * (Hyper(1) + h) - Hyper(1), h);
        auto st = frac_st(quotient);
        require(st && *st == Rational(2), "derivative quotient of x^2 at 1");
    }
    return "axioms, zero divisors, signs, 800 null sequences, 1200 triples, ultrafilters, quotient";
}

// ------------------------------------------------------------------ 8

std::string plot_contract()
{
    std::ostringstream csv;
    emit_plot(csv, dt(2), Rational(1), 100, PlotFormat::csv);
    auto pts = graph_points(dt(2), Rational(1), 100);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    require(line == "p,t", "header ", line);
    std::size_t row = 0, exact_rows = 0;
    while (std::getline(in, line)) {
        require(row < pts.size(), "too many rows");
        auto comma = line.find(',');
        double p = std::stod(line.substr(0, comma)), t = std::stod(line.substr(comma + 1));
        const auto& g = pts[row];
        require(t == g.t_exact.to_double() || t == g.t, "t column at row ", row);
        require(line.substr(0, comma) == format_g17(std::sqrt(t)), "p = sqrt(t) at row ", row);
        if (g.p_exact) {
            require(*g.p_exact * *g.p_exact == g.t_exact, "p^2 = t at row ", row);
            require(std::fabs(p - g.p_exact->to_double()) <= 2 * std::numeric_limits<double>::epsilon(), "exact p at row ", row);
            ++exact_rows;
        }
        ++row;
    }
    require(row == 100, "rows: ", row);
    require(exact_rows >= 4, "exact rows: ", exact_rows);

    Engine rng(8001);
    int pairs = 0;
    while (pairs < 50) {
        auto x = testkit::random_fermat(rng, 3);
        auto y = testkit::random_fermat(rng, 3);
        if (compare(x, y) == 0) continue;
        if (compare(x, y) > 0) std::swap(x, y);
        auto L = exponent_lcm(x, y);
        if (L > 24) continue;
        Rational delta = separation_delta(x, y);
        auto u_max = exact_root(delta, L.get_ui());
        require(u_max.has_value(), "delta is not an L-th power");
        for (long k = 1; k < 1000; ++k) {
            Rational t = pow(*u_max * Rational(k, 1000), L.get_si());
            auto px = graph_abscissa_exact(x, t);
            auto py = graph_abscissa_exact(y, t);
            require(px && py && *px < *py, x, " and ", y, " at t=", t);
        }
        ++pairs;
    }
    return std::to_string(exact_rows) + " exact rows; 50 separated pairs on 1000 points";
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
        double limit_s;
    };
    const Criterion criteria[] = {
        {"golden transcript", golden_transcript, 1},
        {"dt algebra laws", dt_laws, 5},
        {"nilpotency and power products", nilpotency, 10},
        {"order decision vs representatives", order_decision, 0},
        {"Taylor and derivatives", taylor, 0},
        {"transfer over open sets", set_transfer, 0},
        {"ultrapower suite", ultrapower, 30},
        {"plot contract", plot_contract, 0},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.limit_s > 0 && secs >= c.limit_s) {
            ok = false;
            detail = "exceeded " + std::to_string(c.limit_s) + " s";
        }
        failed += !ok;
        char time[32];
        std::snprintf(time, sizeof time, "%.3f s", secs);
        std::cout << "criterion " << index << ": " << (ok ? "PASS" : "FAIL") << "  " << c.name << "  (" << time << ")  " << detail << '\n';
    }
    return failed == 0 ? 0 : 1;
}

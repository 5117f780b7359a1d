#pragma once

// Representative sequences and the planar picture graph_delta of a Fermat real.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fermat/fermat_real.hpp"

namespace fermat {

/// Positive null sequence s_n = scale * (n+1)^(-power) used as the basic
/// infinitesimal; the default is 1/(n+1).
struct BaseSequence {
    Rational scale = 1;
    Rational power = 1;

    Rational at(std::uint64_t n) const { return scale / exact_power(n); }

private:
    Rational exact_power(std::uint64_t n) const
    {
        auto v = exact_pow(Rational(static_cast<unsigned long>(n + 1)), power);
        if (!v) {
            throw PreconditionError("base sequence is irrational at index " + std::to_string(n));
        }
        return *v;
    }
};

/// lcm of the denominators of the exponents 1/w_i, i.e. of the numerators
/// of the orders. Indices n with n+1 = m^L give rational samples.
inline mpz_class exponent_lcm(const FermatReal& x)
{
    mpz_class l = 1;
    for (const auto& t : x.terms()) {
        l = lcm(l, t.order.num());
    }
    return l;
}

inline mpz_class exponent_lcm(const FermatReal& x, const FermatReal& y)
{
    return lcm(exponent_lcm(x), exponent_lcm(y));
}

/// n such that n+1 = m^L.
inline std::uint64_t exact_index(unsigned long m, const mpz_class& L)
{
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), mpz_class(m).get_mpz_t(), L.get_ui());
    if (!p.fits_ulong_p()) {
        throw PreconditionError("exact sample index overflows");
    }
    return p.get_ui() - 1;
}

/// st x + sum_i c_i * s_n^(1/w_i), exactly. Throws PreconditionError when a
/// fractional power is irrational at this index.
inline Rational sample_exact(const FermatReal& x, std::uint64_t n, const BaseSequence& base = {})
{
    if (x.mode() != Mode::exact) {
        throw ModeError("sample_exact needs an exact Fermat real");
    }
    Rational s = base.at(n);
    Rational value = x.st().exact();
    for (const auto& t : x.terms()) {
        auto p = exact_pow(s, Rational(1) / t.order);
        if (!p) {
            throw PreconditionError("index " + std::to_string(n) + " is not an exact sample index for dt_" + t.order.to_string());
        }
        value += t.coef.exact() * *p;
    }
    return value;
}

/// Floating evaluation of the default representative at index n.
inline long double sample_approx(const FermatReal& x, std::uint64_t n)
{
    long double s = 1.0L / static_cast<long double>(n + 1);
    long double value = x.st().is_exact() ? x.st().exact().to_long_double() : x.st().to_double();
    for (const auto& t : x.terms()) {
        long double c = t.coef.is_exact() ? t.coef.exact().to_long_double() : t.coef.to_double();
        value += c * std::pow(s, 1.0L / t.order.to_long_double());
    }
    return value;
}

struct GraphPoint {
    double p;
    double t;
    Rational t_exact;
    /// Exact abscissa when every t^(1/w_i) is rational.
    std::optional<Rational> p_exact;
};

/// Abscissa st x + sum_i c_i t^(1/w_i) at rational t, if rational.
inline std::optional<Rational> graph_abscissa_exact(const FermatReal& x, const Rational& t)
{
    Rational value = x.st().exact();
    for (const auto& t_i : x.terms()) {
        auto p = exact_pow(t, Rational(1) / t_i.order);
        if (!p) {
            return std::nullopt;
        }
        value += t_i.coef.exact() * *p;
    }
    return value;
}

/// t^(1/w); sqrt and cbrt where they apply.
inline double root_power(double t, const Rational& w)
{
    if (w == Rational(1)) return t;
    if (w == Rational(2)) return std::sqrt(t);
    if (w == Rational(3)) return std::cbrt(t);
    return static_cast<double>(std::pow(static_cast<long double>(t), 1.0L / w.to_long_double()));
}

inline double graph_abscissa(const FermatReal& x, double t)
{
    double value = x.st().to_double();
    for (const auto& term : x.terms()) {
        value += term.coef.to_double() * root_power(t, term.order);
    }
    return value;
}

/// Points (p, t) of graph_delta(x) on the uniform grid t_k = delta*k/(samples-1),
/// k = 0..samples-1. A standard real gives the vertical tick p = x.
inline std::vector<GraphPoint> graph_points(const FermatReal& x, const Rational& delta, std::size_t samples)
{
    if (delta.sign() <= 0) {
        throw PreconditionError("graph_points: delta must be positive");
    }
    if (samples < 2) {
        throw PreconditionError("graph_points: need at least two samples");
    }
    std::vector<GraphPoint> pts;
    pts.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        Rational t = delta * Rational(static_cast<unsigned long>(k)) / Rational(static_cast<unsigned long>(samples - 1));
        GraphPoint gp{graph_abscissa(x, t.to_double()), t.to_double(), t, std::nullopt};
        if (x.mode() == Mode::exact) {
            gp.p_exact = graph_abscissa_exact(x, t);
        }
        pts.push_back(std::move(gp));
    }
    return pts;
}

/// A delta > 0 such that graph_delta(x) lies strictly left of graph_delta(y)
/// for every t in (0, delta). With u = t^(1/L) the difference of abscissas is
/// a polynomial g(u) = sum_k c_k u^k whose lowest coefficient c_j is
/// positive; g > 0 on (0, u0) for u0 = min(1, c_j / sum_{k>j} |c_k|), and
/// delta = u0^L.
inline Rational separation_delta(const FermatReal& x, const FermatReal& y)
{
    if (x.mode() != Mode::exact || y.mode() != Mode::exact) {
        throw ModeError("separation_delta needs exact Fermat reals");
    }
    if (compare(x, y) >= 0) {
        throw PreconditionError("separation_delta: requires x < y");
    }
    FermatReal d = y - x;
    mpz_class L = exponent_lcm(d);
    // exponent of u for each term: L / w; the standard part sits at exponent 0
    std::map<Rational, Rational> coeffs;
    if (!d.st().is_zero()) {
        coeffs[Rational(0)] = d.st().exact();
    }
    for (const auto& t : d.terms()) {
        coeffs[Rational(L) / t.order] += t.coef.exact();
    }
    const Rational& lead = coeffs.begin()->second;
    Rational rest = 0;
    for (auto it = std::next(coeffs.begin()); it != coeffs.end(); ++it) {
        rest += abs(it->second);
    }
    Rational u0 = 1;
    if (rest.sign() > 0 && lead / rest < 1) {
        u0 = lead / rest;
    }
    return pow(u0, static_cast<long>(L.get_si()));
}

} // namespace fermat

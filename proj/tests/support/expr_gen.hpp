#pragma once

#include "fermat/smooth/expr.hpp"
#include "support/generators.hpp"

namespace fermat::testkit {

/// Random polynomial expression in `dim` variables.
inline Expr random_poly(Engine& rng, std::size_t dim = 1, int depth = 3)
{
    if (depth <= 0 || coin(rng, 0.25)) {
        if (coin(rng, 0.6)) {
            return Expr::var(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(dim) - 1)));
        }
        return Expr(small_rational(rng, 5, 3));
    }
    switch (uniform_int(rng, 0, 4)) {
    case 0: return random_poly(rng, dim, depth - 1) + random_poly(rng, dim, depth - 1);
    case 1: return random_poly(rng, dim, depth - 1) - random_poly(rng, dim, depth - 1);
    case 2: return random_poly(rng, dim, depth - 1) * random_poly(rng, dim, depth - 1);
    case 3: return pow(random_poly(rng, dim, depth - 1), static_cast<unsigned long>(uniform_int(rng, 2, 3)));
    default: return -random_poly(rng, dim, depth - 1);
    }
}

/// Random expression that may contain sin/cos/exp/log/sqrt and division.
inline Expr random_smooth(Engine& rng, std::size_t dim = 1, int depth = 3)
{
    if (depth <= 0 || coin(rng, 0.2)) {
        if (coin(rng, 0.6)) {
            return Expr::var(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(dim) - 1)));
        }
        return Expr(small_rational(rng, 5, 3));
    }
    auto sub = [&] { return random_smooth(rng, dim, depth - 1); };
    switch (uniform_int(rng, 0, 10)) {
    case 0: return sub() + sub();
    case 1: return sub() - sub();
    case 2: return sub() * sub();
    case 3: return sub() / (Expr(2) + pow(sub(), 2));
    case 4: return pow(sub(), 2);
    case 5: return -sub();
    case 6: return sin(sub());
    case 7: return cos(sub());
    case 8: return exp(sub());
    case 9: return log(Expr(1) + pow(sub(), 2));
    default: return sqrt(Expr(1) + pow(sub(), 2));
    }
}

} // namespace fermat::testkit

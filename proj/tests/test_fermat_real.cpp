#include <gtest/gtest.h>

#include <vector>

#include "fermat/fermat_real.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fermat;
using fermat::testkit::Engine;

namespace {

FermatReal dt(long a, long b = 1) { return FermatReal::dt(Rational(a, b)); }
FermatReal q(long a, long b = 1) { return FermatReal(Rational(a, b)); }

} // namespace

TEST(Dt, BasicInfinitesimals)
{
    EXPECT_EQ(dt(2).terms().size(), 1u);
    EXPECT_EQ(dt(2).order(), Rational(2));
    EXPECT_TRUE(dt(1, 2).is_zero());
    EXPECT_EQ(dt(1), FermatReal::dt(1));
    EXPECT_EQ(to_string(dt(1)), "dt");
    EXPECT_THROW(FermatReal::dt(0), DomainError);
    EXPECT_THROW(FermatReal::dt(-1), DomainError);
}

TEST(Add, CanonicalForm)
{
    auto x = q(2) + q(3) * dt(2);
    EXPECT_EQ(x + (-(q(3) * dt(2))), q(2));
    auto y = dt(3) + q(2) * dt(2);
    ASSERT_EQ(y.terms().size(), 2u);
    EXPECT_EQ(y.terms()[0].order, Rational(3));
    EXPECT_EQ(y.terms()[0].coef.exact(), Rational(1));
    EXPECT_EQ(y.terms()[1].order, Rational(2));
    EXPECT_EQ(y.terms()[1].coef.exact(), Rational(2));
    EXPECT_EQ(y + FermatReal(), y);
}

TEST(Mul, ProductRule)
{
    EXPECT_EQ(dt(3) * dt(2), dt(6, 5));
    EXPECT_TRUE((dt(1) * dt(1)).is_zero());
    auto x = dt(3) + q(2) * dt(2);
    // Brute-force expansion oracle: only dt_3^3 survives.
    EXPECT_EQ(testkit::oracle_pow(x, 3), dt(1));
    EXPECT_EQ(x * x * x, dt(1));
}

TEST(Pow, IntegerPowers)
{
    EXPECT_EQ(pow(dt(2), 2), dt(1));
    EXPECT_TRUE(pow(dt(2), 3).is_zero());
    EXPECT_EQ(pow(q(5) + dt(7), 0), q(1));
    EXPECT_EQ(pow(q(2) + dt(1), 3), q(8) + q(12) * dt(1));
}

TEST(TermPow, FractionalExponents)
{
    EXPECT_EQ(term_pow(3, Rational(3, 2)), dt(2));
    EXPECT_EQ(term_pow(2, 2), dt(1));
    EXPECT_EQ(term_pow(1, 1), dt(1));
    EXPECT_TRUE(term_pow(2, 3).is_zero());
    EXPECT_THROW(term_pow(2, Rational(1, 2)), DomainError);
}

TEST(Accessors, Decomposition)
{
    auto x = q(2) + q(3) * dt(2) - q(1, 3) * dt(1);
    EXPECT_EQ(x.st().exact(), Rational(2));
    EXPECT_EQ(x.n_terms(), 2u);
    EXPECT_EQ(x.order(), Rational(2));
    EXPECT_EQ(x.orders(), (std::vector<Rational>{2, 1}));
    auto parts = x.std_parts();
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].exact(), Rational(3));
    EXPECT_EQ(parts[1].exact(), Rational(-1, 3));
    EXPECT_TRUE(dt(3).st().is_zero());
    EXPECT_THROW(q(4).order(), PartialityError);
    EXPECT_EQ(to_string(x), "2 + 3*dt_2 - 1/3*dt");
}

TEST(Predicates, IdealsAndUnits)
{
    EXPECT_TRUE(dt(1).in_ideal(1));
    EXPECT_FALSE(dt(2).in_ideal(1));
    EXPECT_TRUE(dt(2).in_ideal(2));
    EXPECT_TRUE(FermatReal().in_ideal(0));
    EXPECT_TRUE(dt(5).in_ideal_infinity());
    EXPECT_TRUE((q(1) + dt(1)).is_invertible());
    EXPECT_FALSE(dt(1).is_invertible());
    EXPECT_TRUE(q(3).is_real());
    EXPECT_FALSE((q(3) + dt(1)).is_real());
    EXPECT_TRUE(dt(4).is_infinitesimal());
}

TEST(Nilpotency, DecisionWithoutPower)
{
    EXPECT_FALSE(nilpotent_power_is_zero(dt(2), 2));
    EXPECT_TRUE(nilpotent_power_is_zero(dt(2), 3));
    for (unsigned long k = 2; k < 8; ++k) {
        EXPECT_FALSE(nilpotent_power_is_zero(q(1) + dt(1), k));
    }
    EXPECT_TRUE(nilpotent_power_is_zero(FermatReal(), 2));
    EXPECT_THROW(nilpotent_power_is_zero(dt(2), 1), PreconditionError);
}

TEST(PowerProduct, Decision)
{
    std::vector<FermatReal> hs{dt(2), dt(3)};
    std::vector<unsigned long> one_one{1, 1}, two_one{2, 1};
    auto v = power_product_decision(hs, one_one);
    EXPECT_FALSE(v.is_zero);
    EXPECT_EQ(*v.order, Rational(6, 5));
    EXPECT_EQ(dt(2) * dt(3), dt(6, 5));
    auto z = power_product_decision(hs, two_one);
    EXPECT_TRUE(z.is_zero);
    EXPECT_TRUE((pow(dt(2), 2) * dt(3)).is_zero());
    std::vector<FermatReal> single{dt(1)};
    std::vector<unsigned long> one{1};
    EXPECT_EQ(*power_product_decision(single, one).order, Rational(1));
    std::vector<FermatReal> bad{q(1) + dt(1)};
    EXPECT_THROW(power_product_decision(bad, one), DomainError);
}

TEST(Order, ExamplesFromTheOrderTheorem)
{
    EXPECT_LT(FermatReal(), dt(1));
    EXPECT_LT(dt(1), dt(2));
    EXPECT_LT(dt(2), dt(3));
    auto x = q(2) + dt(5);
    EXPECT_EQ(compare(x, x), 0);
    EXPECT_GT(dt(2) - dt(1), dt(2) - q(2) * dt(1));
    EXPECT_LT(-dt(1), FermatReal());
    EXPECT_GT(q(1), q(1) - dt(9));
}

TEST(Invert, GeometricSeries)
{
    EXPECT_EQ(invert(q(1) + dt(1)), q(1) - dt(1));
    EXPECT_EQ(invert(q(2)), q(1, 2));
    auto c = q(1) - q(1, 2) * dt(2) + q(1, 24) * dt(1);
    auto expected = q(1) + q(1, 2) * dt(2) + q(5, 24) * dt(1);
    EXPECT_EQ(testkit::oracle_invert(c), expected);
    EXPECT_EQ(invert(c), expected);
    EXPECT_THROW(invert(dt(1)), NotInvertible);
    EXPECT_EQ(q(3) / (q(1) + dt(1)), q(3) - q(3) * dt(1));
}

TEST(PseudoDistance, StandardParts)
{
    EXPECT_EQ(pseudo_distance(dt(1), dt(3)).exact(), Rational(0));
    EXPECT_EQ(pseudo_distance(q(1) + dt(1), q(3)).exact(), Rational(2));
}

TEST(ApproxMode, PruningAndModeChecks)
{
    auto a = FermatReal::dt(2, Mode::approx);
    auto b = FermatReal(Scalar::approx(0.1)) + a;
    EXPECT_EQ(b.mode(), Mode::approx);
    EXPECT_THROW(b + dt(1), ModeError);
    auto c = FermatReal::from_terms(Scalar::approx(0.1 + 0.2), {Term{Scalar::approx(1e-3), Rational(1)}});
    auto d = FermatReal::from_terms(Scalar::approx(0.3), {Term{Scalar::approx(1e-3 + 1e-17), Rational(1)}});
    auto diff = c - d;
    EXPECT_TRUE(diff.is_zero());
    EXPECT_EQ(compare(c, d), 0);
}

// ---------------------------------------------------------------- properties

TEST(Properties, RingAxioms)
{
    Engine rng(11);
    for (int i = 0; i < 500; ++i) {
        auto x = testkit::random_fermat(rng);
        auto y = testkit::random_fermat(rng);
        auto z = testkit::random_fermat(rng);
        ASSERT_EQ(x + y, y + x);
        ASSERT_EQ(x * y, y * x);
        ASSERT_EQ((x + y) + z, x + (y + z));
        ASSERT_EQ((x * y) * z, x * (y * z));
        ASSERT_EQ(x * (y + z), x * y + x * z);
        ASSERT_EQ(x + FermatReal(), x);
        ASSERT_EQ(x * FermatReal(1), x);
        ASSERT_EQ((x - y) + y, x);
        ASSERT_TRUE((x - x).is_zero());
    }
}

TEST(Properties, CanonicalizationIdempotent)
{
    Engine rng(12);
    for (int i = 0; i < 300; ++i) {
        auto x = testkit::random_fermat(rng);
        auto again = FermatReal::from_terms(x.st(), x.terms());
        ASSERT_EQ(again, x);
        for (std::size_t k = 1; k < x.terms().size(); ++k) {
            ASSERT_GT(x.terms()[k - 1].order, x.terms()[k].order);
        }
    }
}

TEST(Properties, ProductMatchesLittleOhOracle)
{
    Engine rng(13);
    for (int i = 0; i < 400; ++i) {
        auto x = testkit::random_fermat(rng);
        auto y = testkit::random_fermat(rng);
        ASSERT_EQ(x * y, testkit::oracle_mul(x, y)) << x << " * " << y;
    }
}

TEST(Properties, DtProductLaw)
{
    Engine rng(14);
    for (int i = 0; i < 500; ++i) {
        Rational a = testkit::random_order(rng), b = testkit::random_order(rng);
        Rational w = a * b / (a + b);
        auto expected = w >= 1 ? FermatReal::dt(w) : FermatReal();
        ASSERT_EQ(FermatReal::dt(a) * FermatReal::dt(b), expected);
    }
}

TEST(Properties, NilpotencyDecisionMatchesPower)
{
    Engine rng(15);
    for (int i = 0; i < 500; ++i) {
        auto x = testkit::random_fermat(rng, 3);
        auto k = static_cast<unsigned long>(testkit::uniform_int(rng, 2, 6));
        ASSERT_EQ(pow(x, k).is_zero(), nilpotent_power_is_zero(x, k)) << x << " ^ " << k;
        ASSERT_EQ(pow(x, k), testkit::oracle_pow(x, static_cast<unsigned>(k)));
    }
}

TEST(Properties, PowerProductDecisionMatchesDirectProduct)
{
    Engine rng(16);
    for (int i = 0; i < 200; ++i) {
        auto n = static_cast<std::size_t>(testkit::uniform_int(rng, 1, 3));
        std::vector<FermatReal> hs;
        std::vector<unsigned long> exps;
        FermatReal product(1);
        for (std::size_t k = 0; k < n; ++k) {
            hs.push_back(testkit::random_nonzero_infinitesimal(rng));
            exps.push_back(static_cast<unsigned long>(testkit::uniform_int(rng, 0, 3)));
            product = product * testkit::oracle_pow(hs.back(), static_cast<unsigned>(exps.back()));
        }
        auto v = power_product_decision(hs, exps);
        ASSERT_EQ(v.is_zero, product.is_zero());
        if (!v.is_zero && v.order) {
            ASSERT_EQ(*v.order, product.order());
        }
    }
}

TEST(Properties, TotalOrder)
{
    Engine rng(17);
    for (int i = 0; i < 500; ++i) {
        auto x = testkit::random_fermat(rng);
        auto y = testkit::random_fermat(rng);
        auto z = testkit::random_fermat(rng);
        int xy = compare(x, y);
        ASSERT_EQ(xy, -compare(y, x));
        ASSERT_EQ(xy == 0, x == y);
        if (compare(x, y) <= 0 && compare(y, z) <= 0) {
            ASSERT_LE(compare(x, z), 0);
        }
        if (xy <= 0) {
            ASSERT_LE(compare(x + z, y + z), 0);
            Rational c = abs(testkit::small_rational(rng));
            ASSERT_LE(compare(FermatReal(c) * x, FermatReal(c) * y), 0);
            ASSERT_LE(compare(x.st(), y.st()), 0);
        }
    }
}

TEST(Properties, InfinitesimalIffBoundedByEveryReciprocal)
{
    Engine rng(18);
    for (int i = 0; i < 300; ++i) {
        auto x = testkit::random_fermat(rng);
        bool bounded = true;
        for (long n = 1; n <= 50; ++n) {
            FermatReal b(Rational(1, n));
            bounded = bounded && compare(-b, x) < 0 && compare(x, b) < 0;
        }
        ASSERT_EQ(bounded, x.is_infinitesimal()) << x;
    }
}

TEST(Properties, InvertIsUnitInverse)
{
    Engine rng(19);
    for (int i = 0; i < 300; ++i) {
        auto x = testkit::random_fermat(rng);
        if (x.is_invertible()) {
            ASSERT_EQ(x * invert(x), FermatReal(1));
            ASSERT_EQ(invert(x), testkit::oracle_invert(x));
        } else {
            ASSERT_THROW(invert(x), NotInvertible);
        }
    }
}

TEST(Properties, PseudoDistanceAxioms)
{
    Engine rng(20);
    for (int i = 0; i < 300; ++i) {
        auto x = testkit::random_fermat(rng);
        auto y = testkit::random_fermat(rng);
        auto z = testkit::random_fermat(rng);
        Rational dxy = pseudo_distance(x, y).exact();
        ASSERT_EQ(dxy, pseudo_distance(y, x).exact());
        ASSERT_LE(pseudo_distance(x, z).exact(), dxy + pseudo_distance(y, z).exact());
        ASSERT_EQ(dxy.is_zero(), x.st() == y.st());
    }
}

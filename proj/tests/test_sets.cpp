#include <gtest/gtest.h>

#include "fermat/sets/relation.hpp"
#include "support/set_gen.hpp"

using namespace fermat;
using fermat::testkit::Engine;

namespace {

FermatReal dt(long a) { return FermatReal::dt(a); }
FermatReal q(long a, long b = 1) { return FermatReal(Rational(a, b)); }
OpenSet iv(long a, long b) { return OpenSet::interval(a, b); }
OpenSet S(const char* text) { return OpenSet::parse(text); }

using testkit::dress;
using testkit::grid;
using testkit::in_closure;
using testkit::interesting_points;
using testkit::is_endpoint;
using testkit::random_instance;
using testkit::random_set;

} // namespace

TEST(OpenSet, MemberExt)
{
    EXPECT_TRUE(member_ext(q(1) + dt(1), iv(0, 2)));
    EXPECT_FALSE(member_ext(dt(1), iv(0, 1)));
    EXPECT_FALSE(member_ext(q(5), iv(0, 2)));
    EXPECT_FALSE(member_ext(-dt(2), S("(-inf,0)u(0,1)")));
    EXPECT_TRUE(member_ext(q(-7) + dt(3), S("(-inf,0)")));
}

TEST(OpenSet, Algebra)
{
    EXPECT_EQ(int_diff(iv(0, 3), iv(1, 2)), S("(0,1)u(2,3)"));
    EXPECT_TRUE(intersect(iv(0, 1), iv(2, 3)).is_empty());
    auto u = set_union(iv(0, 1), iv(1, 2));
    EXPECT_EQ(u.pieces().size(), 2u);
    EXPECT_FALSE(u.contains(Rational(1)));
    EXPECT_EQ(set_union(iv(0, 2), iv(1, 3)), iv(0, 3));
    EXPECT_EQ(int_diff(iv(0, 3), S("(0,1)u(1,2)")), iv(2, 3));
    EXPECT_EQ(int_diff(iv(0, 1), OpenSet::empty()), iv(0, 1));
    EXPECT_TRUE(int_diff(iv(0, 1), OpenSet::reals()).is_empty());
    EXPECT_TRUE(subset(iv(1, 2), S("(0,3)u(5,6)")));
    EXPECT_FALSE(subset(iv(0, 2), S("(0,1)u(1,2)")));
}

TEST(OpenSet, TextForm)
{
    EXPECT_EQ(S("(0,1)u(2,3)").to_string(), "(0,1)u(2,3)");
    EXPECT_EQ(S("(-inf, 0)").to_string(), "(-inf,0)");
    EXPECT_EQ(S("empty").to_string(), "empty");
    EXPECT_EQ(S("(1/2,3/2)u(0,1)").to_string(), "(0,3/2)");
    EXPECT_THROW(S("(1,0)"), ParseError);
    EXPECT_THROW(S("(0,1"), ParseError);
    EXPECT_THROW(S("(0,1)x(2,3)"), ParseError);
}

TEST(Projection, Examples)
{
    Rectangle unit{Interval(0, 1), Interval(0, 1)};
    EXPECT_EQ(project_exists(OpenRelation({unit})), iv(0, 1));
    OpenRelation two({unit, Rectangle{Interval(2, 3), Interval(5, 6)}});
    EXPECT_EQ(project_exists(two), S("(0,1)u(2,3)"));
    EXPECT_EQ(project_forall(OpenRelation({unit}), iv(0, 2), iv(0, 1)), iv(0, 1));
    EXPECT_THROW(project_forall(OpenRelation({unit}), iv(0, 2), iv(5, 6)), PreconditionError);
}

TEST(Projection, TopologicalNotPointwise)
{
    // The fiber over a in (0,1) misses only b = 1/2, which no open set sees.
    OpenRelation c({Rectangle{Interval(0, 1), Interval(0, Rational(1, 2))}, Rectangle{Interval(0, 1), Interval(Rational(1, 2), 1)}});
    EXPECT_EQ(project_forall(c, iv(0, 1), iv(0, 1)), iv(0, 1));
}

// ---------------------------------------------------------------- properties

TEST(Properties, PropositionalTransfer)
{
    Engine rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_set(rng), b = random_set(rng);
        auto u = set_union(a, b), i = intersect(a, b), d = int_diff(a, b);
        for (const auto& st : interesting_points({a, b})) {
            auto x = dress(rng, st);
            bool xa = member_ext(x, a), xb = member_ext(x, b);
            ASSERT_EQ(member_ext(x, u), xa || xb);
            ASSERT_EQ(member_ext(x, i), xa && xb);
            ASSERT_EQ(member_ext(x, d), xa && !in_closure(b, st));
        }
    }
}

TEST(Properties, InclusionEmptinessAndEquality)
{
    Engine rng(52);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_set(rng), b = random_set(rng);
        if (testkit::coin(rng, 0.3)) b = set_union(a, b);
        bool sampled = true;
        for (const auto& st : interesting_points({a, b, int_diff(a, b)})) {
            auto x = dress(rng, st);
            sampled = sampled && (!member_ext(x, a) || member_ext(x, b));
        }
        ASSERT_EQ(subset(a, b), sampled) << a << " vs " << b;
        ASSERT_EQ(a == b, subset(a, b) && subset(b, a));
        ASSERT_EQ(OpenSet::parse(a.to_string()), a);
    }
    for (const auto& st : interesting_points({iv(-1, 1)})) {
        ASSERT_FALSE(member_ext(dress(rng, st), OpenSet::empty()));
    }
}

TEST(Properties, ExistsProjectionMatchesGridSearch)
{
    Engine rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        auto in = random_instance(rng);
        auto ex = project_exists(in.c);
        std::vector<FermatReal> ys;
        for (const auto& b : grid(in.b, 30)) ys.push_back(dress(rng, b));
        for (const auto& a : grid(in.a, 7)) {
            auto x = dress(rng, a);
            bool found = false;
            for (const auto& y : ys) {
                found = found || (member_ext(y, in.b) && in.c.contains(x.st().exact(), y.st().exact()));
            }
            ASSERT_EQ(member_ext(x, ex), found);
        }
    }
}

TEST(Properties, ForallProjectionMatchesGridSearch)
{
    Engine rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        auto in = random_instance(rng);
        auto all = project_forall(in.c, in.a, in.b);
        ASSERT_TRUE(subset(all, in.a));
        std::vector<Rational> ys;
        for (const auto& b : grid(in.b, 60)) {
            if (!is_endpoint(b, in, false)) ys.push_back(b);
        }
        for (const auto& a : grid(in.a, 12)) {
            if (is_endpoint(a, in, true)) continue;
            bool every = true;
            for (const auto& b : ys) {
                every = every && in.c.contains(a, b);
            }
            ASSERT_EQ(all.contains(a), every) << "a=" << a << " A=" << in.a << " B=" << in.b;
        }
    }
}

#include "torickit/gitdata.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torickit;

namespace {

GITData conifold() { return GITData(1, IntMatrix{{1, 1, -1, -1}}, {Rational(1)}); }

// Random r x m weights with entries in [-2, 2], omega the sum of a random positive combination.
GITData random_git_data(std::mt19937& rng, std::size_t r, std::size_t m) {
    std::uniform_int_distribution<int> entry(-2, 2), coef(1, 3);
    IntMatrix D(r, m);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m; ++j) D(i, j) = entry(rng);
    RatVector omega(r, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        const int c = coef(rng);
        for (std::size_t i = 0; i < r; ++i) omega[i] += c * D(i, j);
    }
    return GITData(r, D, omega);
}

}  // namespace

TEST(IndexSets, Formatting) {
    EXPECT_EQ(format_set(make_set({0, 2})), "{1,3}");
    EXPECT_EQ(format_set(0), "{}");
    EXPECT_EQ(cardinality(full_set(5)), 5u);
    EXPECT_TRUE(set_less(make_set({3}), make_set({0, 1})));
}

TEST(GITDataTest, ShapeIsChecked) {
    EXPECT_THROW(GITData(2, IntMatrix{{1, 1}}, {Rational(1), Rational(1)}), InputError);
    EXPECT_THROW(GITData(1, IntMatrix{{1, 1}}, {}), InputError);
    EXPECT_THROW(GITData(2, IntMatrix{{1}, {1}}, {Rational(1), Rational(1)}), InputError);
}

TEST(Anticones, ConifoldRule) {
    const GITData data = conifold();
    for (IndexSet I = 0; I < 16; ++I) {
        const bool expected = contains(I, 0) || contains(I, 1);
        EXPECT_EQ(is_anticone(data, I), expected) << format_set(I);
    }
    EXPECT_EQ(minimal_anticones(data), (std::vector<IndexSet>{make_set({0}), make_set({1})}));
    EXPECT_EQ(format_locus(minimal_anticones(data), 4), "{(z1,z2)!=0}");
    const GITData minus = data.with_omega({Rational(-1)});
    EXPECT_EQ(format_locus(minimal_anticones(minus), 4), "{(z3,z4)!=0}");
}

TEST(Anticones, EmptySetAtTheOrigin) {
    const GITData zero = conifold().with_omega({Rational(0)});
    EXPECT_TRUE(is_anticone(zero, 0));
    EXPECT_EQ(format_locus(minimal_anticones(zero), 4), "all");
    EXPECT_TRUE(on_wall(zero));
}

TEST(Anticones, EnlargementClosureExhaustive) {
    std::mt19937 rng(2024);
    int checked = 0;
    for (std::size_t m = 1; m <= 8; ++m)
        for (std::size_t r = 1; r <= std::min<std::size_t>(m, 3); ++r)
            for (int trial = 0; trial < 4; ++trial) {
                // closure needs omega off the walls; resample until it is
                GITData data = random_git_data(rng, r, m);
                while (on_wall(data) || !validate(data).ok()) data = random_git_data(rng, r, m);
                const auto all = anticones(data);
                // every superset of an anticone is an anticone
                for (auto I : all)
                    for (IndexSet J = 0; J <= full_set(m); ++J)
                        if (is_subset(I, J)) {
                            ASSERT_TRUE(is_anticone(data, J)) << format_set(I) << " in " << format_set(J);
                        }
                EXPECT_EQ(enlargement_closure(minimal_anticones(data), m), all);
                ++checked;
            }
    EXPECT_GT(checked, 50);
}

TEST(Anticones, OnAWallOnlyTheLocusIsUpClosed) {
    // at omega = 0 the empty set is an anticone but {1} is not
    const GITData zero = conifold().with_omega({Rational(0)});
    EXPECT_FALSE(is_anticone(zero, make_set({0})));
    const auto all = anticones(zero);
    const auto closure = enlargement_closure(minimal_anticones(zero), 4);
    for (auto I : all) EXPECT_NE(std::find(closure.begin(), closure.end(), I), closure.end());
}

TEST(Validation, ReportsFailures) {
    EXPECT_TRUE(validate(conifold()).ok());
    const GITData bad(1, IntMatrix{{1, 1}}, {Rational(-1)});
    const auto rep = validate(bad);
    EXPECT_FALSE(rep.whole_set_is_anticone);
    EXPECT_FALSE(rep.ok());
    ASSERT_FALSE(rep.failures.empty());
    // omega = (1,0) is in the cone of D1 = (1,0) alone, which does not span Q^2
    const GITData degenerate(2, IntMatrix{{1, 0, 1}, {0, 1, 1}}, {Rational(1), Rational(0)});
    EXPECT_FALSE(validate(degenerate).anticones_span);
}

TEST(FixedPoints, ProjectivePlaneAndWeightedLine) {
    const GITData p2(1, IntMatrix{{1, 1, 1}}, {Rational(1)});
    EXPECT_EQ(fixed_points(p2).size(), 3u);
    const GITData p12(1, IntMatrix{{1, 2}}, {Rational(1)});
    EXPECT_EQ(fixed_points(p12), (std::vector<IndexSet>{make_set({0}), make_set({1})}));
}

TEST(Chambers, HirzebruchSurface) {
    // F_1: weights (1,1,0,-1), (0,0,1,1)
    const GITData f1(2, IntMatrix{{1, 1, 0, -1}, {0, 0, 1, 1}}, {Rational(1), Rational(1)});
    ASSERT_TRUE(validate(f1).ok());
    EXPECT_FALSE(on_wall(f1));
    const Chamber ch = chamber_of(f1);
    EXPECT_EQ(ch.to_string(), "{s1>0, s2>0}");
    EXPECT_TRUE(ch.contains({Rational(5), Rational(1)}));
    EXPECT_FALSE(ch.contains({Rational(-1), Rational(1)}));
    EXPECT_THROW(chamber_of(f1.with_omega({Rational(0), Rational(1)})), Error);
    const Chamber other = chamber_of(f1.with_omega({Rational(-1), Rational(2)}));
    EXPECT_EQ(other.to_string(), "{s1<0, s1+s2>0}");
}

TEST(Loci, Transversals) {
    EXPECT_EQ(format_locus({make_set({0, 1}), make_set({0, 2})}, 3), "{z1!=0, (z2,z3)!=0}");
    EXPECT_EQ(format_locus({}, 3), "empty");
}

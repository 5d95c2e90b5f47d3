#include "torickit/windows.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace torickit;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::string golden(const std::string& name) {
    std::ifstream in(std::string(TORICKIT_GOLDEN_DIR) + "/" + name);
    EXPECT_TRUE(in) << "missing golden file " << name;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WallCrossing rank_one(IntMatrix D) {
    return make_wall_crossing(GITData(1, std::move(D), {q(1)}), {q(1)}, {q(-1)});
}
WallCrossing conifold() { return rank_one(IntMatrix{{1, 1, -1, -1}}); }
WallCrossing kp2() { return rank_one(IntMatrix{{1, 1, 1, -3}}); }

std::string rows_of(const IntMatrix& D) {
    std::string out;
    for (std::size_t i = 0; i < D.rows(); ++i) {
        out += "(";
        for (std::size_t j = 0; j < D.cols(); ++j) out += (j ? "," : "") + D(i, j).get_str();
        out += ")\n";
    }
    return out;
}

}  // namespace

TEST(ConifoldGolden, MinimalAnticonesAndLocus) {
    const GITData plus = conifold().plus();
    std::string sets;
    for (auto I : minimal_anticones(plus)) sets += format_set(I) + "\n";
    EXPECT_EQ(sets, golden("conifold_minimal_anticones.txt"));
    EXPECT_EQ(format_locus(minimal_anticones(plus), 4) + "\n", golden("conifold_u_plus.txt"));
}

TEST(ConifoldGolden, ExtendedWeightsAndChambers) {
    const WallCrossing wc = conifold();
    const ExtendedGIT ext = extend(wc);
    EXPECT_EQ(rows_of(ext.data.D), golden("conifold_extended_weights.txt"));
    const std::string chambers = "C+ " + ext.chamber_plus.to_string() + "\nC- " + ext.chamber_minus.to_string() +
                                 "\nC~ " + ext.chamber_tilde.to_string() + "\n";
    EXPECT_EQ(chambers, golden("conifold_chambers.txt"));
    const SevenLoci loci = seven_loci(wc, ext);
    EXPECT_EQ(format_locus(loci.generators[3], 5) + "\n", golden("conifold_v_tilde.txt"));
}

TEST(WallCrossingTest, ConifoldData) {
    const WallCrossing wc = conifold();
    EXPECT_EQ(wc.e, (IntVector{Integer(1)}));
    EXPECT_EQ(wc.omega_zero, (RatVector{q(0)}));
    EXPECT_TRUE(wc.crepant);
    EXPECT_EQ(wc.wall_string(), "{s1=0}");
    const auto p = partition_M(wc);
    EXPECT_EQ(p.plus, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(p.zero.empty());
    EXPECT_EQ(p.minus, (std::vector<std::size_t>{2, 3}));
}

TEST(WallCrossingTest, RejectsBadEndpoints) {
    const GITData base(1, IntMatrix{{1, 1, -1, -1}}, {q(1)});
    EXPECT_THROW(make_wall_crossing(base, {q(1)}, {q(0)}), Error);
    EXPECT_THROW(make_wall_crossing(base, {q(1)}, {q(2)}), Error);
    const GITData f1(2, IntMatrix{{1, 1, 0, -1}, {0, 0, 1, 1}}, {q(1), q(1)});
    // (1,1) to (-1,-1) does not cross a single wall
    EXPECT_THROW(make_wall_crossing(f1, {q(1), q(1)}, {q(1), q(-1)}), Error);
    const WallCrossing flip = make_wall_crossing(f1, {q(1), q(1)}, {q(-1), q(2)});
    EXPECT_EQ(flip.wall_string(), "{s1=0}");
    EXPECT_FALSE(flip.crepant);
}

TEST(WallCrossingTest, ExtendedDataReducesToBothSides) {
    for (const WallCrossing& wc : {conifold(), kp2(), rank_one(IntMatrix{{2, 1, -1, -1, -1}})}) {
        const ExtendedGIT ext = extend(wc);
        EXPECT_TRUE(validate(ext.tilde()).ok());
        EXPECT_TRUE(ext.chamber_plus.contains(ext.omega_plus));
        EXPECT_TRUE(ext.chamber_tilde.contains(ext.omega_tilde));
        // every anticone of X+ / X- (extended) contains the new coordinate
        for (auto I : minimal_anticones(ext.plus())) EXPECT_TRUE(contains(I, wc.base.m));
        for (auto I : minimal_anticones(ext.minus())) EXPECT_TRUE(contains(I, wc.base.m));
        EXPECT_TRUE(pullback_is_equivariant(wc, Side::minus));
        EXPECT_TRUE(pullback_is_equivariant(wc, Side::plus));
    }
    EXPECT_EQ(rows_of(extend(kp2()).data.D), "(1,1,1,-3,0)\n(-1,-1,-1,0,1)\n");
}

TEST(Crepancy, EtaOfExamples) {
    EXPECT_EQ(eta_invariants(conifold()), std::make_pair(Integer(2), Integer(2)));
    EXPECT_EQ(eta_invariants(kp2()), std::make_pair(Integer(3), Integer(3)));
    const WallCrossing c2 = rank_one(IntMatrix{{1, -1}});
    EXPECT_TRUE(c2.crepant);
    EXPECT_EQ(eta_invariants(c2), std::make_pair(Integer(1), Integer(1)));
    const auto [down, up] = kn_strata(c2);
    EXPECT_EQ(down.eta, 1);
    EXPECT_EQ(up.eta, 1);
}

TEST(Crepancy, EtaDualityOnRandomWalls) {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> len(2, 5), mag(1, 4), sign(0, 1);
    int noncrepant = 0, crepant = 0;
    while (noncrepant < 50 || crepant < 10) {
        const std::size_t m = len(rng);
        IntMatrix D(1, m);
        bool pos = false, neg = false;
        for (std::size_t j = 0; j < m; ++j) {
            D(0, j) = sign(rng) ? mag(rng) : -mag(rng);
            (D(0, j) > 0 ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        const WallCrossing wc = rank_one(D);
        const auto [eta_plus, eta_minus] = eta_invariants(wc);
        EXPECT_EQ(!wc.crepant, eta_plus != eta_minus) << rows_of(D);
        const auto [down, up] = kn_strata(wc);
        // the stratum of e removes C^{M<=0}; its normal directions are M+
        EXPECT_EQ(down.eta, eta_plus);
        EXPECT_EQ(up.eta, eta_minus);
        (wc.crepant ? crepant : noncrepant)++;
    }
}

TEST(SevenLociTest, MatchDirectComputation) {
    std::vector<WallCrossing> walls = {conifold(), kp2(), rank_one(IntMatrix{{1, 2, -1, -2}}),
                                       rank_one(IntMatrix{{1, 1, 0, -1, -1}})};
    const GITData f1(2, IntMatrix{{1, 1, 0, -1}, {0, 0, 1, 1}}, {q(1), q(1)});
    walls.push_back(make_wall_crossing(f1, {q(1), q(1)}, {q(-1), q(2)}));
    for (const auto& wc : walls) {
        const ExtendedGIT ext = extend(wc);
        const SevenLoci loci = seven_loci(wc, ext);
        const auto direct = seven_loci_direct(ext, loci);
        for (std::size_t i = 0; i < 7; ++i)
            EXPECT_EQ(loci.generators[i], direct[i]) << SevenLoci::names[i] << " for " << rows_of(wc.base.D);
        // every locus sits inside V0
        const auto v0 = enlargement_closure(loci.generators[0], wc.base.m + 1);
        for (std::size_t i = 1; i < 7; ++i)
            for (auto J : enlargement_closure(loci.generators[i], wc.base.m + 1))
                EXPECT_NE(std::find(v0.begin(), v0.end(), J), v0.end());
    }
}

TEST(SevenLociTest, ConifoldTable) {
    const WallCrossing wc = conifold();
    const SevenLoci loci = seven_loci(wc, extend(wc));
    EXPECT_EQ(format_locus(loci.generators[0], 5), "all");
    EXPECT_EQ(format_locus(loci.generators[1], 5), "{z5!=0, (z1,z2)!=0}");
    EXPECT_EQ(format_locus(loci.generators[2], 5), "{z5!=0, (z3,z4)!=0}");
    EXPECT_EQ(format_locus(loci.generators[4], 5), "{z5!=0}");
}

TEST(Flop, EulerCharacteristicsAgree) {
    for (const WallCrossing& wc : {conifold(), kp2()}) {
        const ExtendedGIT ext = extend(wc);
        const auto O = EquivClass::structure_sheaf(1, wc.base.m);
        const auto chi_plus = euler_characteristic(wc.plus(), O);
        const auto chi_minus = euler_characteristic(wc.minus(), O);
        EulerOptions opt;
        opt.specialization = forget_last_weight(wc.base.m);
        const auto chi_tilde = euler_characteristic(ext.tilde(), EquivClass::structure_sheaf(2, wc.base.m + 1), opt);
        EXPECT_TRUE(rat_equal(chi_plus, chi_minus));
        EXPECT_TRUE(rat_equal(chi_plus, chi_tilde));
    }
}

TEST(Flop, PullbackPreservesEulerCharacteristicOfLineBundles) {
    // pi_+^* M on the blow-up has the same chi as M on X+
    for (const WallCrossing& wc : {conifold(), kp2()}) {
        const ExtendedGIT ext = extend(wc);
        EulerOptions opt;
        opt.specialization = forget_last_weight(wc.base.m);
        for (long a = -1; a <= 1; ++a) {
            const auto M = EquivClass::twist(wc.base.m, a);
            EXPECT_TRUE(rat_equal(euler_characteristic(ext.tilde(), pullback_class(wc, Side::plus, M), opt),
                                  euler_characteristic(wc.plus(), M)))
                << a;
        }
    }
}

TEST(Windows, WeightsAndMembership) {
    const WallCrossing wc = conifold();
    const auto [down, up] = kn_strata(wc);
    EXPECT_EQ(window_weights(EquivClass::twist(4, 1), down), (std::vector<Integer>{Integer(1)}));
    EXPECT_EQ(window_weights(EquivClass::twist(4, 0) + EquivClass::twist(4, 1), down),
              (std::vector<Integer>{Integer(0), Integer(1)}));
    const Window w{down, 0};
    EXPECT_TRUE(in_window(EquivClass::twist(4, 0), w));
    EXPECT_TRUE(in_window(EquivClass::twist(4, 1), w));
    EXPECT_FALSE(in_window(EquivClass::twist(4, 2), w));
    EXPECT_TRUE(in_window(EquivClass(1, 4), w));
    const auto [kdown, kup] = kn_strata(kp2());
    for (long a = 0; a < 3; ++a) EXPECT_TRUE(in_window(EquivClass::twist(4, a), Window{kdown, 0}));
    EXPECT_FALSE(in_window(EquivClass::twist(4, 3), Window{kdown, 0}));
}

TEST(Windows, ReindexingIdentity) {
    // [0, eta) against e is the same condition as [1 - eta, 1) against -e
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> u(-8, 8), s(-2, 2);
    for (const WallCrossing& wc : {conifold(), kp2(), rank_one(IntMatrix{{1, 2, -3}})}) {
        const auto [down, up] = kn_strata(wc);
        for (int trial = 0; trial < 60; ++trial) {
            IntVector sv(wc.base.m);
            for (auto& x : sv) x = s(rng);
            const EquivClass E = EquivClass::line({Integer(u(rng))}, sv);
            const Integer w = window_weights(E, down).front();
            EXPECT_EQ(window_weights(E, up).front(), -w);
            const bool a = in_window(E, Window{down, 0});
            const bool b = -w > -down.eta && -w <= 0;
            const bool c = in_window(E, Window{KNStratum{up.lambda, up.fixed_coords, up.blade_coords, down.eta},
                                                Integer(1) - down.eta});
            EXPECT_EQ(a, b);
            EXPECT_EQ(a, c);
        }
    }
}

TEST(Windows, KoszulRelationVanishesOnMinusSide) {
    for (const WallCrossing& wc : {conifold(), kp2()}) {
        const EquivClass R = koszul_relation(wc);
        EXPECT_TRUE(restricts_to_zero(wc.minus(), R));
        EXPECT_FALSE(restricts_to_zero(wc.plus(), R));
    }
}

TEST(Windows, LiftLandsInWindowAndAgreesOnMinusSide) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> u(-6, 6), s(-1, 1);
    for (const WallCrossing& wc : {conifold(), kp2()}) {
        const auto [down, up] = kn_strata(wc);
        for (int trial = 0; trial < 10; ++trial) {
            IntVector sv(wc.base.m);
            for (auto& x : sv) x = s(rng);
            const EquivClass E = EquivClass::line({Integer(u(rng))}, sv) + EquivClass::twist(wc.base.m, u(rng));
            for (long k : {0L, -1L, 2L}) {
                const EquivClass L = window_lift(wc, E, k);
                EXPECT_TRUE(in_window(L, Window{down, k}));
                EXPECT_TRUE(same_restrictions(wc.minus(), L, E));
            }
        }
    }
    const EquivClass O = EquivClass::twist(4, 1);
    EXPECT_EQ(window_lift(conifold(), O), O);
}

TEST(Windows, LiftIsUniqueOnPlusSide) {
    // two classes equal on X- have lifts that agree on X+
    const WallCrossing wc = kp2();
    const EquivClass E = EquivClass::twist(4, 4);
    const EquivClass F = E + EquivClass::twist(4, -2) * koszul_relation(wc);
    ASSERT_TRUE(same_restrictions(wc.minus(), E, F));
    EXPECT_TRUE(same_restrictions(wc.plus(), window_lift(wc, E), window_lift(wc, F)));
}

TEST(Windows, LiftRefusesNonCrepantWalls) {
    const WallCrossing wc = rank_one(IntMatrix{{2, 1, -1}});
    EXPECT_FALSE(wc.crepant);
    EXPECT_THROW(window_lift(wc, EquivClass::twist(3, 1)), Error);
}

TEST(FourierMukai, MatchesWindowOnExamples) {
    struct Case {
        WallCrossing wc;
        std::vector<long> window;
    };
    for (const Case& c : {Case{conifold(), {0, 1}}, Case{kp2(), {0, 1, 2}}}) {
        const ExtendedGIT ext = extend(c.wc);
        for (long a : c.window)
            for (long b = -1; b <= 1; ++b) {
                const auto rep = fm_euler_check(c.wc, ext, EquivClass::twist(c.wc.base.m, a), EquivClass::twist(c.wc.base.m, b));
                EXPECT_TRUE(rep.equal) << "L=O(" << a << ") M=O(" << b << ")";
            }
    }
}

TEST(FourierMukai, OutsideTheWindowTheNaiveComparisonFails) {
    // without the window lift, chi on the blow-up differs from chi on X+ of L (x) M
    const WallCrossing wc = conifold();
    const ExtendedGIT ext = extend(wc);
    EulerOptions opt;
    opt.specialization = forget_last_weight(4);
    const auto L = EquivClass::twist(4, 2), M = EquivClass::twist(4, 0);
    const auto upstairs = pullback_class(wc, Side::minus, L) * pullback_class(wc, Side::plus, M);
    const auto blowup = euler_characteristic(ext.tilde(), upstairs, opt);
    EXPECT_FALSE(rat_equal(blowup, euler_characteristic(wc.plus(), L * M)));
    EXPECT_TRUE(rat_equal(blowup, euler_characteristic(wc.plus(), window_lift(wc, L) * M)));
    // and the check detects a wrong window base
    EXPECT_FALSE(fm_euler_check(wc, ext, L, M, 1).equal);
}

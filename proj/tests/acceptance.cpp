// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "torickit/windows.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace torickit;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

RatMatrix column(std::initializer_list<long> entries) {
    RatMatrix A(entries.size(), 1);
    std::size_t i = 0;
    for (long x : entries) A(i++, 0) = x;
    return A;
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(TORICKIT_GOLDEN_DIR) + "/" + name);
    if (!in) throw Error("missing golden file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WallCrossing rank_one(IntMatrix D) { return make_wall_crossing(GITData(1, std::move(D), {q(1)}), {q(1)}, {q(-1)}); }

struct Check {
    std::string detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// 1. HRR on C^2 with the diagonal torus.
Check hrr_plane() {
    Check c;
    const GITData c2(0, IntMatrix(0, 2), {});
    EulerOptions opt;
    opt.specialization = column({1, 1});
    const auto chi = euler_characteristic(c2, EquivClass::structure_sheaf(0, 2), opt);
    const FracMonomial l(RatVector{q(1)});
    c.require(rat_equal(chi, RationalCharacter::inverse_of(1, {{CycNumber(1), l}, {CycNumber(1), l}})), "chi != 1/(1-e^l)^2");
    const auto rep = hrr_check(c2, EquivClass::structure_sheaf(0, 2), 4, column({1, 1}));
    c.require(rep.equal, "series differ");
    const std::vector<std::pair<int, Rational>> expected = {{-2, q(1)}, {-1, q(-1)}, {0, q(5, 12)}, {1, q(-1, 12)}, {2, q(1, 240)}};
    for (const auto& [n, v] : expected) {
        c.require(rep.lhs.univariate_coefficient(n) == CycNumber(v), "lhs coefficient of degree " + std::to_string(n));
        c.require(rep.rhs.univariate_coefficient(n) == CycNumber(v), "rhs coefficient of degree " + std::to_string(n));
    }
    return c;
}

// 2. The anti-diagonal torus is refused.
Check antidiagonal() {
    Check c;
    c.require(!weights_convex({{q(-1)}, {q(1)}}), "weights_convex accepted opposite weights");
    const GITData c2(0, IntMatrix(0, 2), {});
    EulerOptions opt;
    opt.specialization = column({-1, 1});
    bool refused = false;
    try {
        euler_characteristic(c2, EquivClass::structure_sheaf(0, 2), opt);
    } catch (const Error& e) {
        refused = std::string(e.what()).find("convergence certificate failed") != std::string::npos;
    }
    c.require(refused, "euler did not refuse");
    return c;
}

// 3. Conifold combinatorics against golden files.
Check conifold_combinatorics() {
    Check c;
    const WallCrossing wc = rank_one(IntMatrix{{1, 1, -1, -1}});
    const GITData plus = wc.plus();
    for (IndexSet I = 0; I < 16; ++I)
        c.require(is_anticone(plus, I) == (contains(I, 0) || contains(I, 1)), "anticone rule at " + format_set(I));
    std::string sets;
    for (auto I : minimal_anticones(plus)) sets += format_set(I) + "\n";
    c.require(sets == golden("conifold_minimal_anticones.txt"), "minimal anticones");
    c.require(format_locus(minimal_anticones(plus), 4) + "\n" == golden("conifold_u_plus.txt"), "U+");
    const ExtendedGIT ext = extend(wc);
    std::string rows;
    for (std::size_t i = 0; i < ext.data.D.rows(); ++i) {
        rows += "(";
        for (std::size_t j = 0; j < ext.data.D.cols(); ++j) rows += (j ? "," : "") + ext.data.D(i, j).get_str();
        rows += ")\n";
    }
    c.require(rows == golden("conifold_extended_weights.txt"), "extended weights");
    const std::string chambers = "C+ " + ext.chamber_plus.to_string() + "\nC- " + ext.chamber_minus.to_string() +
                                 "\nC~ " + ext.chamber_tilde.to_string() + "\n";
    c.require(chambers == golden("conifold_chambers.txt"), "chambers");
    const SevenLoci loci = seven_loci(wc, ext);
    c.require(format_locus(loci.generators[3], 5) + "\n" == golden("conifold_v_tilde.txt"), "V~");
    return c;
}

// 4. Crepancy and eta.
Check crepancy() {
    Check c;
    const WallCrossing con = rank_one(IntMatrix{{1, 1, -1, -1}}), kp2 = rank_one(IntMatrix{{1, 1, 1, -3}});
    c.require(con.crepant && eta_invariants(con) == std::make_pair(Integer(2), Integer(2)), "conifold eta");
    c.require(kp2.crepant && eta_invariants(kp2) == std::make_pair(Integer(3), Integer(3)), "kp2 eta");
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> len(2, 5), mag(1, 4), sign(0, 1);
    int seen = 0;
    while (seen < 50) {
        const std::size_t m = len(rng);
        IntMatrix D(1, m);
        Integer total = 0;
        bool pos = false, neg = false;
        for (std::size_t j = 0; j < m; ++j) {
            D(0, j) = sign(rng) ? mag(rng) : -mag(rng);
            total += D(0, j);
            (D(0, j) > 0 ? pos : neg) = true;
        }
        if (!pos || !neg || total == 0) continue;
        ++seen;
        const WallCrossing wc = rank_one(D);
        const auto [a, b] = eta_invariants(wc);
        const auto [down, up] = kn_strata(wc);
        c.require(!wc.crepant && a != b, "non-crepant wall reported crepant or equal eta");
        c.require(down.eta == a && up.eta == b, "strata eta disagree with eta_invariants");
    }
    return c;
}

// 5. Localization against the monomial count.
Check localization_oracle() {
    Check c;
    auto compare = [&](const GITData& data, const IntVector& u, const RatVector& grading, const std::string& label) {
        const auto chi = euler_characteristic(data, EquivClass::line(u, IntVector(data.m, Integer(0))));
        c.require(cyclotomic_parts_cancel(chi), label + ": cyclotomic parts remain");
        const LaurentPoly expanded = laurent_expand(chi, grading, q(8));
        c.require(expanded.has_rational_coefficients(), label + ": irrational coefficient");
        c.require(expanded == sections_character(data, u, 8).truncated(grading, q(8)), label + ": expansion differs");
    };
    for (std::size_t m = 1; m <= 3; ++m)
        compare(GITData(0, IntMatrix(0, m), {}), {}, RatVector(m, q(1)), "C^" + std::to_string(m));
    const GITData p12(1, IntMatrix{{1, 2}}, {q(1)});
    for (long k = 0; k <= 4; ++k) compare(p12, {Integer(k)}, {q(1), q(1)}, "P(1,2) O(" + std::to_string(k) + ")");
    return c;
}

// 6. Flop invariance of chi(O).
Check flop_invariance() {
    Check c;
    for (const auto& [name, wc] : {std::make_pair("conifold", rank_one(IntMatrix{{1, 1, -1, -1}})),
                                   std::make_pair("kp2", rank_one(IntMatrix{{1, 1, 1, -3}}))}) {
        const ExtendedGIT ext = extend(wc);
        EulerOptions opt;
        opt.specialization = forget_last_weight(wc.base.m);
        const auto plus = euler_characteristic(wc.plus(), EquivClass::structure_sheaf(1, wc.base.m));
        const auto minus = euler_characteristic(wc.minus(), EquivClass::structure_sheaf(1, wc.base.m));
        const auto tilde = euler_characteristic(ext.tilde(), EquivClass::structure_sheaf(2, wc.base.m + 1), opt);
        c.require(rat_equal(plus, minus), std::string(name) + ": X+ vs X-");
        c.require(rat_equal(plus, tilde), std::string(name) + ": X+ vs blow-up");
    }
    return c;
}

// 7. Fourier-Mukai against the window on line bundles.
Check fourier_mukai() {
    Check c;
    for (const auto& [wc, top] : {std::make_pair(rank_one(IntMatrix{{1, 1, -1, -1}}), 1L),
                                  std::make_pair(rank_one(IntMatrix{{1, 1, 1, -3}}), 2L)}) {
        const ExtendedGIT ext = extend(wc);
        for (long a = 0; a <= top; ++a)
            for (long b = -1; b <= 1; ++b) {
                const auto rep = fm_euler_check(wc, ext, EquivClass::twist(wc.base.m, a), EquivClass::twist(wc.base.m, b));
                c.require(rep.equal, "m=" + std::to_string(wc.base.m) + " L=O(" + std::to_string(a) + ") M=O(" +
                                         std::to_string(b) + ")");
            }
    }
    return c;
}

// 8. Property suites.
Check properties() {
    Check c;
    std::mt19937 rng(8);
    // anticone enlargement closure, exhaustive over subsets, m <= 8
    std::uniform_int_distribution<int> entry(-2, 2), coef(1, 3);
    for (std::size_t m = 1; m <= 8; ++m)
        for (std::size_t r = 1; r <= std::min<std::size_t>(m, 3); ++r) {
            GITData data;
            do {
                IntMatrix D(r, m);
                RatVector omega(r, Rational(0));
                for (std::size_t j = 0; j < m; ++j) {
                    const int w = coef(rng);
                    for (std::size_t i = 0; i < r; ++i) {
                        D(i, j) = entry(rng);
                        omega[i] += w * D(i, j);
                    }
                }
                data = GITData(r, D, omega);
            } while (on_wall(data) || !validate(data).ok());
            const auto all = anticones(data);
            for (auto I : all)
                for (IndexSet J = 0; J <= full_set(m); ++J)
                    if (is_subset(I, J)) c.require(is_anticone(data, J), "enlargement closure");
            c.require(enlargement_closure(minimal_anticones(data), m) == all, "minimal anticones regenerate");
        }
    // chamber invariance of chi
    const GITData f1(2, IntMatrix{{1, 1, 0, -1}, {0, 0, 1, 1}}, {q(1), q(1)});
    const Chamber ch = chamber_of(f1);
    const EquivClass E = EquivClass::line({Integer(1), Integer(1)}, IntVector(4, Integer(0)));
    const auto reference = euler_characteristic(f1, E);
    for (const RatVector& w : {RatVector{q(3), q(1, 2)}, RatVector{q(1, 7), q(5)}, RatVector{q(9, 4), q(9, 4)}}) {
        c.require(ch.contains(w), "sample outside chamber");
        c.require(rat_equal(euler_characteristic(f1.with_omega(w), E), reference), "chi changed inside a chamber");
    }
    // restriction is multiplicative
    std::uniform_int_distribution<int> small(-2, 2);
    const GITData p12(1, IntMatrix{{1, 2}}, {q(1)});
    for (const GITData& data : {p12, f1}) {
        const auto fps = all_fixed_point_data(data);
        for (int trial = 0; trial < 20; ++trial) {
            auto random_line = [&] {
                IntVector u(data.r), s(data.m);
                for (auto& x : u) x = small(rng);
                for (auto& x : s) x = small(rng);
                return EquivClass::line(u, s, Integer(small(rng) == 0 ? 1 : 2)) + EquivClass::line(u, IntVector(data.m, Integer(0)));
            };
            const EquivClass a = random_line(), b = random_line();
            for (const auto& fp : fps)
                for (std::size_t g = 0; g < fp.group.size(); ++g)
                    c.require(restrict_class(a * b, fp, g) == restrict_class(a, fp, g) * restrict_class(b, fp, g),
                              "restriction not multiplicative");
        }
    }
    // Smith normal form identity
    std::uniform_int_distribution<int> dim(1, 4), val(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix M(dim(rng), dim(rng));
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = val(rng);
        const auto snf = smith_normal_form(M);
        c.require(snf.U * M * snf.V == snf.S, "U M V != S");
    }
    // window reindexing: [0, eta) against e is [1 - eta, 1) against -e
    for (const WallCrossing& wc : {rank_one(IntMatrix{{1, 1, -1, -1}}), rank_one(IntMatrix{{1, 1, 1, -3}})}) {
        const auto [down, up] = kn_strata(wc);
        const KNStratum flipped{up.lambda, up.fixed_coords, up.blade_coords, down.eta};
        for (long a = -10; a <= 10; ++a) {
            const EquivClass L = EquivClass::twist(wc.base.m, a);
            const Integer w = window_weights(L, down).front();
            const bool first = in_window(L, Window{down, 0});
            c.require(first == (-w > -down.eta && -w <= 0), "reindexing (-eta, 0]");
            c.require(first == in_window(L, Window{flipped, Integer(1) - down.eta}), "reindexing [1-eta, 1)");
        }
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "HRR on C^2, diagonal torus", 1, hrr_plane},
        {2, "anti-diagonal torus refused", 1, antidiagonal},
        {3, "conifold combinatorics (golden)", 1, conifold_combinatorics},
        {4, "crepancy and eta duality", 5, crepancy},
        {5, "localization vs monomial count", 10, localization_oracle},
        {6, "flop invariance of chi(O)", 10, flop_invariance},
        {7, "Fourier-Mukai vs window lift", 30, fourier_mukai},
        {8, "property suites", 30, properties},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (result.ok && secs > cr.budget_seconds) {
            result.ok = false;
            result.detail = "over time budget";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (result.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << secs << " s)";
        if (!result.ok) line << " -- " << result.detail;
        std::cout << line.str() << "\n";
        failures += result.ok ? 0 : 1;
    }
    return failures;
}

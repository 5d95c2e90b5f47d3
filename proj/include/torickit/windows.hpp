#pragma once

#include "torickit/localization.hpp"
#include "torickit/wallcrossing.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace torickit {

/// Kempf-Ness stratum (lambda, Z, S): Z is the coordinate subspace C^{M0}, S the blade
/// C^{M<=0} (for lambda = e) or C^{M>=0} (for lambda = -e), both intersected with U_0.
struct KNStratum {
    IntVector lambda;
    IndexSet fixed_coords = 0;
    IndexSet blade_coords = 0;
    Integer eta = 0;
};

/// Weight of det of the normal bundle of the blade, restricted to Z, under lambda.
inline Integer normal_weight(const WallCrossing& wc, const IntVector& lambda, IndexSet blade) {
    Integer eta = 0;
    for (std::size_t i = 0; i < wc.base.m; ++i)
        if (!contains(blade, i)) eta += dot(wc.base.character(i), lambda);
    return eta;
}

/// The strata (e, Z, S_-) and (-e, Z, S_+).
inline std::pair<KNStratum, KNStratum> kn_strata(const WallCrossing& wc) {
    const auto p = partition_M(wc);
    IntVector neg = wc.e;
    for (auto& x : neg) x = -x;
    KNStratum down{wc.e, p.zero_set(), p.zero_set() | p.minus_set(), 0};
    down.eta = normal_weight(wc, down.lambda, down.blade_coords);
    KNStratum up{neg, p.zero_set(), p.zero_set() | p.plus_set(), 0};
    up.eta = normal_weight(wc, up.lambda, up.blade_coords);
    return {down, up};
}

/// Grade-restriction window [k, k + eta).
struct Window {
    KNStratum stratum;
    Integer k = 0;

    bool admits(const Integer& w) const { return w >= k && w < k + stratum.eta; }
};

/// Pairing of each line class's K-character with the one-parameter subgroup, with multiplicity.
inline std::vector<Integer> window_weights(const EquivClass& E, const KNStratum& stratum) {
    std::vector<Integer> out;
    for (const auto& [l, c] : E.terms()) {
        const Integer w = dot(l.u, stratum.lambda);
        for (Integer n = 0; n < abs(c); ++n) out.push_back(w);
    }
    return out;
}

inline bool in_window(const EquivClass& E, const Window& w) {
    for (const auto& x : window_weights(E, w.stratum))
        if (!w.admits(x)) return false;
    return true;
}

/// prod over i in M- of (1 - [(-D_i, e_i)]): the Koszul class of the coordinates z_i, i in M-.
/// These never vanish together on the X- semistable locus, so it restricts to zero there.
inline EquivClass koszul_relation(const WallCrossing& wc) {
    const std::size_t r = wc.base.r, m = wc.base.m;
    const auto p = partition_M(wc);
    EquivClass R = EquivClass::structure_sheaf(r, m);
    for (auto i : p.minus) {
        IntVector u = wc.base.character(i);
        for (auto& x : u) x = -x;
        IntVector s(m, Integer(0));
        s[i] = 1;
        R = R * (EquivClass::structure_sheaf(r, m) - EquivClass::line(u, s));
    }
    return R;
}

/// True when every restriction of E to a fixed point of the given data is zero.
inline bool restricts_to_zero(const GITData& data, const EquivClass& E) {
    for (const auto& fp : all_fixed_point_data(data))
        for (std::size_t g = 0; g < fp.group.size(); ++g)
            if (!restrict_class(E, fp, g).is_zero()) return false;
    return true;
}

inline bool same_restrictions(const GITData& data, const EquivClass& a, const EquivClass& b) {
    return restricts_to_zero(data, a - b);
}

inline constexpr std::size_t kLiftIterationCap = 10000;

/// Rewrites E modulo the Koszul relation until every e-weight lies in [k, k + eta).
/// The result agrees with E on X- and, restricted to X+, is the window image of E.
inline EquivClass window_lift(const WallCrossing& wc, const EquivClass& E, const Integer& k = 0) {
    if (!wc.crepant) throw Error("non-crepant: window lifts need a crepant wall");
    const Partition p = [&] {
        try {
            return partition_M(wc);
        } catch (const Error&) {
            throw Error("relation not available: M+ or M- is empty");
        }
    }();
    const auto [eta, eta_minus] = eta_invariants(wc);
    const EquivClass R = koszul_relation(wc);
    if (!restricts_to_zero(wc.minus(), R)) throw Error("relation does not vanish on X-");

    const std::size_t r = wc.base.r, m = wc.base.m;
    // L (x) (D_{M-}, -e_{M-}) has e-weight w - eta
    LineClass top{IntVector(r, Integer(0)), IntVector(m, Integer(0))};
    for (auto i : p.minus) {
        for (std::size_t a = 0; a < r; ++a) top.u[a] += wc.base.D(a, i);
        top.s[i] -= 1;
    }
    const Integer sign = p.minus.size() % 2 == 0 ? 1 : -1;

    EquivClass current = E;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > kLiftIterationCap) throw Error("window lift did not terminate within the iteration cap");
        const LineClass* offender = nullptr;
        Integer coeff;
        for (const auto& [l, c] : current.terms()) {
            const Integer w = dot(l.u, wc.e);
            if (w < k || w >= k + eta) {
                offender = &l;
                coeff = c;
                break;
            }
        }
        if (!offender) return current;
        const LineClass L = *offender;
        const Integer w = dot(L.u, wc.e);
        const EquivClass single = EquivClass::line(L.u, L.s, coeff);
        if (w < k) {
            current -= single * R;
        } else {
            current -= sign * (EquivClass::line(L.u, L.s, coeff) * EquivClass::line(top.u, top.s) * R);
        }
    }
}

/// The seven semistable loci of the extended data, each as generators of an up-closed family.
struct SevenLoci {
    static constexpr std::array<std::string_view, 7> names = {"W0", "C+", "C-", "C~", "W+|-", "W+|~", "W-|~"};
    std::array<std::vector<IndexSet>, 7> generators;
    std::array<RatVector, 7> sample_points;
};

namespace detail {

inline std::vector<IndexSet> remove_subsets_of(const std::vector<IndexSet>& gens, std::size_t n,
                                               const std::vector<IndexSet>& removed) {
    std::vector<IndexSet> keep;
    for (auto J : enlargement_closure(gens, n)) {
        bool drop = false;
        for (auto S : removed)
            if (is_subset(J, S)) drop = true;
        if (!drop) keep.push_back(J);
    }
    return minimal_elements(keep);
}

}  // namespace detail

/// V0 from the anticones on the wall, and the other six by deleting coordinate subspaces.
inline SevenLoci seven_loci(const WallCrossing& wc, const ExtendedGIT& ext) {
    const std::size_t m = wc.base.m, n = m + 1;
    const auto p = partition_M(wc);
    const IndexSet last = bit(m);
    SevenLoci out;

    std::vector<IndexSet> v0;
    for (auto I : minimal_anticones(wc.zero())) v0.push_back(is_subset(I, p.zero_set()) ? I : (I | last));
    v0 = minimal_elements(v0);

    const IndexSet le0 = p.zero_set() | p.minus_set() | last;  // C^{M<=0} x C
    const IndexSet ge0 = p.zero_set() | p.plus_set() | last;   // C^{M>=0} x C
    const IndexSet cm = full_set(m);                           // C^m
    out.generators[0] = v0;
    out.generators[1] = detail::remove_subsets_of(v0, n, {le0, cm});
    out.generators[2] = detail::remove_subsets_of(v0, n, {ge0, cm});
    out.generators[3] = detail::remove_subsets_of(v0, n, {le0, ge0});
    out.generators[4] = detail::remove_subsets_of(v0, n, {cm});
    out.generators[5] = detail::remove_subsets_of(v0, n, {le0});
    out.generators[6] = detail::remove_subsets_of(v0, n, {ge0});

    // sample stability conditions in the same order
    const Rational tau = ext.epsilon;
    const Rational ep = dot(to_rational(wc.e), wc.omega_plus);
    auto point = [&](const RatVector& base, const Rational& last_coord) {
        RatVector v = base;
        v.push_back(last_coord);
        return v;
    };
    RatVector toward_plus = wc.omega_zero, toward_minus = wc.omega_zero;
    for (std::size_t i = 0; i < wc.base.r; ++i) {
        toward_plus[i] += tau * (wc.omega_plus[i] - wc.omega_zero[i]);
        toward_minus[i] += tau * (wc.omega_minus[i] - wc.omega_zero[i]);
    }
    out.sample_points = {point(wc.omega_zero, 0), ext.omega_plus, ext.omega_minus, ext.omega_tilde,
                         point(wc.omega_zero, 1), point(toward_plus, -tau * ep), point(toward_minus, 0)};
    return out;
}

/// Minimal anticones of the extended data at each sample point.
inline std::array<std::vector<IndexSet>, 7> seven_loci_direct(const ExtendedGIT& ext, const SevenLoci& loci) {
    std::array<std::vector<IndexSet>, 7> out;
    for (std::size_t i = 0; i < 7; ++i) out[i] = minimal_anticones(ext.data.with_omega(loci.sample_points[i]));
    return out;
}

struct FmReport {
    RationalCharacter blowup_side;  // chi on the common blow-up, extra weight forgotten
    RationalCharacter window_side;  // chi on X+ of the window lift
    EquivClass lift;
    bool equal = false;
};

/// chi_{X~}(pi_-^* L (x) pi_+^* M) against chi_{X+}(lift(L) (x) M).
inline FmReport fm_euler_check(const WallCrossing& wc, const ExtendedGIT& ext, const EquivClass& L, const EquivClass& M,
                               const Integer& k = 0) {
    if (!wc.crepant) throw Error("non-crepant: the window comparison needs a crepant wall");
    const std::size_t m = wc.base.m;
    EulerOptions blowup_opt;
    blowup_opt.specialization = forget_last_weight(m);
    const EquivClass upstairs = pullback_class(wc, Side::minus, L) * pullback_class(wc, Side::plus, M);
    FmReport rep{euler_characteristic(ext.tilde(), upstairs, blowup_opt), RationalCharacter(m), window_lift(wc, L, k),
                 false};
    rep.window_side = euler_characteristic(wc.plus(), rep.lift * M);
    rep.equal = rat_equal(rep.blowup_side, rep.window_side);
    return rep;
}

}  // namespace torickit

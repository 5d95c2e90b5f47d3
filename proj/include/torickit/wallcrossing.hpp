#pragma once

#include "torickit/gitdata.hpp"
#include "torickit/localization.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// A single crossing of a hyperplane wall W between adjacent chambers.
struct WallCrossing {
    GITData base;        // omega set to omega_plus
    RatVector omega_plus;
    RatVector omega_minus;
    RatVector omega_zero;  // crossing point on W
    IntVector e;           // primitive normal of W, positive on the + side
    bool crepant = false;

    GITData plus() const { return base.with_omega(omega_plus); }
    GITData minus() const { return base.with_omega(omega_minus); }
    GITData zero() const { return base.with_omega(omega_zero); }

    Integer pairing(std::size_t i) const { return dot(base.character(i), e); }

    /// "{s : s1 = 0}" style description of the hyperplane e . s = 0.
    std::string wall_string() const {
        std::string lhs;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const Integer mag = abs(e[i]);
            if (!lhs.empty()) lhs += e[i] > 0 ? "+" : "-";
            else if (e[i] < 0) lhs += "-";
            if (mag != 1) lhs += mag.get_str();
            lhs += "s" + std::to_string(i + 1);
        }
        return "{" + lhs + "=0}";
    }
};

namespace detail {

// Primitive normal of the hyperplane spanned by the given r-1 independent vectors in Q^r.
inline std::optional<IntVector> hyperplane_normal(const std::vector<RatVector>& gens, std::size_t r) {
    RatMatrix M(gens.size(), r);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) M(i, j) = gens[i][j];
    const auto ker = kernel_basis(M);
    if (ker.size() != 1) return std::nullopt;
    return primitive_on_ray(ker.front());
}

}  // namespace detail

/// Finds the unique wall crossed by the segment from omega_plus to omega_minus.
inline WallCrossing make_wall_crossing(const GITData& base, const RatVector& omega_plus, const RatVector& omega_minus) {
    const GITData gp = base.with_omega(omega_plus), gm = base.with_omega(omega_minus);
    if (on_wall(gp) || on_wall(gm)) throw Error("degenerate: a stability condition lies on a wall");
    for (const auto* g : {&gp, &gm}) {
        const auto rep = validate(*g);
        if (!rep.ok()) throw InputError("invalid stability condition: " + rep.failures.front());
    }
    if (base.r == 0) throw Error("not adjacent: a rank-zero torus has no walls");

    RatVector dir(base.r);
    for (std::size_t i = 0; i < base.r; ++i) dir[i] = omega_minus[i] - omega_plus[i];

    struct Hit {
        Rational t;
        IntVector normal;
    };
    std::vector<Hit> hits;
    for (auto I : subsets_of_size(base.m, base.r - 1)) {
        const auto gens = base.characters_of(I);
        const auto n = detail::hyperplane_normal(gens, base.r);
        if (!n) continue;
        const RatVector nr = to_rational(*n);
        const Rational a = dot(nr, omega_plus), b = dot(nr, omega_minus);
        if (a == 0 || b == 0 || (a > 0) == (b > 0)) continue;
        const Rational t = a / (a - b);
        RatVector p = omega_plus;
        for (std::size_t i = 0; i < base.r; ++i) p[i] += t * dir[i];
        if (!cone_contains(gens, p, false)) continue;
        bool seen = false;
        for (const auto& h : hits) {
            IntVector neg = h.normal;
            for (auto& x : neg) x = -x;
            if (h.t == t && (h.normal == *n || neg == *n)) seen = true;
        }
        if (!seen) hits.push_back({t, *n});
    }
    if (hits.size() != 1)
        throw Error("not adjacent: the segment crosses " + std::to_string(hits.size()) + " walls");
    if (anticones(gp) == anticones(gm)) throw Error("not adjacent: both stability conditions give the same chamber");

    WallCrossing wc;
    wc.base = gp;
    wc.omega_plus = omega_plus;
    wc.omega_minus = omega_minus;
    wc.omega_zero = omega_plus;
    for (std::size_t i = 0; i < base.r; ++i) wc.omega_zero[i] += hits[0].t * dir[i];
    wc.e = hits[0].normal;
    if (dot(to_rational(wc.e), omega_plus) < 0)
        for (auto& x : wc.e) x = -x;
    IntVector total(base.r, Integer(0));
    for (std::size_t j = 0; j < base.m; ++j)
        for (std::size_t i = 0; i < base.r; ++i) total[i] += base.D(i, j);
    wc.crepant = dot(total, wc.e) == 0;
    return wc;
}

struct Partition {
    std::vector<std::size_t> plus, zero, minus;

    IndexSet plus_set() const { return make_set(plus); }
    IndexSet zero_set() const { return make_set(zero); }
    IndexSet minus_set() const { return make_set(minus); }
};

/// M+, M0, M- by the sign of D_i . e.
inline Partition partition_M(const WallCrossing& wc) {
    Partition p;
    for (std::size_t i = 0; i < wc.base.m; ++i) {
        const Integer s = wc.pairing(i);
        (s > 0 ? p.plus : s < 0 ? p.minus : p.zero).push_back(i);
    }
    if (p.plus.empty() || p.minus.empty()) throw Error("one-sided wall: M+ or M- is empty");
    return p;
}

/// (eta_+, eta_-) = (sum over M+ of D_i . e, -sum over M- of D_i . e).
inline std::pair<Integer, Integer> eta_invariants(const WallCrossing& wc) {
    const auto p = partition_M(wc);
    Integer plus = 0, minus = 0;
    for (auto i : p.plus) plus += wc.pairing(i);
    for (auto i : p.minus) minus -= wc.pairing(i);
    return {plus, minus};
}

/// Rank r+1 data on m+1 characters with sample points for the chambers of X+, X- and the common blow-up.
struct ExtendedGIT {
    GITData data;  // omega set to omega_tilde
    RatVector omega_plus, omega_minus, omega_tilde;
    Rational epsilon;
    Chamber chamber_plus, chamber_minus, chamber_tilde;

    GITData plus() const { return data.with_omega(omega_plus); }
    GITData minus() const { return data.with_omega(omega_minus); }
    GITData tilde() const { return data.with_omega(omega_tilde); }
};

inline IntMatrix extended_weights(const WallCrossing& wc) {
    const std::size_t r = wc.base.r, m = wc.base.m;
    IntMatrix Dt(r + 1, m + 1);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < r; ++i) Dt(i, j) = wc.base.D(i, j);
        const Integer s = wc.pairing(j);
        Dt(r, j) = s > 0 ? Integer(-s) : Integer(0);
    }
    Dt(r, m) = 1;
    return Dt;
}

namespace detail {

// Smallest t > 0 where the ray p0 + t d meets the span of a subset of columns at an isolated point.
inline std::optional<Rational> first_span_hit(const IntMatrix& D, const RatVector& p0, const RatVector& d) {
    const std::size_t n = D.rows(), m = D.cols();
    std::optional<Rational> best;
    const IndexSet all = full_set(m);
    for (IndexSet J = 0;; ++J) {
        const auto idx = members(J);
        // solve D_J x - t d = p0
        RatMatrix A(n, idx.size() + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < idx.size(); ++k) A(i, k) = D(i, idx[k]);
            A(i, idx.size()) = -d[i];
        }
        if (const auto sol = rational_solve(A, p0)) {
            bool determined = true;
            for (const auto& kv : kernel_basis(A))
                if (kv.back() != 0) determined = false;
            const Rational t = sol->back();
            if (determined && t > 0 && (!best || t < *best)) best = t;
        }
        if (J == all) break;
    }
    return best;
}

}  // namespace detail

/// Extended data of the crossing. epsilon is halved until (omega_0, -epsilon) sits in the
/// chamber of the common blow-up with no wall between it and (omega_0, 0).
inline ExtendedGIT extend(const WallCrossing& wc, Rational epsilon = make_rational(1, 1000)) {
    if (epsilon <= 0) throw InputError("epsilon must be positive");
    const std::size_t r = wc.base.r, m = wc.base.m;
    ExtendedGIT ext;
    const IntMatrix Dt = extended_weights(wc);

    RatVector p0 = wc.omega_zero, down(r + 1, Rational(0));
    p0.push_back(0);
    down[r] = -1;
    if (const auto hit = detail::first_span_hit(Dt, p0, down))
        while (epsilon >= *hit) epsilon /= 2;
    ext.epsilon = epsilon;

    ext.omega_plus = wc.omega_plus;
    ext.omega_plus.push_back(1);
    ext.omega_minus = wc.omega_minus;
    ext.omega_minus.push_back(1);
    ext.omega_tilde = wc.omega_zero;
    ext.omega_tilde.push_back(-epsilon);
    ext.data = GITData(r + 1, Dt, ext.omega_tilde);

    for (const auto* w : {&ext.omega_plus, &ext.omega_minus, &ext.omega_tilde})
        if (on_wall(ext.data, *w)) throw Error("epsilon too large: extended stability condition lies on a wall");
    ext.chamber_plus = chamber_of(ext.plus());
    ext.chamber_minus = chamber_of(ext.minus());
    ext.chamber_tilde = chamber_of(ext.tilde());

    // X+ and X- are recovered after inverting the last coordinate
    const std::pair<const GITData, const GITData> sides[] = {{ext.plus(), wc.plus()}, {ext.minus(), wc.minus()}};
    for (const auto& [extended, original] : sides) {
        for (auto I : anticones(extended))
            if (!contains(I, m)) throw Error("extended chamber check failed: anticone " + format_set(I) + " misses the last index");
        std::vector<IndexSet> reduced;
        for (auto I : minimal_anticones(extended)) reduced.push_back(I & ~bit(m));
        if (minimal_elements(reduced) != minimal_anticones(original))
            throw Error("extended chamber check failed: quotient does not reproduce the original side");
    }
    return ext;
}

enum class Side { minus, plus };

/// Exponents k_j of the last coordinate in the map to the given side.
inline std::vector<Integer> side_exponents(const WallCrossing& wc, Side side) {
    std::vector<Integer> k(wc.base.m);
    for (std::size_t j = 0; j < wc.base.m; ++j) {
        const Integer s = wc.pairing(j);
        const Integer signed_s = side == Side::minus ? s : Integer(-s);
        k[j] = signed_s > 0 ? signed_s : Integer(0);
    }
    return k;
}

/// Pullback along pi_-: (u, s) -> ((u, 0), (s, sum s_j k_j)); along pi_+: (u, s) -> ((u, -u.e), (s, sum s_j k'_j)).
inline EquivClass pullback_class(const WallCrossing& wc, Side side, const EquivClass& E) {
    if (E.r() != wc.base.r || E.m() != wc.base.m) throw InputError("class does not match the base data");
    const auto k = side_exponents(wc, side);
    EquivClass out(wc.base.r + 1, wc.base.m + 1);
    for (const auto& [l, c] : E.terms()) {
        LineClass t{l.u, l.s};
        t.u.push_back(side == Side::minus ? Integer(0) : Integer(-dot(l.u, wc.e)));
        Integer last = 0;
        for (std::size_t j = 0; j < wc.base.m; ++j) last += l.s[j] * k[j];
        t.s.push_back(last);
        out.add(t, c);
    }
    return out;
}

/// Checks that the coordinate monomials z_j z_{m+1}^{k_j} carry the pulled-back characters of z_j.
inline bool pullback_is_equivariant(const WallCrossing& wc, Side side) {
    const std::size_t r = wc.base.r, m = wc.base.m;
    const IntMatrix Dt = extended_weights(wc);
    const auto k = side_exponents(wc, side);
    for (std::size_t j = 0; j < m; ++j) {
        IntVector s(m, Integer(0));
        s[j] = 1;
        const auto pulled = pullback_class(wc, side, EquivClass::line(wc.base.character(j), s));
        LineClass expect;
        expect.u = Dt.column(j);
        expect.u[r] += k[j];
        expect.s = IntVector(m + 1, Integer(0));
        expect.s[j] = 1;
        expect.s[m] = k[j];
        if (pulled.terms().size() != 1 || !(pulled.terms().begin()->first == expect)) return false;
    }
    return true;
}

/// lambda on the extended torus restricted to the original one (lambda_{m+1} -> 0).
inline RatMatrix forget_last_weight(std::size_t m) {
    RatMatrix A(m + 1, m);
    for (std::size_t i = 0; i < m; ++i) A(i, i) = 1;
    return A;
}

}  // namespace torickit

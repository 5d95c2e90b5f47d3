#pragma once

#include "torickit/exactalg/linear_program.hpp"
#include "torickit/exactalg/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// Subset of {0..m-1} as a bit mask. Printed 1-based.
using IndexSet = std::uint64_t;

inline constexpr std::size_t kMaxCharacters = 24;

inline IndexSet bit(std::size_t i) { return IndexSet{1} << i; }
inline IndexSet full_set(std::size_t m) { return m == 64 ? ~IndexSet{0} : bit(m) - 1; }
inline std::size_t cardinality(IndexSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool contains(IndexSet s, std::size_t i) { return (s >> i) & 1U; }
inline bool is_subset(IndexSet a, IndexSet b) { return (a & ~b) == 0; }

inline std::vector<std::size_t> members(IndexSet s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s; ++i, s >>= 1)
        if (s & 1U) out.push_back(i);
    return out;
}

inline IndexSet make_set(const std::vector<std::size_t>& idx) {
    IndexSet s = 0;
    for (auto i : idx) s |= bit(i);
    return s;
}

/// "{1,2}" with 1-based indices.
inline std::string format_set(IndexSet s) {
    std::string out = "{";
    bool first = true;
    for (auto i : members(s)) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(i + 1);
    }
    return out + "}";
}

/// Orders sets by size, then lexicographically by their sorted members.
inline bool set_less(IndexSet a, IndexSet b) {
    if (cardinality(a) != cardinality(b)) return cardinality(a) < cardinality(b);
    return members(a) < members(b);
}

/// Torus rank r, characters D_1..D_m (columns of the r x m matrix D) and stability condition omega.
struct GITData {
    std::size_t r = 0;
    std::size_t m = 0;
    IntMatrix D;
    RatVector omega;

    GITData() = default;
    GITData(std::size_t rank, IntMatrix weights, RatVector stability)
        : r(rank), m(weights.cols()), D(std::move(weights)), omega(std::move(stability)) {
        check_shape();
    }

    /// Builds from a list of characters (one vector of length r per coordinate).
    static GITData from_characters(std::size_t rank, const std::vector<IntVector>& characters, RatVector stability) {
        return GITData(rank, IntMatrix::from_columns(characters, rank), std::move(stability));
    }

    void check_shape() const {
        if (D.rows() != r) throw InputError("weight matrix must have r rows");
        if (D.cols() != m) throw InputError("weight matrix must have m columns");
        if (omega.size() != r) throw InputError("stability condition must have r entries");
        if (m < r) throw InputError("need m >= r");
        if (m > kMaxCharacters) throw InputError("too many characters for subset enumeration");
    }

    IntVector character(std::size_t i) const { return D.column(i); }
    RatVector rational_character(std::size_t i) const { return to_rational(D.column(i)); }

    std::vector<RatVector> characters_of(IndexSet I) const {
        std::vector<RatVector> out;
        for (auto i : members(I)) out.push_back(rational_character(i));
        return out;
    }

    GITData with_omega(RatVector w) const { return GITData(r, D, std::move(w)); }

    bool operator==(const GITData& o) const { return r == o.r && m == o.m && D == o.D && omega == o.omega; }
};

/// omega lies in the open cone of the characters indexed by I.
inline bool is_anticone(const GITData& data, IndexSet I) {
    return cone_contains(data.characters_of(I), data.omega, true);
}

/// Every anticone, ordered by size then lexicographically.
inline std::vector<IndexSet> anticones(const GITData& data) {
    std::vector<IndexSet> out;
    const IndexSet all = full_set(data.m);
    for (IndexSet I = 0;; ++I) {
        if (is_anticone(data, I)) out.push_back(I);
        if (I == all) break;
    }
    std::sort(out.begin(), out.end(), set_less);
    return out;
}

/// Inclusion-minimal members of a family.
inline std::vector<IndexSet> minimal_elements(std::vector<IndexSet> family) {
    std::sort(family.begin(), family.end(), set_less);
    std::vector<IndexSet> out;
    for (auto I : family) {
        bool minimal = true;
        for (auto J : out)
            if (is_subset(J, I)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(I);
    }
    return out;
}

/// Minimal anticones; they generate the semistable locus.
inline std::vector<IndexSet> minimal_anticones(const GITData& data) { return minimal_elements(anticones(data)); }

/// All sets over {0..m-1} containing one of the generators.
inline std::vector<IndexSet> enlargement_closure(const std::vector<IndexSet>& generators, std::size_t m) {
    std::vector<IndexSet> out;
    const IndexSet all = full_set(m);
    for (IndexSet J = 0;; ++J) {
        for (auto G : generators)
            if (is_subset(G, J)) {
                out.push_back(J);
                break;
            }
        if (J == all) break;
    }
    std::sort(out.begin(), out.end(), set_less);
    return out;
}

struct ValidationReport {
    bool whole_set_is_anticone = false;
    bool anticones_span = false;
    std::vector<std::string> failures;

    bool ok() const { return whole_set_is_anticone && anticones_span; }
};

/// Checks that {1..m} is an anticone and that every anticone spans Q^r.
inline ValidationReport validate(const GITData& data) {
    ValidationReport rep;
    rep.whole_set_is_anticone = is_anticone(data, full_set(data.m));
    if (!rep.whole_set_is_anticone) rep.failures.push_back("omega is not in the open cone of all characters");
    rep.anticones_span = true;
    for (auto I : anticones(data)) {
        RatMatrix sub = to_rational(data.D.select_columns(members(I)));
        if (rank(sub) != data.r) {
            rep.anticones_span = false;
            rep.failures.push_back("anticone " + format_set(I) + " does not span");
            break;
        }
    }
    return rep;
}

/// Minimal anticones of size r: the torus fixed points of the quotient.
inline std::vector<IndexSet> fixed_points(const GITData& data) {
    std::vector<IndexSet> out;
    for (auto I : minimal_anticones(data))
        if (cardinality(I) == data.r) out.push_back(I);
    return out;
}

/// Subsets of {0..m-1} of the given size, in lexicographic order.
inline std::vector<IndexSet> subsets_of_size(std::size_t m, std::size_t k) {
    std::vector<IndexSet> out;
    const IndexSet all = full_set(m);
    for (IndexSet I = 0;; ++I) {
        if (cardinality(I) == k) out.push_back(I);
        if (I == all) break;
    }
    std::sort(out.begin(), out.end(), set_less);
    return out;
}

/// True when omega lies in the closed cone of some r-1 characters (a wall).
inline bool on_wall(const GITData& data, const RatVector& omega) {
    if (data.r == 0) return false;
    for (auto I : subsets_of_size(data.m, data.r - 1))
        if (cone_contains(data.characters_of(I), omega, false)) return true;
    return false;
}
inline bool on_wall(const GITData& data) { return on_wall(data, data.omega); }

/// Open polyhedral chamber: normal . s > 0 for every normal.
struct Chamber {
    std::vector<IntVector> normals;
    RatVector sample;

    bool contains(const RatVector& s) const {
        for (const auto& n : normals)
            if (dot(to_rational(n), s) <= 0) return false;
        return true;
    }

    /// "{s1>0, s1+s2>0}"; a normal with negative leading entry is printed negated with "<0".
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t k = 0; k < normals.size(); ++k) {
            IntVector n = normals[k];
            std::string rel = ">0";
            for (const auto& x : n) {
                if (x == 0) continue;
                if (x < 0) {
                    for (auto& y : n) y = -y;
                    rel = "<0";
                }
                break;
            }
            std::string lhs;
            for (std::size_t i = 0; i < n.size(); ++i) {
                if (n[i] == 0) continue;
                const Integer mag = abs(n[i]);
                if (!lhs.empty()) lhs += n[i] > 0 ? "+" : "-";
                else if (n[i] < 0) lhs += "-";
                if (mag != 1) lhs += mag.get_str();
                lhs += "s" + std::to_string(i + 1);
            }
            if (k) out += ", ";
            out += lhs + rel;
        }
        return out + "}";
    }
};

/// Chamber containing omega as the intersection of the simplicial cones of the fixed points.
inline Chamber chamber_of(const GITData& data) {
    if (on_wall(data)) throw Error("on a wall: stability condition " + join_rationals(data.omega) + " lies on a wall");
    Chamber ch;
    ch.sample = data.omega;
    std::vector<IntVector> candidates;
    for (auto delta : fixed_points(data)) {
        const RatMatrix Dd = to_rational(data.D.select_columns(members(delta)));
        const auto inv = inverse(Dd);
        if (!inv) throw Error("fixed point " + format_set(delta) + " has a singular character matrix");
        for (std::size_t i = 0; i < data.r; ++i) {
            IntVector n = primitive_on_ray(inv->row(i));
            if (std::find(candidates.begin(), candidates.end(), n) == candidates.end()) candidates.push_back(n);
        }
    }
    // drop normals implied by the others
    std::vector<bool> keep(candidates.size(), true);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        std::vector<RatVector> others;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (j != k && keep[j]) others.push_back(to_rational(candidates[j]));
        if (!others.empty() && cone_contains(others, to_rational(candidates[k]), false)) keep[k] = false;
    }
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (keep[k]) ch.normals.push_back(candidates[k]);

    auto support = [](const IntVector& n) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] != 0) s.push_back(i);
        return s;
    };
    std::sort(ch.normals.begin(), ch.normals.end(), [&](const IntVector& a, const IntVector& b) {
        const auto sa = support(a), sb = support(b);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return ch;
}

/// Minimal transversals (hitting sets) of a family over {0..m-1}.
inline std::vector<IndexSet> minimal_transversals(const std::vector<IndexSet>& family, std::size_t m) {
    std::vector<IndexSet> hitting;
    const IndexSet all = full_set(m);
    for (IndexSet T = 0;; ++T) {
        bool hits = true;
        for (auto F : family)
            if ((F & T) == 0) {
                hits = false;
                break;
            }
        if (hits) hitting.push_back(T);
        if (T == all) break;
    }
    return minimal_elements(hitting);
}

/// The open set generated by minimal anticones, written as non-vanishing conditions,
/// e.g. "{(z1,z2)!=0, (z3,z4)!=0}".
inline std::string format_locus(const std::vector<IndexSet>& generators, std::size_t m) {
    if (generators.empty()) return "empty";
    for (auto G : generators)
        if (G == 0) return "all";
    std::string out = "{";
    bool first = true;
    for (auto T : minimal_transversals(generators, m)) {
        if (!first) out += ", ";
        first = false;
        const auto idx = members(T);
        if (idx.size() == 1) {
            out += "z" + std::to_string(idx[0] + 1) + "!=0";
            continue;
        }
        out += "(";
        for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? ",z" : "z") + std::to_string(idx[k] + 1);
        out += ")!=0";
    }
    return out + "}";
}

}  // namespace torickit

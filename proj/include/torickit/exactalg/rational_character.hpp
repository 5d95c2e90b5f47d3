#pragma once

#include "torickit/exactalg/laurent.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace torickit {

/// The factor (1 - c * e^{mu . lambda}).
struct DenominatorFactor {
    CycNumber c;
    FracMonomial mu;

    bool is_constant() const { return mu.is_zero(); }
    bool vanishes_identically() const { return mu.is_zero() && c.is_one(); }
    std::string to_string(const std::string& var = "l") const {
        std::string coeff = c.is_one() ? "" : c.to_string() + "*";
        return "(1 - " + coeff + mu.to_string(var) + ")";
    }
};

/// numerator / prod(denominator).
struct CharacterTerm {
    LaurentPoly numerator;
    std::vector<DenominatorFactor> denominator;
};

/// A rational function in e^{lambda}, kept as an unreduced sum of localized terms.
class RationalCharacter {
public:
    explicit RationalCharacter(std::size_t nvars = 0) : nvars_(nvars) {}

    static RationalCharacter from_poly(const LaurentPoly& p) {
        RationalCharacter r(p.nvars());
        r.add_term(p, {});
        return r;
    }
    /// 1 / prod(factors).
    static RationalCharacter inverse_of(std::size_t nvars, std::vector<DenominatorFactor> factors) {
        RationalCharacter r(nvars);
        r.add_term(LaurentPoly::constant(nvars, CycNumber(1)), std::move(factors));
        return r;
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<CharacterTerm>& terms() const { return terms_; }

    void add_term(LaurentPoly numerator, std::vector<DenominatorFactor> denominator) {
        if (numerator.nvars() != nvars_) throw InputError("numerator has wrong number of variables");
        for (const auto& f : denominator) {
            if (f.mu.nvars() != nvars_) throw InputError("denominator factor has wrong number of variables");
            if (f.vanishes_identically()) throw Error("denominator factor is identically zero");
        }
        if (numerator.is_zero()) return;
        terms_.push_back({std::move(numerator), std::move(denominator)});
    }

    RationalCharacter& operator+=(const RationalCharacter& o) {
        check(o);
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        return *this;
    }
    RationalCharacter& operator-=(const RationalCharacter& o) {
        check(o);
        for (const auto& t : o.terms_) terms_.push_back({-t.numerator, t.denominator});
        return *this;
    }
    RationalCharacter& operator*=(const CycNumber& s) {
        if (s.is_zero()) terms_.clear();
        for (auto& t : terms_) t.numerator *= s;
        return *this;
    }
    friend RationalCharacter operator+(RationalCharacter a, const RationalCharacter& b) { return a += b; }
    friend RationalCharacter operator-(RationalCharacter a, const RationalCharacter& b) { return a -= b; }
    friend RationalCharacter operator*(RationalCharacter a, const CycNumber& s) { return a *= s; }
    friend RationalCharacter operator*(const RationalCharacter& a, const RationalCharacter& b) {
        a.check(b);
        RationalCharacter r(a.nvars_);
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                auto den = ta.denominator;
                den.insert(den.end(), tb.denominator.begin(), tb.denominator.end());
                r.add_term(ta.numerator * tb.numerator, std::move(den));
            }
        return r;
    }

    /// Exponents q replaced by A^T q. Throws "denominator collapse" if a factor becomes 0.
    RationalCharacter specialized(const RatMatrix& A) const {
        if (A.rows() != nvars_) throw InputError("specialization matrix has wrong number of rows");
        const RatMatrix At = A.transpose();
        RationalCharacter r(A.cols());
        for (const auto& t : terms_) {
            std::vector<DenominatorFactor> den;
            for (const auto& f : t.denominator) {
                DenominatorFactor g{f.c, FracMonomial(At.apply(f.mu.q))};
                if (g.vanishes_identically())
                    throw Error("denominator collapse: factor " + f.to_string() + " specializes to 0");
                den.push_back(std::move(g));
            }
            r.add_term(t.numerator.specialized(A), std::move(den));
        }
        return r;
    }

    std::string to_string(const std::string& var = "l") const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += " + ";
            s += "[" + terms_[i].numerator.to_string(var) + "]";
            for (const auto& f : terms_[i].denominator) s += "/" + f.to_string(var);
        }
        return s;
    }

private:
    void check(const RationalCharacter& o) const {
        if (o.nvars_ != nvars_) throw InputError("rational characters in different numbers of variables");
    }

    std::size_t nvars_;
    std::vector<CharacterTerm> terms_;
};

/// Common denominator D (integral exponents, rational coefficients) and numerator N with x = N / D.
struct ClearedCharacter {
    LaurentPoly numerator;
    std::vector<DenominatorFactor> denominator;
};

namespace detail {

// (1 - c e^{q p}) with p primitive, first nonzero entry positive and q > 0, after moving
// a monomial into the numerator.
struct OrientedFactor {
    CycNumber c;
    IntVector direction;
    Rational q;
};

inline OrientedFactor orient(const DenominatorFactor& f, LaurentPoly& numerator) {
    IntVector p = primitive_on_ray(f.mu.q);
    for (const auto& x : p) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : p) y = -y;
        break;
    }
    Rational q;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) {
            q = f.mu.q[i] / Rational(p[i]);
            break;
        }
    if (q > 0) return {f.c, p, q};
    // 1 - c e^mu = -c e^mu (1 - c^{-1} e^{-mu})
    const CycNumber cinv = f.c.inverse();
    numerator = numerator.shifted(-f.mu) * (-cinv);
    return {cinv, p, -q};
}

inline FracMonomial along(const IntVector& p, const Rational& q) {
    FracMonomial m = FracMonomial::zero(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m.q[i] = q * Rational(p[i]);
    return m;
}

}  // namespace detail

/// Clears all denominators over a common product of factors 1 - e^{L p} (one block per
/// direction p). Factors whose coefficient is not a root of unity are kept as they are.
inline ClearedCharacter clear_denominators(const RationalCharacter& x) {
    const std::size_t n = x.nvars();

    struct Prepared {
        LaurentPoly numerator;
        std::vector<detail::OrientedFactor> factors;
    };
    std::vector<Prepared> prepared;

    // block key: (direction, exact coefficient text for non-roots, empty for roots of unity)
    using Key = std::pair<IntVector, std::string>;
    std::map<Key, Integer> block_length;     // L for root-of-unity blocks
    std::map<Key, CycNumber> block_coeff;    // c for standalone blocks
    std::map<Key, Rational> block_q;         // q for standalone blocks
    std::map<Key, std::size_t> multiplicity;

    for (const auto& t : x.terms()) {
        Prepared pr{t.numerator, {}};
        for (const auto& f : t.denominator) {
            if (f.is_constant()) {
                pr.numerator *= (CycNumber(1) - f.c).inverse();
                continue;
            }
            pr.factors.push_back(detail::orient(f, pr.numerator));
        }
        std::map<Key, std::size_t> count;
        for (const auto& f : pr.factors) {
            const unsigned order = f.c.root_of_unity_order();
            if (order == 0) {
                Key key{f.direction, f.c.to_string() + "|" + to_string(f.q)};
                block_coeff.emplace(key, f.c);
                block_q.emplace(key, f.q);
                ++count[key];
                continue;
            }
            Key key{f.direction, ""};
            const Integer a = f.q.get_num(), b = f.q.get_den();
            const Integer li = a * lcm_of(Integer(order), b) / b;
            auto [it, inserted] = block_length.try_emplace(key, li);
            if (!inserted) it->second = lcm_of(it->second, li);
            ++count[key];
        }
        for (const auto& [k, c] : count) multiplicity[k] = std::max(multiplicity[k], c);
        prepared.push_back(std::move(pr));
    }

    auto block_factor = [&](const Key& key) {
        if (key.second.empty()) {
            const Integer& L = block_length.at(key);
            return DenominatorFactor{CycNumber(1), detail::along(key.first, Rational(L))};
        }
        return DenominatorFactor{block_coeff.at(key), detail::along(key.first, block_q.at(key))};
    };

    ClearedCharacter out{LaurentPoly(n), {}};
    for (const auto& [key, mult] : multiplicity)
        for (std::size_t i = 0; i < mult; ++i) out.denominator.push_back(block_factor(key));

    for (const auto& pr : prepared) {
        LaurentPoly acc = pr.numerator;
        std::map<Key, std::size_t> used;
        for (const auto& f : pr.factors) {
            const unsigned order = f.c.root_of_unity_order();
            if (order == 0) {
                ++used[Key{f.direction, f.c.to_string() + "|" + to_string(f.q)}];
                continue;
            }
            Key key{f.direction, ""};
            ++used[key];
            // (1 - e^{Lp}) / (1 - c e^{qp}) = sum_{k < N} (c e^{qp})^k with N = L / q
            const Rational Nq = Rational(block_length.at(key)) / f.q;
            const unsigned long N = Nq.get_num().get_ui();
            LaurentPoly geometric(n);
            CycNumber ck(1);
            for (unsigned long k = 0; k < N; ++k) {
                geometric.add_term(detail::along(f.direction, f.q * Rational(static_cast<long>(k))), ck);
                ck *= f.c;
            }
            acc *= geometric;
        }
        for (const auto& [key, mult] : multiplicity) {
            const std::size_t missing = mult - (used.count(key) ? used.at(key) : 0);
            if (missing == 0) continue;
            const DenominatorFactor F = block_factor(key);
            LaurentPoly fpoly = LaurentPoly::constant(n, CycNumber(1));
            fpoly.add_term(F.mu, -F.c);
            acc *= fpoly.pow(static_cast<unsigned>(missing));
        }
        out.numerator += acc;
    }
    return out;
}

/// Exact equality of rational functions.
inline bool rat_equal(const RationalCharacter& a, const RationalCharacter& b) {
    return clear_denominators(a - b).numerator.is_zero();
}

/// Expansion in the direction where grading . q grows, truncated to grading degree <= bound.
/// Every denominator exponent must have nonzero grading degree.
inline LaurentPoly laurent_expand(const RationalCharacter& x, const RatVector& grading, const Rational& bound) {
    const std::size_t n = x.nvars();
    if (grading.size() != n) throw InputError("grading has wrong number of variables");
    LaurentPoly total(n);
    for (const auto& t : x.terms()) {
        LaurentPoly num = t.numerator;
        std::vector<DenominatorFactor> series;
        for (const auto& f : t.denominator) {
            if (f.is_constant()) {
                num *= (CycNumber(1) - f.c).inverse();
                continue;
            }
            const Rational d = f.mu.degree(grading);
            if (d == 0) throw InputError("grading is degenerate on a denominator factor");
            if (d > 0) {
                series.push_back(f);
            } else {
                const CycNumber cinv = f.c.inverse();
                num = num.shifted(-f.mu) * (-cinv);
                series.push_back({cinv, -f.mu});
            }
        }
        if (num.is_zero()) continue;
        Rational dmin = num.terms().begin()->first.degree(grading);
        for (const auto& [m, c] : num.terms()) dmin = std::min(dmin, m.degree(grading));
        const Rational budget = bound - dmin;
        LaurentPoly acc = num;
        for (const auto& f : series) {
            const Rational step = f.mu.degree(grading);
            LaurentPoly geometric(n);
            CycNumber ck(1);
            FracMonomial mk = FracMonomial::zero(n);
            for (Rational used = 0; used <= budget; used += step) {
                geometric.add_term(mk, ck);
                ck *= f.c;
                mk = mk + f.mu;
            }
            // series terms have positive degree, so anything above the bound stays above it
            acc = (acc * geometric).truncated(grading, bound);
        }
        total += acc;
    }
    return total;
}

}  // namespace torickit

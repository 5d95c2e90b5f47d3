#pragma once

#include "torickit/exactalg/graded_series.hpp"
#include "torickit/exactalg/rational_character.hpp"
#include "torickit/gitdata.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace torickit {

/// Line class: K-character u (length r) and T-character s (length m).
struct LineClass {
    IntVector u;
    IntVector s;

    bool operator<(const LineClass& o) const { return std::tie(u, s) < std::tie(o.u, o.s); }
    bool operator==(const LineClass& o) const { return u == o.u && s == o.s; }

    LineClass operator+(const LineClass& o) const {
        LineClass r = *this;
        for (std::size_t i = 0; i < u.size(); ++i) r.u[i] += o.u[i];
        for (std::size_t i = 0; i < s.size(); ++i) r.s[i] += o.s[i];
        return r;
    }
    LineClass dual() const {
        LineClass r = *this;
        for (auto& x : r.u) x = -x;
        for (auto& x : r.s) x = -x;
        return r;
    }
};

/// Integer combination of line classes in equivariant K-theory.
class EquivClass {
public:
    EquivClass(std::size_t r = 0, std::size_t m = 0) : r_(r), m_(m) {}

    static EquivClass line(const IntVector& u, const IntVector& s, const Integer& coeff = 1) {
        EquivClass e(u.size(), s.size());
        e.add(LineClass{u, s}, coeff);
        return e;
    }
    static EquivClass structure_sheaf(std::size_t r, std::size_t m) {
        return line(IntVector(r, Integer(0)), IntVector(m, Integer(0)));
    }
    /// O(a) on rank-one data.
    static EquivClass twist(std::size_t m, long a) { return line(IntVector{Integer(a)}, IntVector(m, Integer(0))); }

    std::size_t r() const { return r_; }
    std::size_t m() const { return m_; }
    const std::map<LineClass, Integer>& terms() const { return terms_; }
    bool is_empty() const { return terms_.empty(); }

    void add(const LineClass& l, const Integer& coeff) {
        if (l.u.size() != r_ || l.s.size() != m_) throw InputError("line class has the wrong shape");
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(l, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    EquivClass& operator+=(const EquivClass& o) {
        check(o);
        for (const auto& [l, c] : o.terms_) add(l, c);
        return *this;
    }
    EquivClass& operator-=(const EquivClass& o) {
        check(o);
        for (const auto& [l, c] : o.terms_) add(l, -c);
        return *this;
    }
    friend EquivClass operator+(EquivClass a, const EquivClass& b) { return a += b; }
    friend EquivClass operator-(EquivClass a, const EquivClass& b) { return a -= b; }
    friend EquivClass operator*(const Integer& k, EquivClass a) {
        if (k == 0) a.terms_.clear();
        for (auto& [l, c] : a.terms_) c *= k;
        return a;
    }
    /// Tensor product.
    friend EquivClass operator*(const EquivClass& a, const EquivClass& b) {
        a.check(b);
        EquivClass out(a.r_, a.m_);
        for (const auto& [la, ca] : a.terms_)
            for (const auto& [lb, cb] : b.terms_) out.add(la + lb, ca * cb);
        return out;
    }

    bool operator==(const EquivClass& o) const { return r_ == o.r_ && m_ == o.m_ && terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [l, c] : terms_) {
            if (!out.empty()) out += " + ";
            if (c != 1) out += c.get_str() + "*";
            std::string u, s;
            for (std::size_t i = 0; i < l.u.size(); ++i) u += (i ? "," : "") + l.u[i].get_str();
            for (std::size_t i = 0; i < l.s.size(); ++i) s += (i ? "," : "") + l.s[i].get_str();
            out += "L(u=(" + u + "),s=(" + s + "))";
        }
        return out;
    }

private:
    void check(const EquivClass& o) const {
        if (o.r_ != r_ || o.m_ != m_) throw InputError("classes live on different data");
    }

    std::size_t r_, m_;
    std::map<LineClass, Integer> terms_;
};

/// Everything about a torus-fixed point that the fixed-point formula uses.
struct FixedPointData {
    IndexSet delta = 0;
    std::vector<std::size_t> basis;    // members of delta
    std::vector<std::size_t> normal;   // coordinates not in delta
    RatMatrix basis_inverse;           // D_delta^{-1}
    Integer order = 1;                 // |G_delta|
    std::vector<RatVector> group;      // v in [0,1)^r, identity first
    std::vector<RatVector> coefficients;  // per normal j: c with D_j = sum c_i D_{basis_i}
    std::vector<RatVector> weights;       // per normal j: e_j - sum c_i e_{basis_i}
    std::vector<std::vector<Rational>> angles;  // angles[g][k] = frac(-D_{normal_k} . v_g)
};

inline FixedPointData fixed_point_data(const GITData& data, IndexSet delta) {
    if (cardinality(delta) != data.r || !is_anticone(data, delta))
        throw InputError("not a fixed point: " + format_set(delta) + " is not a minimal anticone of size r");
    FixedPointData fp;
    fp.delta = delta;
    fp.basis = members(delta);
    for (std::size_t j = 0; j < data.m; ++j)
        if (!contains(delta, j)) fp.normal.push_back(j);

    const IntMatrix Dd = data.D.select_columns(fp.basis);
    const auto inv = inverse(to_rational(Dd));
    if (!inv) throw InputError("not a fixed point: characters of " + format_set(delta) + " are dependent");
    fp.basis_inverse = *inv;

    for (auto j : fp.normal) {
        RatVector c = fp.basis_inverse.apply(data.rational_character(j));
        RatVector w(data.m, Rational(0));
        w[j] = 1;
        for (std::size_t i = 0; i < fp.basis.size(); ++i) w[fp.basis[i]] -= c[i];
        fp.coefficients.push_back(std::move(c));
        fp.weights.push_back(std::move(w));
    }

    // G = { v : D_delta^T v integral } mod Z^r; with U M V = S, v = V (k_i / d_i)
    const auto snf = smith_normal_form(Dd.transpose());
    const std::size_t r = data.r;
    std::vector<Integer> d(r);
    for (std::size_t i = 0; i < r; ++i) d[i] = abs(snf.S(i, i));
    fp.order = 1;
    for (const auto& x : d) fp.order *= x;
    std::vector<Integer> k(r, Integer(0));
    const RatMatrix V = to_rational(snf.V);
    for (;;) {
        RatVector w(r);
        for (std::size_t i = 0; i < r; ++i) w[i] = make_rational(k[i], d[i]);
        RatVector v = V.apply(w);
        for (auto& x : v) x = frac_part(x);
        fp.group.push_back(std::move(v));
        std::size_t pos = 0;
        while (pos < r && ++k[pos] == d[pos]) k[pos++] = 0;
        if (pos == r) break;
    }

    for (const auto& v : fp.group) {
        std::vector<Rational> row;
        for (auto j : fp.normal) row.push_back(frac_part(-dot(data.rational_character(j), v)));
        fp.angles.push_back(std::move(row));
    }
    return fp;
}

inline std::vector<FixedPointData> all_fixed_point_data(const GITData& data) {
    std::vector<FixedPointData> out;
    for (auto delta : fixed_points(data)) out.push_back(fixed_point_data(data, delta));
    return out;
}

/// T-weight of the line class (u, s) at the fixed point: s + D_delta^{-1} u on the basis coordinates.
inline FracMonomial line_weight(const FixedPointData& fp, const LineClass& l) {
    FracMonomial w(to_rational(l.s));
    const RatVector b = fp.basis_inverse.apply(to_rational(l.u));
    for (std::size_t i = 0; i < fp.basis.size(); ++i) w.q[fp.basis[i]] += b[i];
    return w;
}

/// Trace of g e^lambda on the fiber of E at the fixed point.
inline LaurentPoly restrict_class(const EquivClass& E, const FixedPointData& fp, std::size_t g) {
    LaurentPoly out(E.m());
    const RatVector& v = fp.group.at(g);
    for (const auto& [l, c] : E.terms()) {
        const CycNumber phase = CycNumber::root_of_unity(dot(to_rational(l.u), v));
        out.add_term(line_weight(fp, l), phase * CycNumber(Rational(c)));
    }
    return out;
}

/// Restriction to the tangent weights of every fixed point (optionally specialized) being
/// strictly convex, which makes each weight space of the expansion finite dimensional.
struct ConvergenceCertificate {
    bool ok = true;
    std::optional<IndexSet> failing_fixed_point;
};

inline RatVector specialize_exponent(const RatVector& q, const std::optional<RatMatrix>& A) {
    if (!A) return q;
    return A->transpose().apply(q);
}

inline ConvergenceCertificate convergence_certificate(const GITData& data, const std::optional<RatMatrix>& A = {}) {
    ConvergenceCertificate cert;
    for (const auto& fp : all_fixed_point_data(data)) {
        std::vector<RatVector> w;
        for (const auto& x : fp.weights) w.push_back(specialize_exponent(x, A));
        if (!weights_convex(w)) {
            cert.ok = false;
            cert.failing_fixed_point = fp.delta;
            return cert;
        }
    }
    return cert;
}

struct EulerOptions {
    std::optional<RatMatrix> specialization;  // lambda = A mu, A is m x k
    bool require_certificate = true;
};

/// chi(E) = sum over fixed points and g of restrict / prod_j (1 - e^{2 pi i theta_j} e^{w_j}), averaged over G.
inline RationalCharacter euler_characteristic(const GITData& data, const EquivClass& E, const EulerOptions& opt = {}) {
    if (E.r() != data.r || E.m() != data.m) throw InputError("class does not match the GIT data");
    const auto rep = validate(data);
    if (!rep.ok()) throw InputError("invalid GIT data: " + rep.failures.front());
    if (opt.specialization && opt.specialization->rows() != data.m)
        throw InputError("specialization matrix must have m rows");
    if (opt.require_certificate) {
        const auto cert = convergence_certificate(data, opt.specialization);
        if (!cert.ok)
            throw Error("convergence certificate failed: tangent weights at fixed point " +
                        format_set(*cert.failing_fixed_point) + " are not strictly convex");
    }
    RationalCharacter chi(data.m);
    for (const auto& fp : all_fixed_point_data(data)) {
        const CycNumber average(make_rational(Integer(1), fp.order));
        for (std::size_t g = 0; g < fp.group.size(); ++g) {
            std::vector<DenominatorFactor> den;
            for (std::size_t k = 0; k < fp.normal.size(); ++k)
                den.push_back({CycNumber::root_of_unity(fp.angles[g][k]), FracMonomial(fp.weights[k])});
            chi.add_term(restrict_class(E, fp, g) * average, std::move(den));
        }
    }
    if (opt.specialization) return chi.specialized(*opt.specialization);
    return chi;
}

/// After clearing denominators every coefficient is rational and every exponent integral.
inline bool cyclotomic_parts_cancel(const RationalCharacter& chi) {
    const auto cleared = clear_denominators(chi);
    return cleared.numerator.has_rational_coefficients() && cleared.numerator.has_integral_exponents();
}

/// sum of e^{a . lambda} over a >= 0 with sum a_i D_i = u and sum a_i <= bound.
inline LaurentPoly sections_character(const GITData& data, const IntVector& u, unsigned bound) {
    if (u.size() != data.r) throw InputError("K-character has the wrong length");
    LaurentPoly out(data.m);
    std::vector<unsigned> a(data.m, 0);
    // enumerate compositions with total <= bound
    auto visit = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == data.m) {
            for (std::size_t row = 0; row < data.r; ++row) {
                Integer acc = 0;
                for (std::size_t j = 0; j < data.m; ++j) acc += data.D(row, j) * a[j];
                if (acc != u[row]) return;
            }
            RatVector q(data.m);
            for (std::size_t j = 0; j < data.m; ++j) q[j] = a[j];
            out.add_term(FracMonomial(q), CycNumber(1));
            return;
        }
        for (unsigned x = 0; x <= left; ++x) {
            a[i] = x;
            self(self, i + 1, left - x);
        }
        a[i] = 0;
    };
    visit(visit, 0, bound);
    return out;
}

/// Fixed-point side of the Riemann-Roch formula: orbifold Chern character times
/// orbifold Todd class over the equivariant Euler class, expanded to the given order.
inline GradedSeries hrr_rhs(const GITData& data, const EquivClass& E, int order,
                            const std::optional<RatMatrix>& A = {}) {
    if (E.r() != data.r || E.m() != data.m) throw InputError("class does not match the GIT data");
    const auto rep = validate(data);
    if (!rep.ok()) throw InputError("invalid GIT data: " + rep.failures.front());
    const std::size_t nv = A ? A->cols() : data.m;
    GradedSeries out(nv, order);
    if (E.is_empty()) return out;

    const std::size_t max_len = static_cast<std::size_t>(std::max(0, order + static_cast<int>(data.m))) + 1;
    const auto todd = bernoulli_plus(static_cast<unsigned>(max_len));
    const auto stirling = stirling2_table(static_cast<unsigned>(max_len));

    for (const auto& fp : all_fixed_point_data(data)) {
        for (std::size_t g = 0; g < fp.group.size(); ++g) {
            std::size_t untwisted = 0;
            for (const auto& th : fp.angles[g])
                if (th == 0) ++untwisted;
            const int shift = static_cast<int>(untwisted);
            if (order + shift < 0) continue;
            const std::size_t length = static_cast<std::size_t>(order + shift) + 1;

            // orbifold Chern character of E at (fixed point, g)
            TSeries series;
            series.coeffs.assign(length, Poly(nv));
            for (const auto& [l, c] : E.terms()) {
                const CycNumber phase =
                    CycNumber::root_of_unity(dot(to_rational(l.u), fp.group[g])) * CycNumber(Rational(c));
                const RatVector q = specialize_exponent(line_weight(fp, l).q, A);
                std::vector<CycNumber> ex(length);
                for (std::size_t k = 0; k < length; ++k) ex[k] = phase * CycNumber(Rational(1 / factorial(k)));
                series += TSeries::in_form(ex, q);
            }

            CycNumber scale(make_rational(Integer(1), fp.order));
            std::vector<IntVector> forms;
            for (std::size_t k = 0; k < fp.normal.size(); ++k) {
                const RatVector w = specialize_exponent(fp.weights[k], A);
                const Rational& theta = fp.angles[g][k];
                if (theta == 0) {
                    // tangent root tau = -w: Todd(tau) / tau
                    RatVector tau = w;
                    for (auto& x : tau) x = -x;
                    if (is_zero(tau)) throw Error("denominator collapse: tangent weight specializes to 0");
                    std::vector<CycNumber> td(length);
                    for (std::size_t n = 0; n < length; ++n) td[n] = CycNumber(Rational(todd[n] / factorial(n)));
                    series = series * TSeries::in_form(td, tau);
                    const auto [s, form] = canonical_linear_form(tau);
                    scale *= CycNumber(Rational(1 / s));
                    forms.push_back(form);
                } else {
                    // 1/(1 - eps e^w) = sum_k eps^k (e^w - 1)^k / (1 - eps)^{k+1}
                    const CycNumber eps = CycNumber::root_of_unity(theta);
                    const CycNumber base = (CycNumber(1) - eps).inverse();
                    std::vector<CycNumber> coeff(length);
                    for (std::size_t n = 0; n < length; ++n) {
                        CycNumber acc(0);
                        CycNumber term = base;  // eps^k / (1 - eps)^{k+1}
                        for (std::size_t kk = 0; kk <= n; ++kk) {
                            if (stirling[n][kk] != 0)
                                acc += term * CycNumber(Rational(factorial(kk) * Rational(stirling[n][kk]) / factorial(n)));
                            term *= eps * base;
                        }
                        coeff[n] = acc;
                    }
                    series = series * TSeries::in_form(coeff, w);
                }
            }
            for (std::size_t k = 0; k < length; ++k)
                if (!series.coeffs[k].is_zero())
                    out.add_piece(static_cast<int>(k) - shift, HomFraction(series.coeffs[k] * scale, forms));
        }
    }
    return out;
}

struct HrrReport {
    GradedSeries lhs;
    GradedSeries rhs;
    bool equal = false;
    std::optional<int> first_mismatch_degree;
};

/// Compares the expansion of chi with the fixed-point Riemann-Roch side, degree by degree.
inline HrrReport hrr_check(const GITData& data, const EquivClass& E, int order, const std::optional<RatMatrix>& A = {}) {
    EulerOptions opt;
    opt.specialization = A;
    const auto chi = euler_characteristic(data, E, opt);
    HrrReport rep{expand_rational(chi, order), hrr_rhs(data, E, order, A), false, std::nullopt};
    rep.first_mismatch_degree = first_mismatch(rep.lhs, rep.rhs);
    rep.equal = !rep.first_mismatch_degree.has_value();
    return rep;
}

}  // namespace torickit

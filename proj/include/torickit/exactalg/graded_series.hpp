#pragma once

#include "torickit/exactalg/polynomial.hpp"
#include "torickit/exactalg/rational_character.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// Homogeneous rational function num / prod(forms), each form a canonical linear form.
struct HomFraction {
    Poly num;
    std::vector<IntVector> den;  // sorted multiset

    explicit HomFraction(std::size_t nvars = 0) : num(nvars) {}
    HomFraction(Poly n, std::vector<IntVector> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    std::size_t nvars() const { return num.nvars(); }
    bool is_zero() const { return num.is_zero(); }

    /// Cancels every denominator form that divides the numerator.
    void normalize() {
        std::sort(den.begin(), den.end());
        if (num.is_zero()) {
            den.clear();
            return;
        }
        std::vector<IntVector> kept;
        for (const auto& form : den) {
            auto q = num.divided_by_linear(to_rational(form));
            if (q) num = std::move(*q);
            else kept.push_back(form);
        }
        den = std::move(kept);
    }

    friend HomFraction operator+(const HomFraction& a, const HomFraction& b) {
        // common denominator: multiset union
        std::vector<IntVector> common, extra_a, extra_b;
        std::size_t i = 0, j = 0;
        while (i < a.den.size() || j < b.den.size()) {
            if (j == b.den.size() || (i < a.den.size() && a.den[i] < b.den[j])) {
                common.push_back(a.den[i]);
                extra_b.push_back(a.den[i++]);
            } else if (i == a.den.size() || b.den[j] < a.den[i]) {
                common.push_back(b.den[j]);
                extra_a.push_back(b.den[j++]);
            } else {
                common.push_back(a.den[i]);
                ++i;
                ++j;
            }
        }
        Poly na = a.num, nb = b.num;
        for (const auto& f : extra_a) na *= Poly::linear(to_rational(f));
        for (const auto& f : extra_b) nb *= Poly::linear(to_rational(f));
        return HomFraction(na + nb, std::move(common));
    }
    HomFraction operator-() const {
        HomFraction r = *this;
        r.num *= CycNumber(-1);
        return r;
    }
    friend HomFraction operator-(const HomFraction& a, const HomFraction& b) { return a + (-b); }
    friend HomFraction operator*(const HomFraction& a, const HomFraction& b) {
        std::vector<IntVector> den = a.den;
        den.insert(den.end(), b.den.begin(), b.den.end());
        return HomFraction(a.num * b.num, std::move(den));
    }
    bool operator==(const HomFraction& o) const { return (*this - o).is_zero(); }

    std::string to_string(const std::string& var = "l") const {
        if (den.empty()) return num.to_string(var);
        std::string d;
        for (std::size_t i = 0; i < den.size(); ++i) {
            if (i) d += "*";
            d += "(" + Poly::linear(to_rational(den[i])).to_string(var) + ")";
        }
        return "(" + num.to_string(var) + ")/(" + d + ")";
    }
};

/// Truncated element of the degree-completed ring: degree n maps to a homogeneous piece.
class GradedSeries {
public:
    GradedSeries(std::size_t nvars, int order) : nvars_(nvars), order_(order) {}

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::map<int, HomFraction>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }
    std::optional<int> lowest_degree() const {
        if (pieces_.empty()) return std::nullopt;
        return pieces_.begin()->first;
    }

    HomFraction piece(int n) const {
        auto it = pieces_.find(n);
        return it == pieces_.end() ? HomFraction(nvars_) : it->second;
    }

    void add_piece(int n, const HomFraction& f) {
        if (f.nvars() != nvars_) throw InputError("graded piece has wrong number of variables");
        if (n > order_ || f.is_zero()) return;
        auto it = pieces_.find(n);
        if (it == pieces_.end()) {
            pieces_.emplace(n, f);
            return;
        }
        it->second = it->second + f;
        if (it->second.is_zero()) pieces_.erase(it);
    }

    GradedSeries truncated(int order) const {
        GradedSeries r(nvars_, std::min(order, order_));
        for (const auto& [n, f] : pieces_)
            if (n <= r.order_) r.pieces_.emplace(n, f);
        return r;
    }

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
        a.check(b);
        GradedSeries r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [n, f] : b.pieces_) r.add_piece(n, f);
        return r;
    }
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
        a.check(b);
        GradedSeries r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [n, f] : b.pieces_) r.add_piece(n, -f);
        return r;
    }
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return GradedSeries(a.nvars_, std::min(a.order_, b.order_));
        const int order = std::min(a.order_ + *b.lowest_degree(), b.order_ + *a.lowest_degree());
        GradedSeries r(a.nvars_, order);
        for (const auto& [i, fa] : a.pieces_)
            for (const auto& [j, fb] : b.pieces_)
                if (i + j <= order) r.add_piece(i + j, fa * fb);
        return r;
    }

    /// Lowest degree (within both orders) where the pieces differ.
    friend std::optional<int> first_mismatch(const GradedSeries& a, const GradedSeries& b) {
        const GradedSeries diff = a - b;
        return diff.lowest_degree();
    }
    friend bool series_equal(const GradedSeries& a, const GradedSeries& b) { return !first_mismatch(a, b); }

    /// Coefficient of lambda^n in a one-variable series.
    CycNumber univariate_coefficient(int n) const {
        if (nvars_ != 1) throw InputError("univariate_coefficient needs a one-variable series");
        const HomFraction f = piece(n);
        if (f.is_zero()) return CycNumber(0);
        // num = a * l^(n + #den), every form is l itself
        const auto& [e, c] = *f.num.terms().begin();
        return c;
    }

    std::string to_string(const std::string& var = "l") const {
        std::string s;
        for (const auto& [n, f] : pieces_) {
            if (!s.empty()) s += " + ";
            s += "[" + std::to_string(n) + "] " + f.to_string(var);
        }
        return (s.empty() ? "0" : s) + " + O(" + std::to_string(order_ + 1) + ")";
    }

private:
    void check(const GradedSeries& o) const {
        if (o.nvars_ != nvars_) throw InputError("graded series in different numbers of variables");
    }

    std::size_t nvars_;
    int order_;
    std::map<int, HomFraction> pieces_;
};

/// sum_k coeffs[k] t^k with each coeffs[k] homogeneous of degree k.
struct TSeries {
    std::vector<Poly> coeffs;

    static TSeries one(std::size_t nvars, std::size_t length) {
        TSeries s;
        s.coeffs.assign(length, Poly(nvars));
        if (length) s.coeffs[0] = Poly::constant(nvars, CycNumber(1));
        return s;
    }
    /// sum_k scalars[k] (x . lambda)^k.
    static TSeries in_form(const std::vector<CycNumber>& scalars, const RatVector& x) {
        TSeries s;
        const Poly ell = Poly::linear(x);
        Poly power = Poly::constant(x.size(), CycNumber(1));
        for (std::size_t k = 0; k < scalars.size(); ++k) {
            s.coeffs.push_back(power * scalars[k]);
            power *= ell;
        }
        return s;
    }

    std::size_t length() const { return coeffs.size(); }

    TSeries& operator+=(const TSeries& o) {
        for (std::size_t k = 0; k < coeffs.size() && k < o.coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
        return *this;
    }
    friend TSeries operator*(const TSeries& a, const TSeries& b) {
        TSeries r;
        const std::size_t len = std::min(a.length(), b.length());
        if (len == 0) return r;
        r.coeffs.assign(len, Poly(a.coeffs[0].nvars()));
        for (std::size_t i = 0; i < len; ++i) {
            if (a.coeffs[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < len; ++j) {
                if (b.coeffs[j].is_zero()) continue;
                r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
            }
        }
        return r;
    }
};

inline Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

/// Coefficients b with (sum a_k x^k)(sum b_k x^k) = 1 up to x^(length-1); a[0] != 0.
inline std::vector<CycNumber> invert_scalar_series(const std::vector<CycNumber>& a, std::size_t length) {
    if (a.empty() || a[0].is_zero()) throw Error("series with zero constant term is not invertible");
    const CycNumber inv0 = a[0].inverse();
    std::vector<CycNumber> b(length);
    for (std::size_t k = 0; k < length; ++k) {
        CycNumber acc = k == 0 ? CycNumber(1) : CycNumber(0);
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc -= a[j] * b[k - j];
        b[k] = acc * inv0;
    }
    return b;
}

/// Bernoulli numbers with B_1 = +1/2, so that x / (1 - e^{-x}) = sum B_n x^n / n!.
inline std::vector<Rational> bernoulli_plus(unsigned count) {
    std::vector<Rational> B(count, Rational(0));
    // sum_{k<=n} binom(n+1, k) B_k = 0 for n >= 1 gives the B_1 = -1/2 convention
    for (unsigned n = 0; n < count; ++n) {
        if (n == 0) {
            B[0] = 1;
            continue;
        }
        Rational acc = 0;
        Integer binom = 1;  // binom(n+1, k)
        for (unsigned k = 0; k < n; ++k) {
            acc += Rational(binom) * B[k];
            binom = binom * (n + 1 - k) / (k + 1);
        }
        B[n] = -acc / Rational(binom);
    }
    if (count > 1) B[1] = -B[1];
    return B;
}

/// S(n, k), Stirling numbers of the second kind, for n, k < count.
inline std::vector<std::vector<Integer>> stirling2_table(unsigned count) {
    std::vector<std::vector<Integer>> S(count, std::vector<Integer>(count, Integer(0)));
    if (count) S[0][0] = 1;
    for (unsigned n = 1; n < count; ++n)
        for (unsigned k = 1; k <= n; ++k) S[n][k] = Integer(k) * S[n - 1][k] + S[n - 1][k - 1];
    return S;
}

/// Expands x(t lambda) around t = 0 and collects degree n into the degree-n piece,
/// for every n up to order.
inline GradedSeries expand_rational(const RationalCharacter& x, int order) {
    const std::size_t nv = x.nvars();
    GradedSeries out(nv, order);
    for (const auto& term : x.terms()) {
        CycNumber scale(1);
        std::vector<IntVector> forms;
        std::vector<std::pair<CycNumber, RatVector>> regular;  // factors with c != 1
        std::vector<RatVector> poles;                           // factors with c == 1
        for (const auto& f : term.denominator) {
            if (f.vanishes_identically()) throw Error("denominator factor is identically zero");
            if (f.is_constant()) {
                scale /= CycNumber(1) - f.c;
            } else if (f.c.is_one()) {
                poles.push_back(f.mu.q);
            } else {
                regular.emplace_back(f.c, f.mu.q);
            }
        }
        const int shift = static_cast<int>(poles.size());
        if (order + shift < 0) continue;
        const std::size_t length = static_cast<std::size_t>(order + shift) + 1;

        // numerator: sum_j a_j e^{t nu_j}
        TSeries series;
        series.coeffs.assign(length, Poly(nv));
        for (const auto& [m, a] : term.numerator.terms()) {
            std::vector<CycNumber> ex(length);
            for (std::size_t k = 0; k < length; ++k) ex[k] = a * CycNumber(Rational(1 / factorial(k)));
            series += TSeries::in_form(ex, m.q);
        }

        // 1 - e^{y} = -y sum y^k/(k+1)!
        for (const auto& q : poles) {
            std::vector<CycNumber> a(length);
            for (std::size_t k = 0; k < length; ++k) a[k] = CycNumber(Rational(1 / factorial(k + 1)));
            series = series * TSeries::in_form(invert_scalar_series(a, length), q);
            const auto [s, form] = canonical_linear_form(q);
            scale *= CycNumber(Rational(-1 / s));
            forms.push_back(form);
        }
        // 1 - c e^{y} = (1 - c) - c sum_{k>=1} y^k/k!
        for (const auto& [c, q] : regular) {
            std::vector<CycNumber> a(length);
            a[0] = CycNumber(1) - c;
            for (std::size_t k = 1; k < length; ++k) a[k] = -c * CycNumber(Rational(1 / factorial(k)));
            series = series * TSeries::in_form(invert_scalar_series(a, length), q);
        }

        for (std::size_t k = 0; k < length; ++k)
            if (!series.coeffs[k].is_zero())
                out.add_piece(static_cast<int>(k) - shift, HomFraction(series.coeffs[k] * scale, forms));
    }
    return out;
}

}  // namespace torickit

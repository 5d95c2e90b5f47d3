#pragma once

#include "torickit/exactalg/cyclotomic.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// Polynomial in lambda_1..lambda_n with cyclotomic coefficients and nonnegative exponents.
class Poly {
public:
    using Exponent = std::vector<int>;
    using TermMap = std::map<Exponent, CycNumber>;

    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const CycNumber& c) {
        Poly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static Poly variable(std::size_t nvars, std::size_t i) {
        Poly p(nvars);
        Exponent e(nvars, 0);
        e.at(i) = 1;
        p.add_term(e, CycNumber(1));
        return p;
    }
    /// sum_i q_i lambda_i.
    static Poly linear(const RatVector& q) {
        Poly p(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            Exponent e(q.size(), 0);
            e[i] = 1;
            p.add_term(e, CycNumber(q[i]));
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const CycNumber& c) {
        if (e.size() != nvars_) throw InputError("polynomial term has wrong number of variables");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const CycNumber& s) {
        if (s.is_zero()) terms_.clear();
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const CycNumber& s) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned k) const {
        Poly acc = constant(nvars_, CycNumber(1));
        for (unsigned i = 0; i < k; ++i) acc *= *this;
        return acc;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && (*this - o).is_zero(); }

    /// Coefficient of a monomial (zero if absent).
    CycNumber coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? CycNumber(0) : it->second;
    }

    /// Exact quotient by a nonzero linear form, or nullopt when it does not divide.
    std::optional<Poly> divided_by_linear(const RatVector& form) const {
        if (form.size() != nvars_) throw InputError("linear form has wrong number of variables");
        std::size_t pivot = nvars_;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (form[i] != 0) {
                pivot = i;
                break;
            }
        if (pivot == nvars_) throw Error("division by the zero linear form");
        const Poly ell = linear(form);
        const CycNumber lead_inv = CycNumber(Rational(1 / form[pivot]));
        Poly rest = *this, quotient(nvars_);
        while (!rest.is_zero()) {
            // pick a term of maximal pivot degree
            auto best = rest.terms_.begin();
            for (auto it = rest.terms_.begin(); it != rest.terms_.end(); ++it)
                if (it->first[pivot] > best->first[pivot]) best = it;
            if (best->first[pivot] == 0) return std::nullopt;
            Exponent e = best->first;
            --e[pivot];
            Poly step(nvars_);
            step.add_term(e, best->second * lead_inv);
            quotient += step;
            rest -= step * ell;
        }
        return quotient;
    }

    /// Human text with variables var1..varN, terms in descending exponent order.
    std::string to_string(const std::string& var = "l") const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += var + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            std::string coeff;
            bool negative = false;
            if (c.is_rational()) {
                Rational q = c.to_rational();
                negative = q < 0;
                if (negative) q = -q;
                if (q != 1 || mono.empty()) coeff = torickit::to_string(q);
            } else {
                coeff = c.to_string();
            }
            if (first) s += negative ? "-" : "";
            else s += negative ? " - " : " + ";
            first = false;
            s += coeff;
            if (!coeff.empty() && !mono.empty()) s += "*";
            s += mono;
        }
        return s;
    }

private:
    void check(const Poly& o) const {
        if (o.nvars_ != nvars_) throw InputError("polynomials in different numbers of variables");
    }

    std::size_t nvars_;
    TermMap terms_;
};

/// Writes a nonzero rational vector as scale * form, where form is a primitive
/// integer vector whose first nonzero entry is positive.
inline std::pair<Rational, IntVector> canonical_linear_form(const RatVector& q) {
    IntVector form = primitive_on_ray(q);
    for (const auto& x : form) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : form) y = -y;
        break;
    }
    for (std::size_t i = 0; i < q.size(); ++i)
        if (form[i] != 0) return {q[i] / Rational(form[i]), form};
    throw Error("unreachable: primitive form is zero");
}

}  // namespace torickit

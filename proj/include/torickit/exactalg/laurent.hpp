#pragma once

#include "torickit/exactalg/cyclotomic.hpp"
#include "torickit/exactalg/matrix.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// e^{q . lambda} for an exponent vector q with rational entries.
struct FracMonomial {
    RatVector q;

    FracMonomial() = default;
    explicit FracMonomial(RatVector exps) : q(std::move(exps)) {}
    static FracMonomial zero(std::size_t n) { return FracMonomial(RatVector(n, Rational(0))); }
    static FracMonomial unit(std::size_t n, std::size_t i) {
        FracMonomial m = zero(n);
        m.q.at(i) = 1;
        return m;
    }

    std::size_t nvars() const { return q.size(); }
    bool is_zero() const { return torickit::is_zero(q); }
    bool is_integral() const {
        for (const auto& x : q)
            if (x.get_den() != 1) return false;
        return true;
    }

    FracMonomial operator+(const FracMonomial& o) const {
        check(o);
        FracMonomial r = *this;
        for (std::size_t i = 0; i < q.size(); ++i) r.q[i] += o.q[i];
        return r;
    }
    FracMonomial operator-(const FracMonomial& o) const {
        check(o);
        FracMonomial r = *this;
        for (std::size_t i = 0; i < q.size(); ++i) r.q[i] -= o.q[i];
        return r;
    }
    FracMonomial operator-() const {
        FracMonomial r = *this;
        for (auto& x : r.q) x = -x;
        return r;
    }
    FracMonomial scaled(const Rational& s) const {
        FracMonomial r = *this;
        for (auto& x : r.q) x *= s;
        return r;
    }

    Rational degree(const RatVector& grading) const { return dot(q, grading); }

    bool operator==(const FracMonomial& o) const { return q == o.q; }
    bool operator<(const FracMonomial& o) const { return q < o.q; }

    /// "1" or e.g. "e^(l1-1/2*l2)".
    std::string to_string(const std::string& var = "l") const {
        std::string body;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            const Rational mag = abs(q[i]);
            if (!body.empty()) body += q[i] > 0 ? "+" : "-";
            else if (q[i] < 0) body += "-";
            if (mag != 1) body += torickit::to_string(mag) + "*";
            body += var + std::to_string(i + 1);
        }
        return body.empty() ? "1" : "e^(" + body + ")";
    }

private:
    void check(const FracMonomial& o) const {
        if (o.q.size() != q.size()) throw InputError("monomials in different numbers of variables");
    }
};

/// Finite sum of FracMonomials with cyclotomic coefficients; zero coefficients are never stored.
class LaurentPoly {
public:
    using TermMap = std::map<FracMonomial, CycNumber>;

    explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const CycNumber& c) {
        LaurentPoly p(nvars);
        p.add_term(FracMonomial::zero(nvars), c);
        return p;
    }
    static LaurentPoly monomial(const FracMonomial& m, const CycNumber& c = CycNumber(1)) {
        LaurentPoly p(m.nvars());
        p.add_term(m, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const FracMonomial& m, const CycNumber& c) {
        if (m.nvars() != nvars_) throw InputError("monomial has wrong number of variables");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    LaurentPoly& operator*=(const CycNumber& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const CycNumber& s) { return a *= s; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check(b);
        LaurentPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }
    LaurentPoly operator-() const { return *this * CycNumber(-1); }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly shifted(const FracMonomial& m) const {
        LaurentPoly r(nvars_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k + m, c);
        return r;
    }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly acc = constant(nvars_, CycNumber(1));
        for (unsigned i = 0; i < k; ++i) acc *= *this;
        return acc;
    }

    bool operator==(const LaurentPoly& o) const {
        if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [m, c] : terms_) {
            if (!(m == it->first) || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }

    bool has_rational_coefficients() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }
    bool has_integral_exponents() const {
        for (const auto& [m, c] : terms_)
            if (!m.is_integral()) return false;
        return true;
    }

    /// Keeps only the terms with grading degree <= bound.
    LaurentPoly truncated(const RatVector& grading, const Rational& bound) const {
        LaurentPoly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (m.degree(grading) <= bound) r.terms_.emplace(m, c);
        return r;
    }

    /// Exponents q replaced by A^T q, where lambda = A mu and A is nvars x k.
    LaurentPoly specialized(const RatMatrix& A) const {
        if (A.rows() != nvars_) throw InputError("specialization matrix has wrong number of rows");
        const RatMatrix At = A.transpose();
        LaurentPoly r(A.cols());
        for (const auto& [m, c] : terms_) r.add_term(FracMonomial(At.apply(m.q)), c);
        return r;
    }

    /// Canonical text: monomials in increasing exponent order, e.g. "e^(l2) - 2*e^(4*l1-l2)".
    std::string to_string(const std::string& var = "l") const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            CycNumber shown = c;
            bool negative = false;
            if (c.is_rational() && c.to_rational() < 0) {
                negative = true;
                shown = -c;
            }
            if (first) s += negative ? "-" : "";
            else s += negative ? " - " : " + ";
            first = false;
            if (m.is_zero()) {
                s += shown.to_string();
            } else if (shown.is_one()) {
                s += m.to_string(var);
            } else {
                s += shown.to_string() + "*" + m.to_string(var);
            }
        }
        return s;
    }

private:
    void check(const LaurentPoly& o) const {
        if (o.nvars_ != nvars_) throw InputError("Laurent polynomials in different numbers of variables");
    }

    std::size_t nvars_;
    TermMap terms_;
};

}  // namespace torickit

#pragma once

#include "torickit/exactalg/rational.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

namespace detail {

// Dense univariate polynomials over Q, coefficient i multiplies x^i.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

inline QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Returns (quotient, remainder).
inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (b.empty()) throw Error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1, Rational(0));
    const Rational lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational f = a.back() / lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline QPoly cyclotomic_polynomial_uncached(unsigned n) {
    // x^n - 1 divided by Phi_d for every proper divisor d
    QPoly p(n + 1, Rational(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        p = qpoly_divmod(p, cyclotomic_polynomial_uncached(d)).first;
    }
    return p;
}

inline const QPoly& cyclotomic_polynomial(unsigned n) {
    static std::mutex mutex;
    static std::map<unsigned, QPoly> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, cyclotomic_polynomial_uncached(n)).first;
    return it->second;
}

}  // namespace detail

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, zeta, ..., zeta^(phi(N)-1) of zeta = exp(2 pi i / N).
/// Rational values are always normalized to conductor 1.
class CycNumber {
public:
    CycNumber() : conductor_(1), coeffs_{Rational(0)} {}
    CycNumber(const Rational& q) : conductor_(1), coeffs_{q} {}  // NOLINT: implicit by design of the field embedding
    CycNumber(long q) : CycNumber(Rational(q)) {}                 // NOLINT

    /// exp(2 pi i * angle) for a rational angle.
    static CycNumber root_of_unity(const Rational& angle) {
        const Rational f = frac_part(angle);
        const unsigned n = static_cast<unsigned>(f.get_den().get_ui());
        return zeta_power(n, f.get_num().get_ui());
    }

    /// zeta_N^k.
    static CycNumber zeta_power(unsigned n, unsigned long k) {
        if (n == 0) throw InputError("conductor must be positive");
        detail::QPoly p(k % n + 1, Rational(0));
        p.back() = 1;
        return CycNumber(n, std::move(p));
    }

    unsigned conductor() const { return conductor_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    bool is_zero() const { return is_rational() && coeffs_[0] == 0; }
    bool is_one() const { return is_rational() && coeffs_[0] == 1; }
    const Rational& rational_part() const { return coeffs_[0]; }
    Rational to_rational() const {
        if (!is_rational()) throw Error("cyclotomic number is not rational: " + to_string());
        return coeffs_[0];
    }

    /// The same number expressed over conductor m (conductor() must divide m).
    CycNumber lifted(unsigned m) const {
        if (m % conductor_ != 0) throw Error("cannot lift cyclotomic number to a non-multiple conductor");
        if (m == conductor_ || is_rational()) return *this;
        const unsigned step = m / conductor_;
        detail::QPoly p(coeffs_.size() * step, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
        return CycNumber(m, std::move(p));
    }

    CycNumber& operator+=(const CycNumber& o) { return combine(o, +1); }
    CycNumber& operator-=(const CycNumber& o) { return combine(o, -1); }

    CycNumber& operator*=(const CycNumber& o) {
        if (is_rational() && o.is_rational()) {
            coeffs_[0] *= o.coeffs_[0];
            return *this;
        }
        if (o.is_rational()) {
            for (auto& c : coeffs_) c *= o.coeffs_[0];
            normalize();
            return *this;
        }
        if (is_rational()) {
            const Rational s = coeffs_[0];
            *this = o;
            for (auto& c : coeffs_) c *= s;
            normalize();
            return *this;
        }
        const unsigned m = std::lcm(conductor_, o.conductor_);
        const CycNumber a = lifted(m), b = o.lifted(m);
        *this = CycNumber(m, detail::qpoly_mul(a.coeffs_, b.coeffs_));
        return *this;
    }

    CycNumber inverse() const {
        if (is_zero()) throw Error("inverse of zero cyclotomic number");
        if (is_rational()) return CycNumber(Rational(1 / coeffs_[0]));
        // extended Euclid: s * a + t * Phi = 1
        const detail::QPoly& phi = detail::cyclotomic_polynomial(conductor_);
        detail::QPoly r0 = phi, r1 = coeffs_;
        detail::trim(r1);
        detail::QPoly s0, s1{Rational(1)};
        while (!r1.empty()) {
            auto [q, r] = detail::qpoly_divmod(r0, r1);
            detail::QPoly s = detail::qpoly_sub(s0, detail::qpoly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r0 is a nonzero constant
        const Rational c = r0.at(0);
        for (auto& x : s0) x /= c;
        return CycNumber(conductor_, std::move(s0));
    }

    CycNumber& operator/=(const CycNumber& o) { return *this *= o.inverse(); }

    CycNumber pow(long k) const {
        CycNumber base = k < 0 ? inverse() : *this;
        unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
        CycNumber acc(1);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Order as a root of unity, or 0 if it is not one.
    unsigned root_of_unity_order() const {
        const unsigned bound = 2 * conductor_;
        CycNumber acc(1);
        for (unsigned k = 1; k <= bound; ++k) {
            acc *= *this;
            if (acc.is_one()) return k;
        }
        return 0;
    }

    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }
    CycNumber operator-() const {
        CycNumber c = *this;
        for (auto& x : c.coeffs_) x = -x;
        return c;
    }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
        return (a - b).is_zero();
    }

    /// Canonical text: rational as "p/q", otherwise "(c0 + c1*z + ...)[N]" with z = zeta_N.
    std::string to_string() const {
        if (is_rational()) return torickit::to_string(coeffs_[0]);
        std::string s = "(";
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            if (!first) s += coeffs_[i] > 0 ? " + " : " - ";
            else if (coeffs_[i] < 0) s += "-";
            first = false;
            const Rational mag = abs(coeffs_[i]);
            if (i == 0) {
                s += torickit::to_string(mag);
                continue;
            }
            if (mag != 1) s += torickit::to_string(mag) + "*";
            s += "z" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s + ")[z=zeta_" + std::to_string(conductor_) + "]";
    }

private:
    CycNumber(unsigned n, detail::QPoly p) : conductor_(n) {
        reduce(std::move(p));
    }

    void reduce(detail::QPoly p) {
        // zeta^n = 1 first, then reduce modulo Phi_n
        detail::QPoly folded(conductor_, Rational(0));
        for (std::size_t i = 0; i < p.size(); ++i) folded[i % conductor_] += p[i];
        const detail::QPoly& phi = detail::cyclotomic_polynomial(conductor_);
        detail::QPoly r = detail::qpoly_divmod(std::move(folded), phi).second;
        coeffs_.assign(phi.size() - 1, Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i) coeffs_[i] = r[i];
        normalize();
    }

    void normalize() {
        if (coeffs_.empty()) coeffs_.push_back(Rational(0));
        if (is_rational()) {
            const Rational c = coeffs_[0];
            conductor_ = 1;
            coeffs_.assign(1, c);
        }
    }

    CycNumber& combine(const CycNumber& o, int sign) {
        if (is_rational() && o.is_rational()) {
            if (sign > 0) coeffs_[0] += o.coeffs_[0];
            else coeffs_[0] -= o.coeffs_[0];
            return *this;
        }
        const unsigned m = std::lcm(conductor_, o.conductor_);
        CycNumber a = lifted(m);
        const CycNumber b = o.lifted(m);
        if (a.conductor_ != m) {  // a was rational
            detail::QPoly p{a.coeffs_[0]};
            a = CycNumber(m, std::move(p));
        }
        detail::QPoly sum = a.coeffs_;
        const auto& bc = b.conductor_ == m ? b.coeffs_ : detail::QPoly{b.coeffs_[0]};
        if (sum.size() < bc.size()) sum.resize(bc.size(), Rational(0));
        for (std::size_t i = 0; i < bc.size(); ++i) {
            if (sign > 0) sum[i] += bc[i];
            else sum[i] -= bc[i];
        }
        *this = CycNumber(m, std::move(sum));
        return *this;
    }

    unsigned conductor_;
    std::vector<Rational> coeffs_;
};

}  // namespace torickit

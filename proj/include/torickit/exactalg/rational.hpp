#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torickit {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when inputs violate a documented precondition (bad shapes, wrong data).
class InputError : public Error {
public:
    using Error::Error;
};

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    if (den == 0) throw InputError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '+')) t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
    };
    trim(s);
    if (s.empty()) throw InputError("empty rational literal");
    const auto slash = s.find('/');
    Integer num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Integer(s, 10);
        } else {
            num = Integer(s.substr(0, slash), 10);
            den = Integer(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Fractional part in [0, 1).
inline Rational frac_part(const Rational& q) {
    Rational r = q - Rational(floor_of(q));
    r.canonicalize();
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline bool is_zero(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw InputError("dimension mismatch in dot product");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw InputError("dimension mismatch in dot product");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVector to_rational(const IntVector& v) {
    return RatVector(v.begin(), v.end());
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
inline IntVector primitive_on_ray(const RatVector& v) {
    Integer den = 1;
    for (const auto& x : v) den = lcm_of(den, x.get_den());
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * Rational(den);
        out[i] = scaled.get_num();
        g = gcd_of(g, out[i]);
    }
    if (g == 0) throw InputError("zero vector has no primitive representative");
    for (auto& x : out) x /= g;
    return out;
}

inline std::string join_rationals(const RatVector& v, std::string_view sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_string(v[i]);
    }
    return out;
}

}  // namespace torickit

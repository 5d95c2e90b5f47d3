#pragma once

#include "torickit/exactalg/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace torickit {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value = 0;
    RatVector x;
};

namespace detail {

// Dense tableau simplex with Bland's rule. Rows 0..m-1 are constraints, last column is rhs.
class Tableau {
public:
    Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m, n + 1), basis_(m) {}

    Rational& at(std::size_t i, std::size_t j) { return t_(i, j); }
    Rational& rhs(std::size_t i) { return t_(i, n_); }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = 1 / t_(r, c);
        for (std::size_t j = 0; j <= n_; ++j) t_(r, j) *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || t_(i, c) == 0) continue;
            const Rational f = t_(i, c);
            for (std::size_t j = 0; j <= n_; ++j) t_(i, j) -= f * t_(r, j);
        }
        basis_[r] = c;
    }

    // Maximizes cost . x over columns allowed[j]; returns false when unbounded.
    bool maximize(const RatVector& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // reduced costs
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < n_ && !entering; ++j) {
                if (!allowed[j] || is_basic(j)) continue;
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < m_; ++i) reduced -= cost[basis_[i]] * t_(i, j);
                if (reduced > 0) entering = j;
            }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_(i, *entering) <= 0) continue;
                const Rational ratio = t_(i, n_) / t_(i, *entering);
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }

    bool is_basic(std::size_t j) const {
        for (auto b : basis_)
            if (b == j) return true;
        return false;
    }

    std::size_t rows() const { return m_; }

private:
    std::size_t m_, n_;
    RatMatrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Maximizes c.x subject to A x = b, x >= 0, exactly (two-phase simplex, Bland's rule).
inline LpResult lp_maximize(const RatMatrix& A, const RatVector& b, const RatVector& c) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m || c.size() != n) throw InputError("lp_maximize: shape mismatch");

    // columns: n structural, m artificial
    detail::Tableau tab(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? Rational(-A(i, j)) : A(i, j);
        tab.at(i, n + i) = 1;
        tab.rhs(i) = flip ? Rational(-b[i]) : b[i];
        tab.basis()[i] = n + i;
    }

    RatVector phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    std::vector<bool> all(n + m, true);
    tab.maximize(phase1, all);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] >= n && tab.rhs(i) != 0) return {LpStatus::infeasible, 0, {}};

    // drive remaining (zero-level) artificials out of the basis where possible
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis()[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) {
                tab.pivot(i, j);
                break;
            }
    }

    RatVector phase2(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    std::vector<bool> structural(n + m, false);
    for (std::size_t j = 0; j < n; ++j) structural[j] = true;
    if (!tab.maximize(phase2, structural)) return {LpStatus::unbounded, 0, {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] < n) res.x[tab.basis()[i]] = tab.rhs(i);
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

/// Decides whether point = sum a_i g_i with all a_i > 0 (strict) or a_i >= 0.
/// The empty generator list spans only the zero vector.
inline bool cone_contains(const std::vector<RatVector>& generators, const RatVector& point, bool strict) {
    const std::size_t d = point.size();
    for (const auto& g : generators)
        if (g.size() != d) throw InputError("cone_contains: dimension mismatch");
    if (generators.empty()) return is_zero(point);

    const std::size_t n = generators.size();
    if (!strict) {
        RatMatrix A(d, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < d; ++i) A(i, j) = generators[j][i];
        return lp_maximize(A, point, RatVector(n, Rational(0))).status == LpStatus::optimal;
    }

    // a_j = a'_j + t, maximize t with t + slack = 1
    RatMatrix A(d + 1, n + 2);
    for (std::size_t i = 0; i < d; ++i) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = generators[j][i];
            row_sum += generators[j][i];
        }
        A(i, n) = row_sum;
    }
    A(d, n) = 1;
    A(d, n + 1) = 1;
    RatVector b = point;
    b.push_back(1);
    RatVector c(n + 2, Rational(0));
    c[n] = 1;
    const auto res = lp_maximize(A, b, c);
    return res.status == LpStatus::optimal && res.value > 0;
}

/// True iff the vectors lie in a strictly convex cone: no nonnegative combination
/// with some positive coefficient sums to zero.
inline bool weights_convex(const std::vector<RatVector>& weights) {
    if (weights.empty()) return true;
    const std::size_t d = weights.front().size();
    for (const auto& w : weights)
        if (w.size() != d) throw InputError("weights_convex: dimension mismatch");
    const std::size_t n = weights.size();
    // sum a_i w_i = 0, sum a_i + slack = 1, maximize sum a_i
    RatMatrix A(d + 1, n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < d; ++i) A(i, j) = weights[j][i];
        A(d, j) = 1;
    }
    A(d, n) = 1;
    RatVector b(d + 1, Rational(0));
    b[d] = 1;
    RatVector c(n + 1, Rational(1));
    c[n] = 0;
    const auto res = lp_maximize(A, b, c);
    return res.value == 0;
}

}  // namespace torickit

/**
 * @file simplex.hpp
 * @brief Dense exact-rational simplex for max c.x s.t. A x <= b, x >= 0, b >= 0.
 *
 * b >= 0 makes the slack basis feasible, so no phase one is needed. Pivot
 * selection follows Bland's rule (smallest eligible index for both entering
 * and leaving variables), which rules out cycling.
 */
#pragma once

#include <optional>
#include <vector>

#include "wlct/coefficient.hpp"

namespace wlct {

enum class LpStatus { Optimal, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Rational value;
    std::vector<Rational> primal;  ///< x, size = columns
    std::vector<Rational> dual;    ///< y >= 0 with A^T y >= c and b.y = value
    std::size_t pivots = 0;
};

/// rows[i] is the i-th constraint row of A.
inline LpSolution solve_lp_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                               const std::vector<Rational>& c) {
    const std::size_t m = A.size();
    const std::size_t k = c.size();
    if (b.size() != m)
        throw DimensionMismatch(m, b.size());
    for (const auto& row : A)
        if (row.size() != k)
            throw DimensionMismatch(k, row.size());
    for (const auto& bi : b)
        if (sgn(bi) < 0)
            throw PreconditionError("simplex requires b >= 0");

    const std::size_t cols = k + m;
    // T[i] = [A_i | I_i | b_i]
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            T[i][j] = A[i][j];
        T[i][k + i] = 1;
        T[i][cols] = b[i];
    }
    std::vector<Rational> reduced(cols + 1);  // reduced costs; last entry = -objective
    for (std::size_t j = 0; j < k; ++j)
        reduced[j] = c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = k + i;

    LpSolution sol;
    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(reduced[j]) > 0) {
                enter = j;
                break;
            }
        if (!enter)
            break;
        const std::size_t e = *enter;
        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(T[i][e]) <= 0)
                continue;
            Rational ratio = T[i][cols] / T[i][e];
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        const std::size_t r = *leave;
        Rational piv = T[r][e];
        for (auto& v : T[r])
            v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || sgn(T[i][e]) == 0)
                continue;
            Rational f = T[i][e];
            for (std::size_t j = 0; j <= cols; ++j)
                T[i][j] -= f * T[r][j];
        }
        if (sgn(reduced[e]) != 0) {
            Rational f = reduced[e];
            for (std::size_t j = 0; j <= cols; ++j)
                reduced[j] -= f * T[r][j];
        }
        basis[r] = e;
        ++sol.pivots;
    }

    sol.primal.assign(k, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < k)
            sol.primal[basis[i]] = T[i][cols];
    sol.value = -reduced[cols];
    sol.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        sol.dual[i] = -reduced[k + i];
    return sol;
}

} // namespace wlct

#pragma once

// Exact dense linear solve used for stationary vectors.  Rows are scaled to
// integers, eliminated fraction-free (Bareiss: every intermediate entry is a
// minor of the scaled matrix, and the division by the previous pivot is
// exact), then back-substituted over rationals.

#include "sca5/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace sca5 {

struct singular_system : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solves A x = b for square A.  Throws singular_system on rank deficiency.
inline std::vector<Rational> solve_linear_exact(const std::vector<std::vector<Rational>>& A,
                                                const std::vector<Rational>& b) {
    const std::size_t n = A.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("solve_linear_exact: shape mismatch");

    // Clear denominators row by row.
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw std::invalid_argument("solve_linear_exact: ragged matrix");
        Int scale = 1;
        for (const Rational& a : A[i]) scale = lcm(scale, denominator(a));
        scale = lcm(scale, denominator(b[i]));
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = numerator(A[i][j]) * (scale / denominator(A[i][j]));
        m[i][n] = numerator(b[i]) * (scale / denominator(b[i]));
    }

    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) throw singular_system("solve_linear_exact: singular matrix");
        if (pivot != k) std::swap(m[pivot], m[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = Rational(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
        x[i] = acc / Rational(m[i][i]);
    }
    return x;
}

}  // namespace sca5

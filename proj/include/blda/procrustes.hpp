#pragma once

#include "blda/types.hpp"

#include <cstdint>
#include <vector>

namespace blda {

/// Orthogonality-constrained quadratic-plus-linear subproblem
///   min (1/2)[tr(W'GW) + 2 tr(A'W)]  s.t.  W'W = I,
/// with G symmetric positive definite and A of shape n x d.
struct WSubproblem {
    Matrix g;  // n x n
    Matrix a;  // n x d
    Index d = 0;
    /// Cached dominant eigenvalue of g (with safety margin); computed when < 0.
    double g_dominant = -1.0;
};

/// Value of tr(W'GW) + 2 tr(A'W).
double subproblem_objective(const WSubproblem& p, const Matrix& w);

/// Balanced case d = n: tr(W'GW) is constant on the orthogonal group, so the
/// problem reduces to maximizing tr(W'(-A)); W = UV' from the full SVD of -A.
/// Both UV' and -UV' are evaluated and the lower-objective candidate returned.
Matrix solve_balanced(const WSubproblem& p);

struct UnbalancedResult {
    Matrix w;
    std::vector<double> objectives;  // subproblem objective after each sweep
    Index iterations = 0;
};

/// Unbalanced case d < n, majorization iteration:
///   a = dominant eigenvalue of G; M = 2(aI - G)W - 2A;
///   W <- argmax tr(W'M) = UV' from the thin SVD of M;
/// repeated until the objective decrease falls below inner_tol (relative) or
/// inner_max sweeps. Starts from warm_start if given, else from a seeded
/// random orthonormal matrix. The objective is non-increasing across sweeps.
UnbalancedResult solve_unbalanced(const WSubproblem& p, double inner_tol, Index inner_max,
                                  std::uint64_t seed, const Matrix* warm_start = nullptr);

/// Seeded Gaussian matrix orthonormalized by Householder QR; ||W'W - I||_F <= 1e-10.
Matrix orthonormal_init(Index n, Index d, std::uint64_t seed);

/// Largest eigenvalue of a symmetric PSD matrix by power iteration
/// (tolerance 1e-10), inflated by a 1e-6 multiplicative safety margin so that
/// a*I - G stays PSD numerically.
double dominant_eigenvalue(const Matrix& g);

/// argmax_{W'W=I} tr(W'M) via thin SVD, W = UV'.
Matrix polar_orthonormal_factor(const Matrix& m);

}  // namespace blda

#pragma once

#include "blda/dataset.hpp"
#include "blda/scatter.hpp"
#include "blda/types.hpp"

namespace blda {

/// Orthonormal eigenvectors of the d algebraically smallest eigenvalues of the
/// symmetric matrix s, eigenvalues ascending left to right. The objective is
/// tr(W'SW) = sum of those eigenvalues. Column signs are canonicalized
/// (largest-magnitude entry positive).
ProjectionMatrix solve_l2blda(const Matrix& s, Index d);

/// Generalized eigenpairs of (S_b, S_w), values descending. S_w is inverted
/// through its eigendecomposition with relative tolerance 1e-10 * lambda_max,
/// so singular within-scatter falls back to the pseudo-inverse.
struct LdaPencil {
    Matrix vectors;  // n x n, one generalized eigenvector per column
    Vector values;   // descending
};
LdaPencil lda_pencil(const ScatterSet& scatters);

/// Classical LDA directions. Columns span the top-d generalized eigenvectors
/// and are orthonormalized (QR, prefix spans preserved) for consistent
/// nearest-neighbor geometry downstream. Objective is the trace ratio at W.
ProjectionMatrix solve_lda(const ScatterSet& scatters, Index d);

/// Top-d eigenvectors of the total scatter, eigenvalues descending.
/// Objective is tr(W'S_tW).
ProjectionMatrix solve_pca(const LabeledDataset& data, Index d);

}  // namespace blda

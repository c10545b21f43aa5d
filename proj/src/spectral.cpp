#include "blda/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>

namespace blda {

namespace {

// Flip each column so its largest-magnitude entry is positive; first
// occurrence wins ties. Makes eigenvector output deterministic.
void canonicalize_columns(Matrix& w) {
    for (Index j = 0; j < w.cols(); ++j) {
        Index arg = 0;
        w.col(j).cwiseAbs().maxCoeff(&arg);
        if (w(arg, j) < 0.0) w.col(j) = -w.col(j);
    }
}

void check_dims(Index d, Index n) {
    if (d < 1 || d > n) {
        throw DataError("target dimension " + std::to_string(d) + " outside 1.." +
                        std::to_string(n));
    }
}

}  // namespace

ProjectionMatrix solve_l2blda(const Matrix& s, Index d) {
    check_dims(d, s.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    ProjectionMatrix out;
    out.method = Method::L2blda;
    out.w = es.eigenvectors().leftCols(d);  // ascending eigenvalues
    canonicalize_columns(out.w);
    out.objective = es.eigenvalues().head(d).sum();
    return out;
}

LdaPencil lda_pencil(const ScatterSet& scatters) {
    Eigen::SelfAdjointEigenSolver<Matrix> ew(scatters.s_w);
    if (ew.info() != Eigen::Success) throw NumericalError("S_w eigendecomposition failed");
    const Vector& vals = ew.eigenvalues();
    const double tol = 1e-10 * std::max(vals.cwiseAbs().maxCoeff(), 0.0);
    Vector inv_sqrt(vals.size());
    for (Index i = 0; i < vals.size(); ++i) {
        inv_sqrt(i) = vals(i) > tol ? 1.0 / std::sqrt(vals(i)) : 0.0;
    }
    const Matrix whiten = ew.eigenvectors() * inv_sqrt.asDiagonal() * ew.eigenvectors().transpose();
    const Matrix c = whiten * scatters.s_b * whiten;
    Eigen::SelfAdjointEigenSolver<Matrix> ec(0.5 * (c + c.transpose()));
    if (ec.info() != Eigen::Success) throw NumericalError("whitened eigendecomposition failed");

    LdaPencil pencil;
    const Index n = vals.size();
    pencil.vectors.resize(n, n);
    pencil.values.resize(n);
    for (Index j = 0; j < n; ++j) {  // descending
        pencil.values(j) = ec.eigenvalues()(n - 1 - j);
        pencil.vectors.col(j) = whiten * ec.eigenvectors().col(n - 1 - j);
    }
    canonicalize_columns(pencil.vectors);
    return pencil;
}

ProjectionMatrix solve_lda(const ScatterSet& scatters, Index d) {
    check_dims(d, scatters.s_b.rows());
    const LdaPencil pencil = lda_pencil(scatters);

    // Orthonormalize for consistent nearest-neighbor geometry; Householder QR
    // keeps prefix column spans, so leading columns still nest across d.
    Matrix top = pencil.vectors.leftCols(d);
    // Guard against zero columns (null pseudo-inverse directions): replace by
    // an identity continuation before QR so the factor stays full rank.
    for (Index j = 0; j < d; ++j) {
        if (top.col(j).norm() < 1e-14) {
            top.col(j).setZero();
            top(j % top.rows(), j) = 1.0;
        }
    }
    Eigen::HouseholderQR<Matrix> qr(top);
    Matrix q = qr.householderQ() * Matrix::Identity(top.rows(), d);
    canonicalize_columns(q);

    ProjectionMatrix out;
    out.method = Method::Lda;
    out.w = std::move(q);
    const double num = (out.w.transpose() * scatters.s_b * out.w).trace();
    const double den = (out.w.transpose() * scatters.s_w * out.w).trace();
    out.objective = den > 1e-300 ? num / den : std::numeric_limits<double>::infinity();
    return out;
}

ProjectionMatrix solve_pca(const LabeledDataset& data, Index d) {
    check_dims(d, data.feature_count());
    const Index n = data.feature_count();
    const Index N = data.sample_count();
    const Vector mean = data.features.rowwise().mean();
    Matrix centered = data.features.colwise() - mean;
    const Matrix st = centered * centered.transpose() / static_cast<double>(N);
    Eigen::SelfAdjointEigenSolver<Matrix> es(st);
    if (es.info() != Eigen::Success) throw NumericalError("S_t eigendecomposition failed");

    ProjectionMatrix out;
    out.method = Method::Pca;
    out.w.resize(n, d);
    out.objective = 0.0;
    for (Index j = 0; j < d; ++j) {  // descending
        out.w.col(j) = es.eigenvectors().col(n - 1 - j);
        out.objective += es.eigenvalues()(n - 1 - j);
    }
    canonicalize_columns(out.w);
    return out;
}

}  // namespace blda

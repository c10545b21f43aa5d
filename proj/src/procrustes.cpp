#include "blda/procrustes.hpp"

#include "blda/rng.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace blda {

double subproblem_objective(const WSubproblem& p, const Matrix& w) {
    return (w.transpose() * p.g * w).trace() + 2.0 * (p.a.transpose() * w).trace();
}

Matrix polar_orthonormal_factor(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().transpose();
}

Matrix solve_balanced(const WSubproblem& p) {
    const Index n = p.g.rows();
    if (p.a.cols() != n) {
        throw DataError("balanced subproblem requires d = n, got d = " +
                        std::to_string(p.a.cols()));
    }
    // tr(W'GW) = tr(G) here, so only the linear term matters: maximize
    // tr(W'(-A)). The sign guard keeps the result exact either way.
    Eigen::JacobiSVD<Matrix> svd(-p.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix w = svd.matrixU() * svd.matrixV().transpose();
    if (subproblem_objective(p, -w) < subproblem_objective(p, w)) w = -w;
    return w;
}

UnbalancedResult solve_unbalanced(const WSubproblem& p, double inner_tol, Index inner_max,
                                  std::uint64_t seed, const Matrix* warm_start) {
    const Index n = p.g.rows();
    const Index d = p.a.cols();
    if (d >= n) {
        throw DataError("unbalanced subproblem requires d < n, got d = " + std::to_string(d));
    }
    if (!p.a.allFinite() || !p.g.allFinite()) {
        throw NumericalError("non-finite entries in the W-subproblem");
    }
    const double a_dom = p.g_dominant >= 0.0 ? p.g_dominant : dominant_eigenvalue(p.g);
    const Matrix shift = a_dom * Matrix::Identity(n, n) - p.g;

    UnbalancedResult res;
    res.w = warm_start != nullptr ? *warm_start : orthonormal_init(n, d, seed);
    double f_prev = subproblem_objective(p, res.w);
    res.objectives.push_back(f_prev);
    for (Index it = 0; it < inner_max; ++it) {
        const Matrix m = 2.0 * shift * res.w - 2.0 * p.a;
        res.w = polar_orthonormal_factor(m);
        const double f = subproblem_objective(p, res.w);
        res.objectives.push_back(f);
        res.iterations = it + 1;
        if (f_prev - f < inner_tol * std::max(1.0, std::abs(f_prev))) break;
        f_prev = f;
    }
    return res;
}

Matrix orthonormal_init(Index n, Index d, std::uint64_t seed) {
    if (d > n) throw DataError("orthonormal_init needs d <= n");
    Rng rng(mix_seed(seed, 0x0f0fULL));
    Matrix a(n, d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) a(i, j) = rng.normal();
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(n, d);
    const Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

double dominant_eigenvalue(const Matrix& g) {
    const Index n = g.rows();
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = 1.0 + 1e-3 * static_cast<double>(i + 1);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector gv = g * v;
        const double norm = gv.norm();
        if (norm == 0.0) return 0.0;
        v = gv / norm;
        const double next = v.dot(g * v);
        if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda * (1.0 + 1e-6);
}

}  // namespace blda

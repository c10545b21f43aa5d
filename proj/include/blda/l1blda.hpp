#pragma once

#include "blda/admm_state.hpp"
#include "blda/dataset.hpp"
#include "blda/scatter.hpp"
#include "blda/types.hpp"

#include <utility>
#include <vector>

namespace blda {

/// Soft threshold: a-k for a>k, 0 for |a|<=k, a+k for a<-k.
inline double soft_threshold(double a, double kappa) {
    if (a > kappa) return a - kappa;
    if (a < -kappa) return a + kappa;
    return 0.0;
}

/// Evaluate the L1 criterion at an orthonormal W:
///   between = (1/N) sum_{i<j} sqrt(N_i N_j) ||W'(m_i - m_j)||_1
///   within  = sum_{i,s} ||W'(x_s^i - m_i)||_1
///   total   = -between + omega * within.
L1bldaObjective objective_l1blda(const Matrix& w, const LabeledDataset& data,
                                 const ClassStats& stats, double omega);

/// Pair-block update: componentwise B = v + 1/rho where v >= 0, else v - 1/rho,
/// with v = coef_p W'(m_i - m_j) + alpha_p.
Matrix update_b(const Matrix& w, const ClassStats& stats, const Matrix& alpha, double rho);

/// Sample-block update: Z_s = soft_threshold(W'(x_s - m_i) + beta_s, omega/rho).
Matrix update_z(const Matrix& w, const LabeledDataset& data, const ClassStats& stats,
                const Matrix& beta, double omega, double rho);

/// D = W - Gamma.
Matrix update_d(const Matrix& w, const Matrix& gamma);

/// Dual ascent with unit step on all three constraint blocks (scaled form).
void update_duals(AdmmState& state, const LabeledDataset& data, const ClassStats& stats);

/// (r_norm, s_norm) of the stopping test. The primal residual is the max
/// 2-norm over pair blocks, sample blocks and the Frobenius norm of W - D;
/// the dual residual is the max over rho * ||m_i - m_j|| * ||dB_p||,
/// rho * ||x_s - m_i|| * ||dZ_s|| (spectral norm of the rank-one products)
/// and rho * ||D - D_prev||_F.
std::pair<double, double> residuals(const AdmmState& state, const LabeledDataset& data,
                                    const ClassStats& stats, double rho);

struct L1bldaResult {
    ProjectionMatrix projection;
    std::vector<IterationRecord> trace;
    bool converged = false;
    double omega = 0.0;
};

/// Scaled ADMM for the L1 criterion. W0 = D0 is the L2 eigenbasis rotated by
/// a seeded random orthogonal d x d factor; all blocks and duals start at 0.
/// Iterates W / B / Z / D updates and dual ascent until both residuals fall
/// below the tolerances or it_max is reached. Throws NumericalError if a
/// non-finite value appears.
L1bldaResult solve_l1blda(const LabeledDataset& data, Index d, const AdmmConfig& cfg);

/// Write the per-iteration trace as CSV (iter, objective, r_norm, s_norm).
void write_trace_csv(const std::string& path, const std::vector<IterationRecord>& trace);

}  // namespace blda

#pragma once

#include "blda/admm_state.hpp"
#include "blda/dataset.hpp"
#include "blda/types.hpp"

#include <utility>
#include <vector>

namespace blda {

struct ClassStats {
    Vector global_mean;  // length n
    Matrix class_means;  // n x c
    std::vector<Index> counts;
    Vector priors;  // counts / N
    Index n = 0;
    Index sample_count = 0;
    int c = 0;
};

struct ScatterSet {
    Matrix s_b;  // between-class, 1/N scaling
    Matrix s_w;  // within-class, 1/N scaling
    Matrix s_t;  // total
};

/// Data-derived weights balancing the between and within terms.
struct AdaptiveWeights {
    double delta = 0.0;  // L2 criterion
    double omega = 0.0;  // L1 criterion
};

/// Pairwise class-mean structure shared by the solvers: one column per class
/// pair (i<j, lexicographic), mean_diffs.col(p) = mean_i - mean_j and
/// coefs[p] = sqrt(N_i N_j) / N.
struct PairContext {
    Matrix mean_diffs;  // n x P
    Vector coefs;       // P
    std::vector<std::pair<int, int>> pairs;
    Index pair_count() const { return mean_diffs.cols(); }
};

ClassStats class_stats(const LabeledDataset& data);
ScatterSet scatter_matrices(const LabeledDataset& data, const ClassStats& stats);
AdaptiveWeights adaptive_weights(const ClassStats& stats);

PairContext pair_context(const ClassStats& stats);

/// n x N matrix of per-sample deviations x_l - mean(class of l), column order.
Matrix centered_deviations(const LabeledDataset& data, const ClassStats& stats);

/// The symmetric matrix whose d smallest eigenvectors solve the L2 criterion:
/// S = -sum_{i<j} sqrt(N_i N_j)/N (m_i-m_j)(m_i-m_j)' + delta * sum deviations.
Matrix l2blda_matrix(const LabeledDataset& data, const ClassStats& stats,
                     const AdaptiveWeights& weights);

/// Constant quadratic term of the ADMM W-subproblem:
/// G = sum_{i<j} (N_i N_j / N^2)(m_i-m_j)(m_i-m_j)' + sum dev dev' + I.
Matrix admm_g_matrix(const LabeledDataset& data, const ClassStats& stats);

/// Linear term assembled from the current blocks and duals:
/// A = sum coef_p (m_i-m_j)(B_p - alpha_p)' + sum dev_s (Z_s - beta_s)' + D + Gamma.
Matrix admm_a_matrix(const LabeledDataset& data, const ClassStats& stats, const AdmmState& state);

/// Both W-subproblem matrices for the current state.
std::pair<Matrix, Matrix> admm_w_matrices(const LabeledDataset& data, const ClassStats& stats,
                                          const AdmmState& state);

}  // namespace blda

#pragma once

#include "blda/admm_state.hpp"
#include "blda/dataset.hpp"
#include "blda/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace blda {

/// Accuracy-vs-dimension curve of one method on one train/test split.
struct ExperimentReport {
    Method method = Method::Pca;
    std::vector<std::pair<Index, double>> per_dim;  // (dimension, accuracy %)
    std::pair<double, Index> best;                  // (accuracy %, dimension)
    std::string dataset;
    std::string noise;  // empty for clean runs
    std::uint64_t seed = 0;
};

/// 1-NN accuracy (%) of the test set in the projected space. Distance ties
/// break toward the lowest training column index.
double knn1_accuracy(const LabeledDataset& train, const LabeledDataset& test, const Matrix& w);
double knn1_accuracy(const LabeledDataset& train, const LabeledDataset& test,
                     const ProjectionMatrix& w);

/// Leave-one-out 1-NN accuracy (%) of a single set in the projected space.
double knn1_loo_accuracy(const LabeledDataset& data, const Matrix& w);

/// Fit one method on the training set. d must satisfy 1 <= d <= n.
ProjectionMatrix fit_method(const LabeledDataset& train, Method method, Index d,
                            const AdmmConfig& admm);

/// Accuracy at every dimension 1..d_max. Spectral methods are fitted once at
/// d_max and evaluated on prefix columns (their leading subspaces nest); the
/// L1 solver is refitted per dimension. Best ties break toward the smaller
/// dimension.
ExperimentReport dim_sweep(const LabeledDataset& train, const LabeledDataset& test, Method method,
                           Index d_max, const AdmmConfig& admm);

/// Acute angle in degrees between two direction vectors, in [0, 90].
double acute_angle_degrees(const Vector& u, const Vector& v);

/// Fit d=1 on the clean and corrupted variants of a 2-D set and return the
/// acute angle between the two directions.
double robustness_angle(const LabeledDataset& clean, const LabeledDataset& dirty, Method method,
                        std::uint64_t seed);

}  // namespace blda

#pragma once

#include "blda/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blda {

/// Labeled samples stored column-wise: features is n (features) x N (samples),
/// labels[l] in {1..c}, class_index[i] lists the columns of class i+1.
struct LabeledDataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::vector<Index>> class_index;
    std::string name;

    Index feature_count() const { return features.rows(); }
    Index sample_count() const { return features.cols(); }
    int class_count() const { return static_cast<int>(class_index.size()); }

    /// Rebuild class_index from labels (labels must already be in 1..c).
    void rebuild_class_index(int c);
    /// Check the structural invariants; throws DataError on violation.
    /// Split parts may legitimately have empty classes in the test half.
    void validate(bool allow_empty_class = false) const;
};

enum class NoiseKind { FeatureGaussian, ImageGaussianBlock, ImageBlackBlock };

std::string to_string(NoiseKind k);
std::optional<NoiseKind> noise_kind_from_string(std::string_view s);

/// Deterministic corruption recipe. `fraction` is the fraction of features
/// (FeatureGaussian) or of image area (block kinds). Block kinds require
/// image_shape = (height, width) with height*width == n.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::FeatureGaussian;
    double fraction = 0.3;
    double variance = 0.1;
    std::optional<std::pair<int, int>> image_shape;
    std::uint64_t seed = 0;

    /// Short identifier used in report files, e.g. "gauss30".
    std::string label() const;
};

/// Load a comma-separated file. The label column is selected by name (requires
/// a header) or by integer index (negative counts from the end; default "-1"
/// is the last column). A header row is detected as a first row with any
/// non-numeric cell. Labels are remapped to contiguous {1..c} preserving
/// first-appearance order.
LabeledDataset load_csv(const std::string& path, const std::string& label_column = "-1");

/// Load the big-endian IDX image/label pair (magics 0x00000803 / 0x00000801).
/// Pixels are scaled by 1/255; labels 0..9 map to 1..10.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Min-max normalize each feature row to [0,1]; constant rows map to 0.
LabeledDataset normalize_minmax(const LabeledDataset& data);

/// Deterministic train/test split. Stratified mode keeps ceil(f*N_i) samples
/// of every class in the training part. Throws DataError if a class would end
/// up empty in the training part.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double train_fraction,
                                                std::uint64_t seed, bool stratified = true);

/// Apply the noise recipe; identical (data, spec) gives bit-identical output.
/// Values are not clamped to [0,1].
LabeledDataset inject_noise(const LabeledDataset& data, const NoiseSpec& spec);

/// 2-D four-class Gaussian-blob set (sizes 120/30/30/30) used by the
/// robustness demo; with_outliers appends two distant points to class 1.
LabeledDataset make_synthetic_fig1(std::uint64_t seed, bool with_outliers);

/// Bilinear resampling of each column viewed as a row-major in_shape image.
LabeledDataset resample_images(const LabeledDataset& data, std::pair<int, int> in_shape,
                               std::pair<int, int> out_shape);

/// Seeded stratified subsample of per_class samples from every class.
LabeledDataset subsample_stratified(const LabeledDataset& data, Index per_class, std::uint64_t seed);

namespace fig1 {
// Generator constants for make_synthetic_fig1. Centers are colinear with
// spacing 0.1; the outliers sit 10x the center spread above class 1's center.
inline constexpr double kCenterX0 = 0.15;
inline constexpr double kCenterSpacing = 0.10;
inline constexpr double kCenterY = 0.40;
inline constexpr double kBlobSigma = 0.005;
inline constexpr int kClassSizes[4] = {120, 30, 30, 30};
inline constexpr double kCenterSpread = 3 * kCenterSpacing;
inline constexpr double kOutlierY1 = kCenterY + 10 * kCenterSpread;
inline constexpr double kOutlierY2 = kOutlierY1 + 0.05;
}  // namespace fig1

}  // namespace blda

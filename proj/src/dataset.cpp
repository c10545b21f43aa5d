#include "blda/dataset.hpp"

#include "blda/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace blda {

namespace {

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (std::isspace(static_cast<unsigned char>(s[a])) != 0)) ++a;
    while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) != 0)) --b;
    return s.substr(a, b - a);
}

// Split one CSV record; handles quoted fields with embedded commas/quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string dataset_name_from_path(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return (dot == std::string::npos) ? base : base.substr(0, dot);
}

}  // namespace

void LabeledDataset::rebuild_class_index(int c) {
    class_index.assign(static_cast<std::size_t>(c), {});
    for (Index l = 0; l < static_cast<Index>(labels.size()); ++l) {
        const int lab = labels[static_cast<std::size_t>(l)];
        if (lab < 1 || lab > c) {
            throw DataError("label " + std::to_string(lab) + " of sample " + std::to_string(l) +
                            " outside 1.." + std::to_string(c));
        }
        class_index[static_cast<std::size_t>(lab - 1)].push_back(l);
    }
}

void LabeledDataset::validate(bool allow_empty_class) const {
    const Index N = sample_count();
    if (static_cast<Index>(labels.size()) != N) {
        throw DataError("labels/features size mismatch");
    }
    const int c = class_count();
    if (c < 2) throw DataError("dataset needs at least 2 classes, got " + std::to_string(c));
    Index covered = 0;
    for (int i = 0; i < c; ++i) {
        const auto& idx = class_index[static_cast<std::size_t>(i)];
        if (idx.empty() && !allow_empty_class) {
            throw DataError("class " + std::to_string(i + 1) + " is empty");
        }
        for (Index l : idx) {
            if (l < 0 || l >= N || labels[static_cast<std::size_t>(l)] != i + 1) {
                throw DataError("class_index does not partition the samples");
            }
        }
        covered += static_cast<Index>(idx.size());
    }
    if (covered != N) throw DataError("class_index does not cover all samples");
}

std::string to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::FeatureGaussian: return "feature-gaussian";
        case NoiseKind::ImageGaussianBlock: return "image-gaussian-block";
        case NoiseKind::ImageBlackBlock: return "image-black-block";
    }
    return "?";
}

std::optional<NoiseKind> noise_kind_from_string(std::string_view s) {
    if (s == "feature-gaussian") return NoiseKind::FeatureGaussian;
    if (s == "image-gaussian-block") return NoiseKind::ImageGaussianBlock;
    if (s == "image-black-block") return NoiseKind::ImageBlackBlock;
    return std::nullopt;
}

std::string NoiseSpec::label() const {
    const int pct = static_cast<int>(std::lround(fraction * 100));
    switch (kind) {
        case NoiseKind::FeatureGaussian: return "gauss" + std::to_string(pct);
        case NoiseKind::ImageGaussianBlock: return "gblock" + std::to_string(pct);
        case NoiseKind::ImageBlackBlock: return "bblock" + std::to_string(pct);
    }
    return "?";
}

LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw DataError(path + ": empty file");

    const std::size_t width = rows[0].size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw DataError(path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(width));
        }
    }
    if (width < 2) throw DataError(path + ": need at least one feature and one label column");

    // Header: any non-numeric cell in the first row.
    bool has_header = false;
    for (const auto& cell : rows[0]) {
        double tmp;
        if (!parse_number(cell, tmp)) {
            has_header = true;
            break;
        }
    }

    // Resolve the label column.
    Index label_col = -1;
    {
        double as_num;
        if (parse_number(label_column, as_num)) {
            auto idx = static_cast<Index>(as_num);
            if (idx < 0) idx += static_cast<Index>(width);
            if (idx < 0 || idx >= static_cast<Index>(width)) {
                throw DataError(path + ": label column index " + label_column +
                                " out of range for " + std::to_string(width) + " columns");
            }
            label_col = idx;
        } else {
            if (!has_header) {
                throw DataError(path + ": label column '" + label_column +
                                "' given by name but the file has no header");
            }
            for (std::size_t j = 0; j < width; ++j) {
                if (rows[0][j] == label_column) {
                    label_col = static_cast<Index>(j);
                    break;
                }
            }
            if (label_col < 0) {
                throw DataError(path + ": no column named '" + label_column + "'");
            }
        }
    }

    const std::size_t first_data_row = has_header ? 1 : 0;
    const Index N = static_cast<Index>(rows.size() - first_data_row);
    if (N == 0) throw DataError(path + ": no data rows");
    const Index n = static_cast<Index>(width) - 1;

    LabeledDataset out;
    out.name = dataset_name_from_path(path);
    out.features.resize(n, N);
    out.labels.resize(static_cast<std::size_t>(N));

    std::vector<int> raw_labels(static_cast<std::size_t>(N));
    for (Index l = 0; l < N; ++l) {
        const auto& row = rows[first_data_row + static_cast<std::size_t>(l)];
        const std::size_t file_row = first_data_row + static_cast<std::size_t>(l) + 1;
        Index f = 0;
        for (std::size_t j = 0; j < width; ++j) {
            double v;
            if (!parse_number(row[j], v)) {
                throw DataError(path + ": row " + std::to_string(file_row) + ", column " +
                                std::to_string(j + 1) + ": cell '" + row[j] + "' is not numeric");
            }
            if (static_cast<Index>(j) == label_col) {
                const double rounded = std::nearbyint(v);
                if (std::abs(v - rounded) > 1e-9) {
                    throw DataError(path + ": row " + std::to_string(file_row) +
                                    ": label '" + row[j] + "' is not an integer");
                }
                raw_labels[static_cast<std::size_t>(l)] = static_cast<int>(rounded);
            } else {
                out.features(f++, l) = v;
            }
        }
    }

    // Contiguous remap preserving first-appearance order.
    std::map<int, int> remap;
    std::vector<int> order;
    for (int lab : raw_labels) {
        if (remap.emplace(lab, 0).second) order.push_back(lab);
    }
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<int>(i) + 1;
    for (Index l = 0; l < N; ++l) {
        out.labels[static_cast<std::size_t>(l)] = remap[raw_labels[static_cast<std::size_t>(l)]];
    }
    const int c = static_cast<int>(order.size());
    if (c < 2) throw DataError(path + ": found " + std::to_string(c) + " class, need at least 2");
    out.rebuild_class_index(c);
    out.validate();
    return out;
}

namespace {

std::vector<unsigned char> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const unsigned char* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

}  // namespace

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    const auto img = read_bytes(images_path);
    const auto lab = read_bytes(labels_path);

    if (img.size() < 16) throw DataError(images_path + ": truncated IDX header");
    if (lab.size() < 8) throw DataError(labels_path + ": truncated IDX header");
    const std::uint32_t img_magic = be32(img.data());
    const std::uint32_t lab_magic = be32(lab.data());
    if (img_magic != 0x00000803u) {
        throw DataError(images_path + ": bad image magic (expected 0x00000803)");
    }
    if (lab_magic != 0x00000801u) {
        throw DataError(labels_path + ": bad label magic (expected 0x00000801)");
    }
    const std::uint32_t count = be32(img.data() + 4);
    const std::uint32_t rows = be32(img.data() + 8);
    const std::uint32_t cols = be32(img.data() + 12);
    const std::uint32_t lab_count = be32(lab.data() + 4);
    if (count != lab_count) {
        throw DataError("IDX count mismatch: " + std::to_string(count) + " images vs " +
                        std::to_string(lab_count) + " labels");
    }
    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    if (img.size() != 16 + pixels * count) {
        throw DataError(images_path + ": truncated payload");
    }
    if (lab.size() != 8 + static_cast<std::size_t>(count)) {
        throw DataError(labels_path + ": truncated payload");
    }

    LabeledDataset out;
    out.name = dataset_name_from_path(images_path);
    const Index n = static_cast<Index>(pixels);
    const Index N = static_cast<Index>(count);
    out.features.resize(n, N);
    out.labels.resize(static_cast<std::size_t>(N));
    for (Index l = 0; l < N; ++l) {
        const unsigned char* px = img.data() + 16 + static_cast<std::size_t>(l) * pixels;
        for (Index f = 0; f < n; ++f) {
            out.features(f, l) = static_cast<double>(px[f]) / 255.0;
        }
        const unsigned char digit = lab[8 + static_cast<std::size_t>(l)];
        if (digit > 9) {
            throw DataError(labels_path + ": label byte " + std::to_string(int(digit)) +
                            " at sample " + std::to_string(l) + " is not a digit");
        }
        out.labels[static_cast<std::size_t>(l)] = static_cast<int>(digit) + 1;
    }
    // Digits present define the classes; remap ascending so 0..9 -> 1..10.
    std::vector<int> present;
    {
        std::vector<bool> seen(11, false);
        for (int v : out.labels) seen[static_cast<std::size_t>(v)] = true;
        for (int v = 1; v <= 10; ++v) {
            if (seen[static_cast<std::size_t>(v)]) present.push_back(v);
        }
    }
    if (present.size() < 2) throw DataError(labels_path + ": fewer than 2 digit classes present");
    if (static_cast<int>(present.size()) < 10) {
        std::map<int, int> remap;
        for (std::size_t i = 0; i < present.size(); ++i) {
            remap[present[i]] = static_cast<int>(i) + 1;
        }
        for (auto& v : out.labels) v = remap[v];
    }
    out.rebuild_class_index(static_cast<int>(present.size()));
    out.validate();
    return out;
}

LabeledDataset normalize_minmax(const LabeledDataset& data) {
    LabeledDataset out = data;
    const Index n = data.feature_count();
    const Index N = data.sample_count();
    for (Index f = 0; f < n; ++f) {
        const double lo = data.features.row(f).minCoeff();
        const double hi = data.features.row(f).maxCoeff();
        const double range = hi - lo;
        if (range > 0.0) {
            for (Index l = 0; l < N; ++l) {
                out.features(f, l) = (data.features(f, l) - lo) / range;
            }
        } else {
            out.features.row(f).setZero();
        }
    }
    return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double train_fraction,
                                                std::uint64_t seed, bool stratified) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw DataError("train_fraction must lie in (0,1)");
    }
    data.validate();
    const int c = data.class_count();
    Rng rng(mix_seed(seed, 0x5917ULL));

    std::vector<Index> train_idx, test_idx;
    if (stratified) {
        for (int i = 0; i < c; ++i) {
            auto idx = data.class_index[static_cast<std::size_t>(i)];
            rng.shuffle(idx);
            const auto k = static_cast<std::size_t>(
                std::ceil(train_fraction * static_cast<double>(idx.size())));
            for (std::size_t j = 0; j < idx.size(); ++j) {
                (j < k ? train_idx : test_idx).push_back(idx[j]);
            }
        }
    } else {
        std::vector<Index> all(static_cast<std::size_t>(data.sample_count()));
        std::iota(all.begin(), all.end(), Index{0});
        rng.shuffle(all);
        const auto k =
            static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(all.size())));
        for (std::size_t j = 0; j < all.size(); ++j) {
            (j < k ? train_idx : test_idx).push_back(all[j]);
        }
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    auto take = [&](const std::vector<Index>& idx, const char* tag) {
        LabeledDataset part;
        part.name = data.name + "." + tag;
        part.features.resize(data.feature_count(), static_cast<Index>(idx.size()));
        part.labels.resize(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            part.features.col(static_cast<Index>(j)) = data.features.col(idx[j]);
            part.labels[j] = data.labels[static_cast<std::size_t>(idx[j])];
        }
        part.rebuild_class_index(c);
        return part;
    };
    LabeledDataset train = take(train_idx, "train");
    LabeledDataset test = take(test_idx, "test");
    for (int i = 0; i < c; ++i) {
        if (train.class_index[static_cast<std::size_t>(i)].empty()) {
            throw DataError("class " + std::to_string(i + 1) + " has no training samples");
        }
    }
    train.validate();
    test.validate(/*allow_empty_class=*/true);
    return {std::move(train), std::move(test)};
}

namespace {

struct Block {
    int top, left, height, width;
};

// Rectangle of area ~ fraction * H * W: height uniform over the admissible
// range, width rounded so height*width tracks the target.
Block draw_block(Rng& rng, int height, int width, double fraction) {
    const double target = fraction * height * width;
    const int h_lo = std::max(1, static_cast<int>(std::ceil(target / width)));
    const int h_hi = std::max(h_lo, std::min(height, static_cast<int>(std::floor(2.0 * target))));
    const int h = h_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(h_hi - h_lo + 1)));
    const int w = std::clamp(static_cast<int>(std::lround(target / h)), 1, width);
    const int top = static_cast<int>(rng.below(static_cast<std::uint64_t>(height - h + 1)));
    const int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(width - w + 1)));
    return {top, left, h, w};
}

}  // namespace

LabeledDataset inject_noise(const LabeledDataset& data, const NoiseSpec& spec) {
    if (!(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
        throw DataError("noise fraction must lie in (0,1]");
    }
    if (spec.variance < 0.0) throw DataError("noise variance must be nonnegative");
    const Index n = data.feature_count();
    const Index N = data.sample_count();
    LabeledDataset out = data;
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(spec.kind)));

    if (spec.kind == NoiseKind::FeatureGaussian) {
        const auto k = static_cast<std::size_t>(std::floor(spec.fraction * static_cast<double>(n)));
        std::vector<Index> feats(static_cast<std::size_t>(n));
        std::iota(feats.begin(), feats.end(), Index{0});
        rng.shuffle(feats);
        feats.resize(k);
        std::sort(feats.begin(), feats.end());
        const double sd = std::sqrt(spec.variance);
        for (Index f : feats) {
            for (Index l = 0; l < N; ++l) {
                out.features(f, l) += rng.normal(0.0, sd);
            }
        }
        return out;
    }

    if (!spec.image_shape) {
        throw DataError("block noise requires image_shape");
    }
    const int height = spec.image_shape->first;
    const int width = spec.image_shape->second;
    if (static_cast<Index>(height) * width != n) {
        throw DataError("image_shape " + std::to_string(height) + "x" + std::to_string(width) +
                        " does not match feature count " + std::to_string(n));
    }
    const double sd = std::sqrt(spec.variance);
    for (Index l = 0; l < N; ++l) {
        const Block b = draw_block(rng, height, width, spec.fraction);
        for (int r = b.top; r < b.top + b.height; ++r) {
            for (int col = b.left; col < b.left + b.width; ++col) {
                const Index f = static_cast<Index>(r) * width + col;
                if (spec.kind == NoiseKind::ImageBlackBlock) {
                    out.features(f, l) = 0.0;
                } else {
                    out.features(f, l) += rng.normal(0.0, sd);
                }
            }
        }
    }
    return out;
}

LabeledDataset make_synthetic_fig1(std::uint64_t seed, bool with_outliers) {
    using namespace fig1;
    Rng rng(mix_seed(seed, 0xf161ULL));
    Index total = 0;
    for (int m : kClassSizes) total += m;
    const Index N = total + (with_outliers ? 2 : 0);

    LabeledDataset out;
    out.name = with_outliers ? "fig1-outliers" : "fig1";
    out.features.resize(2, N);
    out.labels.resize(static_cast<std::size_t>(N));
    Index col = 0;
    for (int i = 0; i < 4; ++i) {
        const double cx = kCenterX0 + kCenterSpacing * i;
        for (int s = 0; s < kClassSizes[i]; ++s, ++col) {
            out.features(0, col) = cx + kBlobSigma * rng.normal();
            out.features(1, col) = kCenterY + kBlobSigma * rng.normal();
            out.labels[static_cast<std::size_t>(col)] = i + 1;
        }
    }
    if (with_outliers) {
        out.features(0, col) = kCenterX0;
        out.features(1, col) = kOutlierY1;
        out.labels[static_cast<std::size_t>(col)] = 1;
        ++col;
        out.features(0, col) = kCenterX0;
        out.features(1, col) = kOutlierY2;
        out.labels[static_cast<std::size_t>(col)] = 1;
    }
    out.rebuild_class_index(4);
    out.validate();
    return out;
}

LabeledDataset resample_images(const LabeledDataset& data, std::pair<int, int> in_shape,
                               std::pair<int, int> out_shape) {
    const int ih = in_shape.first, iw = in_shape.second;
    const int oh = out_shape.first, ow = out_shape.second;
    if (static_cast<Index>(ih) * iw != data.feature_count()) {
        throw DataError("in_shape does not match feature count");
    }
    LabeledDataset out = data;
    out.features.resize(static_cast<Index>(oh) * ow, data.sample_count());
    const double sy = static_cast<double>(ih) / oh;
    const double sx = static_cast<double>(iw) / ow;
    for (Index l = 0; l < data.sample_count(); ++l) {
        for (int r = 0; r < oh; ++r) {
            // pixel-center alignment
            const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0, ih - 1.0);
            const int y0 = static_cast<int>(fy);
            const int y1 = std::min(y0 + 1, ih - 1);
            const double wy = fy - y0;
            for (int q = 0; q < ow; ++q) {
                const double fx = std::clamp((q + 0.5) * sx - 0.5, 0.0, iw - 1.0);
                const int x0 = static_cast<int>(fx);
                const int x1 = std::min(x0 + 1, iw - 1);
                const double wx = fx - x0;
                auto px = [&](int y, int x) {
                    return data.features(static_cast<Index>(y) * iw + x, l);
                };
                const double v = (1 - wy) * ((1 - wx) * px(y0, x0) + wx * px(y0, x1)) +
                                 wy * ((1 - wx) * px(y1, x0) + wx * px(y1, x1));
                out.features(static_cast<Index>(r) * ow + q, l) = v;
            }
        }
    }
    return out;
}

LabeledDataset subsample_stratified(const LabeledDataset& data, Index per_class,
                                    std::uint64_t seed) {
    data.validate();
    Rng rng(mix_seed(seed, 0x5ab5ULL));
    std::vector<Index> keep;
    for (int i = 0; i < data.class_count(); ++i) {
        auto idx = data.class_index[static_cast<std::size_t>(i)];
        if (static_cast<Index>(idx.size()) < per_class) {
            throw DataError("class " + std::to_string(i + 1) + " has only " +
                            std::to_string(idx.size()) + " samples, need " +
                            std::to_string(per_class));
        }
        rng.shuffle(idx);
        keep.insert(keep.end(), idx.begin(), idx.begin() + per_class);
    }
    std::sort(keep.begin(), keep.end());
    LabeledDataset out;
    out.name = data.name + ".sub";
    out.features.resize(data.feature_count(), static_cast<Index>(keep.size()));
    out.labels.resize(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.features.col(static_cast<Index>(j)) = data.features.col(keep[j]);
        out.labels[j] = data.labels[static_cast<std::size_t>(keep[j])];
    }
    out.rebuild_class_index(data.class_count());
    out.validate();
    return out;
}

}  // namespace blda

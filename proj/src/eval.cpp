#include "blda/eval.hpp"

#include "blda/l1blda.hpp"
#include "blda/scatter.hpp"
#include "blda/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace blda {

namespace {

// Index of the nearest column of proj_train to the query, ties to the lowest index.
Index nearest_column(const Matrix& proj_train, const Vector& query, Index skip = -1) {
    Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index l = 0; l < proj_train.cols(); ++l) {
        if (l == skip) continue;
        const double dist = (proj_train.col(l) - query).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = l;
        }
    }
    return best;
}

}  // namespace

double knn1_accuracy(const LabeledDataset& train, const LabeledDataset& test, const Matrix& w) {
    if (train.sample_count() == 0 || test.sample_count() == 0) {
        throw DataError("1-NN evaluation needs nonempty train and test sets");
    }
    if (train.feature_count() != test.feature_count() ||
        train.feature_count() != w.rows()) {
        throw DataError("1-NN evaluation: dimension mismatch");
    }
    const Matrix pt = w.transpose() * train.features;
    const Matrix pe = w.transpose() * test.features;
    Index correct = 0;
    for (Index j = 0; j < pe.cols(); ++j) {
        const Index hit = nearest_column(pt, pe.col(j));
        if (train.labels[static_cast<std::size_t>(hit)] ==
            test.labels[static_cast<std::size_t>(j)]) {
            ++correct;
        }
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(pe.cols());
}

double knn1_accuracy(const LabeledDataset& train, const LabeledDataset& test,
                     const ProjectionMatrix& w) {
    return knn1_accuracy(train, test, w.w);
}

double knn1_loo_accuracy(const LabeledDataset& data, const Matrix& w) {
    if (data.sample_count() < 2) throw DataError("leave-one-out needs at least 2 samples");
    const Matrix pz = w.transpose() * data.features;
    Index correct = 0;
    for (Index j = 0; j < pz.cols(); ++j) {
        const Index hit = nearest_column(pz, pz.col(j), j);
        if (data.labels[static_cast<std::size_t>(hit)] == data.labels[static_cast<std::size_t>(j)]) {
            ++correct;
        }
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(pz.cols());
}

ProjectionMatrix fit_method(const LabeledDataset& train, Method method, Index d,
                            const AdmmConfig& admm) {
    switch (method) {
        case Method::Pca:
            return solve_pca(train, d);
        case Method::Lda: {
            const ClassStats stats = class_stats(train);
            return solve_lda(scatter_matrices(train, stats), d);
        }
        case Method::L2blda: {
            const ClassStats stats = class_stats(train);
            return solve_l2blda(l2blda_matrix(train, stats, adaptive_weights(stats)), d);
        }
        case Method::L1blda:
            return solve_l1blda(train, d, admm).projection;
    }
    throw DataError("unknown method");
}

ExperimentReport dim_sweep(const LabeledDataset& train, const LabeledDataset& test, Method method,
                           Index d_max, const AdmmConfig& admm) {
    if (d_max < 1 || d_max > train.feature_count()) {
        throw DataError("d_max outside 1..n");
    }
    ExperimentReport rep;
    rep.method = method;
    rep.dataset = train.name;
    rep.seed = admm.seed;
    rep.per_dim.reserve(static_cast<std::size_t>(d_max));

    if (method == Method::L1blda) {
        // Not nested across d: refit per dimension.
        for (Index d = 1; d <= d_max; ++d) {
            const ProjectionMatrix w = fit_method(train, method, d, admm);
            rep.per_dim.emplace_back(d, knn1_accuracy(train, test, w));
        }
    } else {
        const ProjectionMatrix full = fit_method(train, method, d_max, admm);
        for (Index d = 1; d <= d_max; ++d) {
            rep.per_dim.emplace_back(d, knn1_accuracy(train, test, full.w.leftCols(d)));
        }
    }

    rep.best = {rep.per_dim[0].second, rep.per_dim[0].first};
    for (const auto& [d, acc] : rep.per_dim) {
        if (acc > rep.best.first) rep.best = {acc, d};
    }
    return rep;
}

double acute_angle_degrees(const Vector& u, const Vector& v) {
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw DataError("angle of a zero vector");
    const double c = std::min(1.0, std::abs(u.dot(v)) / (nu * nv));
    return std::acos(c) * 180.0 / M_PI;
}

double robustness_angle(const LabeledDataset& clean, const LabeledDataset& dirty, Method method,
                        std::uint64_t seed) {
    if (clean.feature_count() != 2 || dirty.feature_count() != 2) {
        throw DataError("robustness_angle expects 2-D datasets");
    }
    AdmmConfig cfg;
    cfg.seed = seed;
    const ProjectionMatrix wc = fit_method(clean, method, 1, cfg);
    const ProjectionMatrix wd = fit_method(dirty, method, 1, cfg);
    return acute_angle_degrees(wc.w.col(0), wd.w.col(0));
}

}  // namespace blda

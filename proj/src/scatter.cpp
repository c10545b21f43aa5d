#include "blda/scatter.hpp"

#include <cmath>

namespace blda {

ClassStats class_stats(const LabeledDataset& data) {
    data.validate();
    ClassStats st;
    st.n = data.feature_count();
    st.sample_count = data.sample_count();
    st.c = data.class_count();
    st.class_means.setZero(st.n, st.c);
    st.counts.resize(static_cast<std::size_t>(st.c));
    st.priors.resize(st.c);
    for (int i = 0; i < st.c; ++i) {
        const auto& idx = data.class_index[static_cast<std::size_t>(i)];
        Vector sum = Vector::Zero(st.n);
        for (Index l : idx) sum += data.features.col(l);
        st.counts[static_cast<std::size_t>(i)] = static_cast<Index>(idx.size());
        st.class_means.col(i) = sum / static_cast<double>(idx.size());
        st.priors(i) = static_cast<double>(idx.size()) / static_cast<double>(st.sample_count);
    }
    Vector total = Vector::Zero(st.n);
    for (Index l = 0; l < st.sample_count; ++l) total += data.features.col(l);
    st.global_mean = total / static_cast<double>(st.sample_count);
    return st;
}

ScatterSet scatter_matrices(const LabeledDataset& data, const ClassStats& stats) {
    const Index n = stats.n;
    const double N = static_cast<double>(stats.sample_count);
    ScatterSet sc;
    sc.s_b.setZero(n, n);
    sc.s_w.setZero(n, n);
    sc.s_t.setZero(n, n);
    for (int i = 0; i < stats.c; ++i) {
        const Vector d = stats.class_means.col(i) - stats.global_mean;
        sc.s_b += (static_cast<double>(stats.counts[static_cast<std::size_t>(i)]) / N) * d *
                  d.transpose();
    }
    for (int i = 0; i < stats.c; ++i) {
        for (Index l : data.class_index[static_cast<std::size_t>(i)]) {
            const Vector d = data.features.col(l) - stats.class_means.col(i);
            sc.s_w += d * d.transpose() / N;
        }
    }
    for (Index l = 0; l < stats.sample_count; ++l) {
        const Vector d = data.features.col(l) - stats.global_mean;
        sc.s_t += d * d.transpose() / N;
    }
    return sc;
}

AdaptiveWeights adaptive_weights(const ClassStats& stats) {
    AdaptiveWeights w;
    const double root_n = std::sqrt(static_cast<double>(stats.n));
    for (int i = 0; i < stats.c; ++i) {
        for (int j = i + 1; j < stats.c; ++j) {
            const Vector d = stats.class_means.col(i) - stats.class_means.col(j);
            const double pw = std::sqrt(stats.priors(i) * stats.priors(j));
            w.delta += 0.25 * pw * d.squaredNorm();
            w.omega += 0.25 * root_n * pw * d.lpNorm<1>();
        }
    }
    return w;
}

PairContext pair_context(const ClassStats& stats) {
    PairContext ctx;
    const Index P = static_cast<Index>(stats.c) * (stats.c - 1) / 2;
    ctx.mean_diffs.resize(stats.n, P);
    ctx.coefs.resize(P);
    Index p = 0;
    for (int i = 0; i < stats.c; ++i) {
        for (int j = i + 1; j < stats.c; ++j, ++p) {
            ctx.mean_diffs.col(p) = stats.class_means.col(i) - stats.class_means.col(j);
            ctx.coefs(p) =
                std::sqrt(static_cast<double>(stats.counts[static_cast<std::size_t>(i)]) *
                          static_cast<double>(stats.counts[static_cast<std::size_t>(j)])) /
                static_cast<double>(stats.sample_count);
            ctx.pairs.emplace_back(i, j);
        }
    }
    return ctx;
}

Matrix centered_deviations(const LabeledDataset& data, const ClassStats& stats) {
    Matrix dev(stats.n, stats.sample_count);
    for (Index l = 0; l < stats.sample_count; ++l) {
        dev.col(l) =
            data.features.col(l) - stats.class_means.col(data.labels[static_cast<std::size_t>(l)] - 1);
    }
    return dev;
}

Matrix l2blda_matrix(const LabeledDataset& data, const ClassStats& stats,
                     const AdaptiveWeights& weights) {
    const PairContext ctx = pair_context(stats);
    Matrix s = Matrix::Zero(stats.n, stats.n);
    for (Index p = 0; p < ctx.pair_count(); ++p) {
        const Vector& d = ctx.mean_diffs.col(p);
        s -= ctx.coefs(p) * d * d.transpose();
    }
    // within term carries no 1/N
    const Matrix dev = centered_deviations(data, stats);
    s += weights.delta * (dev * dev.transpose());
    return s;
}

Matrix admm_g_matrix(const LabeledDataset& data, const ClassStats& stats) {
    const PairContext ctx = pair_context(stats);
    const Matrix dev = centered_deviations(data, stats);
    Matrix g = ctx.mean_diffs * ctx.coefs.array().square().matrix().asDiagonal() *
               ctx.mean_diffs.transpose();
    g += dev * dev.transpose();
    g += Matrix::Identity(stats.n, stats.n);
    return g;
}

Matrix admm_a_matrix(const LabeledDataset& data, const ClassStats& stats, const AdmmState& state) {
    const PairContext ctx = pair_context(stats);
    if (state.b_blocks.cols() != ctx.pair_count() ||
        state.z_blocks.cols() != stats.sample_count || state.w.rows() != stats.n) {
        throw DataError("ADMM state dimensions do not match the dataset");
    }
    const Matrix dev = centered_deviations(data, stats);
    Matrix a = ctx.mean_diffs * ctx.coefs.asDiagonal() * (state.b_blocks - state.alpha).transpose();
    a += dev * (state.z_blocks - state.beta).transpose();
    a += state.dmat + state.gamma;
    return a;
}

std::pair<Matrix, Matrix> admm_w_matrices(const LabeledDataset& data, const ClassStats& stats,
                                          const AdmmState& state) {
    return {admm_g_matrix(data, stats), admm_a_matrix(data, stats, state)};
}

}  // namespace blda

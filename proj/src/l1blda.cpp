#include "blda/l1blda.hpp"

#include "blda/io.hpp"
#include "blda/procrustes.hpp"
#include "blda/rng.hpp"
#include "blda/spectral.hpp"

#include <cmath>
#include <fstream>
#include <utility>

namespace blda {

namespace {

// d x P matrix of projected-and-weighted pair differences coef_p * W'(m_i - m_j).
Matrix projected_pairs(const Matrix& w, const PairContext& ctx) {
    return (w.transpose() * ctx.mean_diffs) * ctx.coefs.asDiagonal();
}

Matrix update_b_impl(const Matrix& w, const PairContext& ctx, const Matrix& alpha, double rho) {
    Matrix v = projected_pairs(w, ctx) + alpha;
    const double step = 1.0 / rho;
    return v.unaryExpr([step](double x) { return x >= 0.0 ? x + step : x - step; });
}

Matrix update_z_impl(const Matrix& w, const Matrix& dev, const Matrix& beta, double omega,
                     double rho) {
    Matrix u = w.transpose() * dev + beta;
    const double kappa = omega / rho;
    return u.unaryExpr([kappa](double x) { return soft_threshold(x, kappa); });
}

}  // namespace

L1bldaObjective objective_l1blda(const Matrix& w, const LabeledDataset& data,
                                 const ClassStats& stats, double omega) {
    const PairContext ctx = pair_context(stats);
    L1bldaObjective obj;
    obj.between_term = projected_pairs(w, ctx).cwiseAbs().sum();
    obj.within_term = (w.transpose() * centered_deviations(data, stats)).cwiseAbs().sum();
    obj.total = -obj.between_term + omega * obj.within_term;
    return obj;
}

Matrix update_b(const Matrix& w, const ClassStats& stats, const Matrix& alpha, double rho) {
    return update_b_impl(w, pair_context(stats), alpha, rho);
}

Matrix update_z(const Matrix& w, const LabeledDataset& data, const ClassStats& stats,
                const Matrix& beta, double omega, double rho) {
    return update_z_impl(w, centered_deviations(data, stats), beta, omega, rho);
}

Matrix update_d(const Matrix& w, const Matrix& gamma) { return w - gamma; }

void update_duals(AdmmState& state, const LabeledDataset& data, const ClassStats& stats) {
    const PairContext ctx = pair_context(stats);
    state.alpha += projected_pairs(state.w, ctx) - state.b_blocks;
    state.beta += state.w.transpose() * centered_deviations(data, stats) - state.z_blocks;
    state.gamma += state.dmat - state.w;
}

std::pair<double, double> residuals(const AdmmState& state, const LabeledDataset& data,
                                    const ClassStats& stats, double rho) {
    const PairContext ctx = pair_context(stats);
    const Matrix dev = centered_deviations(data, stats);

    double r = (state.w - state.dmat).norm();
    const Matrix pair_res = projected_pairs(state.w, ctx) - state.b_blocks;
    for (Index p = 0; p < pair_res.cols(); ++p) {
        r = std::max(r, pair_res.col(p).norm());
    }
    const Matrix sample_res = state.w.transpose() * dev - state.z_blocks;
    for (Index l = 0; l < sample_res.cols(); ++l) {
        r = std::max(r, sample_res.col(l).norm());
    }

    // Rank-one blocks rho*(m_i - m_j)(dB)' have spectral norm ||m|| * ||dB||.
    double s = rho * (state.dmat - state.d_prev).norm();
    for (Index p = 0; p < ctx.pair_count(); ++p) {
        s = std::max(s, rho * ctx.mean_diffs.col(p).norm() *
                            (state.b_blocks.col(p) - state.b_prev.col(p)).norm());
    }
    for (Index l = 0; l < dev.cols(); ++l) {
        s = std::max(s, rho * dev.col(l).norm() *
                            (state.z_blocks.col(l) - state.z_prev.col(l)).norm());
    }
    return {r, s};
}

L1bldaResult solve_l1blda(const LabeledDataset& data, Index d, const AdmmConfig& cfg) {
    data.validate();
    const Index n = data.feature_count();
    if (d < 1 || d > n) {
        throw DataError("target dimension " + std::to_string(d) + " outside 1.." +
                        std::to_string(n));
    }
    const ClassStats stats = class_stats(data);
    const AdaptiveWeights weights = adaptive_weights(stats);
    const PairContext ctx = pair_context(stats);
    const Matrix dev = centered_deviations(data, stats);
    const Index P = ctx.pair_count();
    const Index N = stats.sample_count;

    Matrix g = ctx.mean_diffs * ctx.coefs.array().square().matrix().asDiagonal() *
                   ctx.mean_diffs.transpose() +
               dev * dev.transpose() + Matrix::Identity(n, n);
    const double g_dom = dominant_eigenvalue(g);

    // Start from the L2 eigenbasis rotated by a seeded orthogonal factor: the
    // quadratic criterion lands in the right basin and the rotation keeps
    // distinct seeds giving distinct trajectories.
    AdmmState st;
    {
        const Matrix s2 = l2blda_matrix(data, stats, weights);
        st.w = solve_l2blda(s2, d).w * orthonormal_init(d, d, cfg.seed);
    }
    st.dmat = st.w;
    st.b_blocks.setZero(d, P);
    st.z_blocks.setZero(d, N);
    st.alpha.setZero(d, P);
    st.beta.setZero(d, N);
    st.gamma.setZero(n, d);
    st.b_prev = st.b_blocks;
    st.z_prev = st.z_blocks;
    st.d_prev = st.dmat;

    L1bldaResult res;
    res.omega = weights.omega;
    res.trace.reserve(static_cast<std::size_t>(cfg.it_max));

    WSubproblem sub;
    sub.g = std::move(g);
    sub.d = d;
    sub.g_dominant = g_dom;

    for (Index k = 0; k < cfg.it_max; ++k) {
        // (a) W-step. The Lagrangian's linear term is -2 tr(A'W) for the A
        // assembled from the blocks, so the subproblem receives -A.
        Matrix a = ctx.mean_diffs * ctx.coefs.asDiagonal() *
                       (st.b_blocks - st.alpha).transpose() +
                   dev * (st.z_blocks - st.beta).transpose() + (st.dmat + st.gamma);
        sub.a = -a;
        if (d == n) {
            st.w = solve_balanced(sub);
        } else {
            const std::uint64_t inner_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(k) + 1);
            st.w = solve_unbalanced(sub, cfg.inner_tol, cfg.inner_max, inner_seed,
                                    cfg.warm_start_inner ? &st.w : nullptr)
                       .w;
        }

        st.b_prev = st.b_blocks;
        st.z_prev = st.z_blocks;
        st.d_prev = st.dmat;

        // (b)-(d) closed-form block updates, (e)-(g) dual ascent.
        st.b_blocks = update_b_impl(st.w, ctx, st.alpha, cfg.rho);
        st.z_blocks = update_z_impl(st.w, dev, st.beta, weights.omega, cfg.rho);
        st.dmat = update_d(st.w, st.gamma);
        const Matrix pair_res = projected_pairs(st.w, ctx) - st.b_blocks;
        const Matrix sample_res = st.w.transpose() * dev - st.z_blocks;
        st.alpha += pair_res;
        st.beta += sample_res;
        st.gamma += st.dmat - st.w;

        double r = (st.w - st.dmat).norm();
        for (Index p = 0; p < P; ++p) r = std::max(r, pair_res.col(p).norm());
        for (Index l = 0; l < N; ++l) r = std::max(r, sample_res.col(l).norm());
        double s = cfg.rho * (st.dmat - st.d_prev).norm();
        for (Index p = 0; p < P; ++p) {
            s = std::max(s, cfg.rho * ctx.mean_diffs.col(p).norm() *
                                (st.b_blocks.col(p) - st.b_prev.col(p)).norm());
        }
        for (Index l = 0; l < N; ++l) {
            s = std::max(s, cfg.rho * dev.col(l).norm() *
                                (st.z_blocks.col(l) - st.z_prev.col(l)).norm());
        }

        const L1bldaObjective obj = objective_l1blda(st.w, data, stats, weights.omega);
        const double ortho =
            (st.w.transpose() * st.w - Matrix::Identity(d, d)).norm();
        if (!std::isfinite(obj.total) || !std::isfinite(r) || !std::isfinite(s)) {
            throw NumericalError("ADMM diverged at iteration " + std::to_string(k));
        }
        st.iter = k + 1;
        st.r_norm = r;
        st.s_norm = s;
        res.trace.push_back({k, obj.total, r, s, ortho});
        if (r <= cfg.eps_pri && s <= cfg.eps_dual) {
            res.converged = true;
            break;
        }
    }

    res.projection.w = st.w;
    res.projection.method = Method::L1blda;
    res.projection.objective = objective_l1blda(st.w, data, stats, weights.omega).total;
    res.projection.seed = cfg.seed;
    return res;
}

void write_trace_csv(const std::string& path, const std::vector<IterationRecord>& trace) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << "iter,objective,r_norm,s_norm\n";
    for (const auto& rec : trace) {
        out << rec.iter << ',' << format_double(rec.objective) << ',' << format_double(rec.r_norm)
            << ',' << format_double(rec.s_norm) << '\n';
    }
}

}  // namespace blda

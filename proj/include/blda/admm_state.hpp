#pragma once

#include "blda/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace blda {

/// Controls for the scaled ADMM solver and its inner Procrustes subsolver.
struct AdmmConfig {
    double rho = 200.0;
    double eps_pri = 1e-4;
    double eps_dual = 1e-4;
    Index it_max = 500;
    std::uint64_t seed = 1;
    double inner_tol = 1e-8;
    Index inner_max = 200;
    bool warm_start_inner = true;
};

/// Full iterate of the ADMM. Pair blocks are stored as columns of d x P
/// matrices in lexicographic (i<j) order; sample blocks as columns of d x N
/// matrices in dataset column order. Previous-iteration copies of the primal
/// blocks are retained for the dual residual.
struct AdmmState {
    Matrix w;             // n x d, orthonormal columns
    Matrix dmat;          // n x d
    Matrix b_blocks;      // d x P
    Matrix z_blocks;      // d x N
    Matrix alpha;         // d x P scaled duals
    Matrix beta;          // d x N scaled duals
    Matrix gamma;         // n x d scaled dual
    Matrix b_prev, z_prev, d_prev;
    Index iter = 0;
    double r_norm = std::numeric_limits<double>::infinity();
    double s_norm = std::numeric_limits<double>::infinity();
};

/// Value of the L1 criterion at an orthonormal W: total = -between + omega*within.
struct L1bldaObjective {
    double between_term = 0.0;
    double within_term = 0.0;
    double total = 0.0;
};

struct IterationRecord {
    Index iter;
    double objective;
    double r_norm;
    double s_norm;
    double ortho_error;
};

}  // namespace blda

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace pairsim {

struct LanczosOptions {
    int max_krylov = 300;
    int max_restarts = 8;
    /// Relative eigenvalue change between successive Ritz values.
    double eigenvalue_change_tol = 1e-13;
    /// Residual |Hx - Ex| bound, relative to max(|E|, scale).
    double residual_tol = 1e-10;
    double scale = 1.0;
};

struct LanczosResult {
    double eigenvalue = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
    int iterations = 0;
    int restarts = 0;
};

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Lowest eigenpair of a real symmetric operator by Lanczos with full
/// reorthogonalization, restarted from the current Ritz vector when the
/// Krylov budget runs out. Throws SolverError if the residual bound is
/// not met after max_restarts.
LanczosResult lanczos_lowest(const LinearOperator& op, Eigen::VectorXd start,
                             const LanczosOptions& opts = {});

} // namespace pairsim

#pragma once

#include <memory>

#include <Eigen/Dense>

#include "pairsim/exact_solver.hpp"
#include "pairsim/pairing_model.hpp"

namespace pairsim {

/// -psi(1/2), the constant in the large-omega critical-coupling estimate.
inline constexpr double kCriticalCouplingGamma = 1.9635;

struct CriticalCoupling {
    double exact = 0.0;    ///< 2 / sum_k 1/|e_k - mu|
    double estimate = 0.0; ///< eps / (ln(omega/2) + gamma)
};

/// mu = mean of the level energies (half filling, symmetric spectrum).
double chemical_potential(const ModelParams& params);

/// Throws DegenerateFermiLevelError if some |e_k - mu| < 1e-14.
CriticalCoupling critical_coupling(const ModelParams& params);

struct BcsSolution {
    double coupling = 0.0;
    double delta = 0.0;
    double mu = 0.0;
    Eigen::VectorXd eps_tilde; ///< e_k - mu
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    Eigen::VectorXd lambda;    ///< sqrt(eps_tilde^2 + delta^2)
    Eigen::VectorXd f;         ///< v^2

    int omega() const { return static_cast<int>(f.size()); }
};

/// BCS amplitudes for a prescribed gap (mu fixed at the spectrum mean).
BcsSolution bcs_at_gap(const ModelParams& params, double delta);

/// Gap equation: delta = 0 for G <= G_c, otherwise the root of
/// sum_k 1/(2 lambda_k) = 1/G found by bisection on (0, G omega].
BcsSolution solve_gap(const ModelParams& params);

/// sum_k 1/(2 lambda_k) - 1/G.
double gap_residual(const BcsSolution& sol);

OccupationProfile bcs_occupations(const BcsSolution& sol);

/// <BCS|H|BCS>.
double bcs_energy(const ModelParams& params, const BcsSolution& sol);

/// Generalized one-body density [[rho, kappa], [-kappa*, 1 - rho*]] over the
/// 2 omega modes ordered (1, 1bar, 2, 2bar, ...).
Eigen::MatrixXd qsp_matrix(const BcsSolution& sol);

struct BcsEntropies {
    double e_one_body = 0.0;
    double e_schmidt = 0.0;
    double number_fluctuation = 0.0; ///< <N^2> - <N>^2 = 4 sum u^2 v^2
    double e_qsp = 0.0;              ///< -tr rho_qsp log2 rho_qsp
    double qsp_max_deviation = 0.0;  ///< max distance of a rho_qsp eigenvalue from {0, 1}
};

BcsEntropies bcs_entropies(const BcsSolution& sol);

/// Factorized (Wick) four-mode block; pair_transfer = u_k v_k u_k' v_k'.
FourModeEvenBlock bcs_four_mode(const BcsSolution& sol, int k, int kp);

/// Number-projected BCS state, alpha_nu ~ prod_k v_k^n u_k^(1-n), evaluated
/// in log space. delta = 0 gives the Fermi sea.
PairStateVector pbcs_state(const ModelParams& params, double delta,
                           std::shared_ptr<const PairBasis> basis = nullptr);

struct PbcsSolution {
    double delta_var = 0.0;
    PairStateVector state;
    double energy = 0.0;
    bool boundary = false; ///< optimum sits on the search boundary
};

/// Projection before variation: minimizes the projected energy over delta in
/// [0, 3 G omega] (16-point log bracket scan, then golden section).
PbcsSolution pbcs_optimize(const ModelParams& params,
                           std::shared_ptr<const PairBasis> basis = nullptr);

} // namespace pairsim

#pragma once

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "pairsim/pairing_model.hpp"

namespace pairsim {

/// Real amplitudes over a pair basis. Ground states carry their energy.
struct PairStateVector {
    std::shared_ptr<const PairBasis> basis;
    Eigen::VectorXd amps;
    std::optional<double> energy;
    std::optional<double> residual;

    const PairBasis& space() const { return *basis; }
    Eigen::Index dim() const { return amps.size(); }
};

/// Normalizes `amps` and wraps them; throws DimensionError on size mismatch.
PairStateVector make_state(std::shared_ptr<const PairBasis> basis, Eigen::VectorXd amps);

/// Occupation f_k of mode k (and of k-bar), stored at index k-1.
struct OccupationProfile {
    Eigen::VectorXd f;

    int omega() const { return static_cast<int>(f.size()); }
    double operator()(int k) const;
};

/// Even-parity 4x4 block of the reduced state of modes (k, k-bar, k', k'-bar).
///
/// Field names follow the pair occupancy of (k, k'): `n` occupied, `tilde`
/// empty. `pair_transfer` is <c+_k c+_kbar c_k'bar c_k'>.
struct FourModeEvenBlock {
    double nn = 0.0;
    double n_tilde = 0.0;
    double tilde_n = 0.0;
    double tilde_tilde = 0.0;
    double pair_transfer = 0.0;
    double fk = 0.0;
    double fkp = 0.0;

    /// Matrix in the basis {both pairs full, k only, k' only, both empty}.
    Eigen::Matrix4d matrix() const;
    /// Throws ValidationError when probabilities, marginals or PSD fail at `tol`.
    void validate(double tol = 1e-10) const;
};

struct SolverOptions {
    std::size_t dense_limit = 2000;
    int max_krylov = 300;
    int max_restarts = 8;
    double residual_tol = 1e-10;
    /// Lanczos convergence target; tighter than residual_tol so that the tiny
    /// amplitudes of weak coupling keep their sign. Falls back to residual_tol.
    double lanczos_target = 1e-13;
    double eigenvalue_change_tol = 1e-13;
    std::size_t basis_cap = kDefaultBasisCap;
};

/// Lowest eigenvector of H in the pair basis, normalized, gauge-fixed so that
/// sum(amps) > 0; every amplitude is then >= -1e-12.
PairStateVector ground_state(const ModelParams& params, const SolverOptions& opts = {});
PairStateVector ground_state(const ModelParams& params, std::shared_ptr<const PairBasis> basis,
                             const SolverOptions& opts = {});

/// The unperturbed Slater determinant (lowest `pairs` levels filled).
PairStateVector fermi_sea(const ModelParams& params);

/// <psi|H|psi> / <psi|psi>.
double energy_expectation(const ModelParams& params, const PairStateVector& state);

/// |H x - E x| with E the Rayleigh quotient.
double eigen_residual(const ModelParams& params, const PairStateVector& state);

OccupationProfile occupations(const PairStateVector& state);

/// 2 sum_k h(f_k): the one-body entanglement entropy of a pair state.
double one_body_entropy(const OccupationProfile& profile);

/// 4 sum over the 2*omega modes of f(1 - f).
double quadratic_entropy(const OccupationProfile& profile);

/// Entropy of the k / k-bar bipartition: -sum alpha^2 log2 alpha^2.
double schmidt_entropy(const PairStateVector& state);

/// diag(f_k, 1 - f_k): the state of mode k, of k-bar, and the even block of (k, k-bar).
Eigen::Matrix2d pair_mode_state(const OccupationProfile& profile, int k);

FourModeEvenBlock four_mode_block(const PairStateVector& state, int k, int kp);

} // namespace pairsim

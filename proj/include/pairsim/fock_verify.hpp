#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pairsim/exact_solver.hpp"
#include "pairsim/pairing_model.hpp"

namespace pairsim {

// Fock space of 2 omega modes ordered (1, 1bar, 2, 2bar, ...): mode
// m = 2 (k - 1) + bar is bit m of the occupation index, and the product
// state with occupied modes m1 < m2 < ... is c+_m1 c+_m2 ... |0>.

inline constexpr int kMaxEmbedOmega = 6;
inline constexpr int kMaxMinimumOmega = 4;

inline int fock_mode(int k, bool bar) { return 2 * (k - 1) + (bar ? 1 : 0); }

struct FockState {
    int omega = 0;
    Eigen::VectorXd amps;

    int modes() const { return 2 * omega; }
    Eigen::Index dim() const { return amps.size(); }
};

struct FockDensity {
    int omega = 0;
    Eigen::MatrixXd rho;
};

/// Pair configuration nu -> product state with k and kbar occupied for every n_k = 1.
FockState embed(const PairStateVector& state);

FockDensity density(const FockState& psi);

/// lambda_i = ln(1/f_i - 1) for each of the 2 omega modes (f_kbar = f_k).
/// Throws DegenerateGaussianError if some f_k is 0 or 1.
Eigen::VectorXd gaussian_lambdas(const OccupationProfile& profile);

/// rho' = Z^-1 exp(-sum_i lambda_i n_i), one lambda per mode.
FockDensity gaussian_from_lambdas(int omega, const Eigen::VectorXd& lambda);

/// The number-conserving gaussian reproducing the one-body density of `profile`.
FockDensity gaussian_from_occupations(const OccupationProfile& profile);

struct RelativeEntropy {
    double value = 0.0;
    bool infinite = false; ///< support(rho) not contained in support(rho')
};

/// S(rho || rho') = Tr rho log2 rho - Tr rho log2 rho'.
RelativeEntropy relative_entropy(const FockDensity& rho, const FockDensity& rhop);

struct MinimumReport {
    double relative_entropy = 0.0; ///< at the matched gaussian
    double one_body_entropy = 0.0;
    double identity_error = 0.0;   ///< |relative_entropy - one_body_entropy|
    int perturbations = 0;
    int increases = 0;             ///< perturbations that strictly raised S(rho || rho')
    double min_increase = 0.0;
    double max_violation = 0.0;    ///< max(0, S_matched - S_perturbed)

    bool passed(double tol = 1e-8) const
    {
        return identity_error <= tol && increases == perturbations;
    }
};

/// Checks the matched gaussian is the closest number-conserving gaussian:
/// each perturbation moves one random lambda_i by +-0.05.
MinimumReport verify_minimum(const PairStateVector& state, int perturbations,
                             std::uint64_t seed = 1, double delta = 0.05);

/// Reduced density of the modes in `keep`; bit i of the reduced index is keep[i].
/// Modes are first reordered to (keep..., rest...) with the fermionic sign.
Eigen::MatrixXd partial_trace(const FockState& psi, const std::vector<int>& keep);

/// 16 x 16 reduced state of (k, kbar, k', k'bar).
Eigen::MatrixXd partial_trace_four_modes(const FockState& psi, int k, int kp);

/// Even pair sector {0000, 0011, 1100, 1111} of a four-mode reduced state.
FourModeEvenBlock extract_even_block(const Eigen::MatrixXd& rho16);

/// Largest |rho16(i, j)| with i or j outside the even pair sector.
double max_outside_pair_sector(const Eigen::MatrixXd& rho16);

/// Largest |rho16(i, j)| with i or j of odd particle number.
double max_odd_parity(const Eigen::MatrixXd& rho16);

/// Dense c+_m on `modes` fermion modes, Jordan-Wigner sign (-1)^(occupied modes below m).
Eigen::MatrixXd creation_operator(int modes, int m);

/// The pairing Hamiltonian assembled from fermion operators in the full Fock space (omega <= 4).
Eigen::MatrixXd fock_hamiltonian(const ModelParams& params);

/// Isometry from the pair basis into the Fock space (columns are embedded configurations).
Eigen::MatrixXd embedding_matrix(const PairBasis& basis);

} // namespace pairsim

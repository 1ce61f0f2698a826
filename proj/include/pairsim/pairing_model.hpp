#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pairsim {

using Mask = std::uint64_t;

/// Constant-G pairing Hamiltonian on omega doubly degenerate levels (k, k-bar).
///
/// Levels are addressed with 1-based indices k = 1..omega throughout the
/// public API. Unless `levels` is given, the single-particle energies are
/// equally spaced, e_k = k * eps.
struct ModelParams {
    int omega = 16;
    int pairs = 8;
    double eps = 1.0;
    double coupling = 0.0;
    std::vector<double> levels;

    static ModelParams half_filled(int omega, double coupling, double eps = 1.0);

    /// Throws ArgumentError when an invariant is broken.
    void validate() const;

    double level_energy(int k) const;
    std::vector<double> level_energies() const;
    int particles() const { return 2 * pairs; }
    ModelParams with_coupling(double g) const;
};

inline constexpr std::size_t kDefaultBasisCap = 10'000'000;

/// Binomial coefficient; throws CapacityError if it does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

/// Seniority-zero basis: omega-bit masks with `pairs` bits set, sorted as
/// integers. Bit k-1 set means the pair (k, k-bar) is occupied.
class PairBasis {
public:
    PairBasis(int omega, int pairs, std::size_t cap = kDefaultBasisCap);

    int omega() const { return omega_; }
    int pairs() const { return pairs_; }
    std::size_t dim() const { return configs_.size(); }
    std::span<const Mask> configs() const { return configs_; }
    Mask config(std::size_t i) const { return configs_[i]; }

    /// Index of `mask` in configs(); throws ArgumentError if absent.
    std::size_t rank(Mask mask) const;
    /// Same as rank() without validating the mask.
    std::size_t rank_unchecked(Mask mask) const noexcept;

    /// Index of the lowest-energy Slater determinant (levels 1..pairs filled).
    std::size_t fermi_sea_index() const { return 0; }

    static bool occupied(Mask mask, int k) noexcept { return (mask >> (k - 1)) & 1u; }

private:
    int omega_;
    int pairs_;
    std::vector<Mask> configs_;
    // binom_[n * (pairs + 1) + j] = C(n, j) for the colex rank
    std::vector<std::size_t> binom_;
};

PairBasis enumerate_basis(const ModelParams& params, std::size_t cap = kDefaultBasisCap);

/// <nu|H|nu> = 2 sum_{k in nu} e_k - G * pairs (the k = k' pairing term included).
double diagonal_energy(const ModelParams& params, Mask mask);

/// y = H x in the pair basis, matrix-free.
Eigen::VectorXd apply_hamiltonian(const ModelParams& params, const PairBasis& basis,
                                  const Eigen::VectorXd& x);

/// Dense H for small bases (dense eigensolver path).
Eigen::MatrixXd dense_hamiltonian(const ModelParams& params, const PairBasis& basis);

} // namespace pairsim

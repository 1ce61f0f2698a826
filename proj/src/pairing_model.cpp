#include "pairsim/pairing_model.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pairsim/errors.hpp"

namespace pairsim {

ModelParams ModelParams::half_filled(int omega, double coupling, double eps)
{
    ModelParams p;
    p.omega = omega;
    p.pairs = omega / 2;
    p.eps = eps;
    p.coupling = coupling;
    return p;
}

void ModelParams::validate() const
{
    if (omega <= 0 || omega % 2 != 0)
        throw ArgumentError("omega must be a positive even integer, got " + std::to_string(omega));
    if (omega > 62)
        throw CapacityError("omega > 62 does not fit the 64-bit pair masks");
    if (pairs < 1 || pairs > omega)
        throw ArgumentError("pairs must lie in [1, omega], got " + std::to_string(pairs));
    if (!(eps > 0.0))
        throw ArgumentError("level spacing eps must be positive");
    if (!(coupling >= 0.0))
        throw ArgumentError("coupling G must be nonnegative");
    if (!levels.empty()) {
        if (static_cast<int>(levels.size()) != omega)
            throw ArgumentError("explicit level list must have omega entries");
        for (std::size_t i = 1; i < levels.size(); ++i)
            if (levels[i] < levels[i - 1])
                throw ArgumentError("explicit level list must be nondecreasing");
    }
}

double ModelParams::level_energy(int k) const
{
    if (k < 1 || k > omega)
        throw ArgumentError("level index " + std::to_string(k) + " out of range");
    return levels.empty() ? k * eps : levels[k - 1];
}

std::vector<double> ModelParams::level_energies() const
{
    std::vector<double> e(omega);
    for (int k = 1; k <= omega; ++k)
        e[k - 1] = level_energy(k);
    return e;
}

ModelParams ModelParams::with_coupling(double g) const
{
    ModelParams p = *this;
    p.coupling = g;
    return p;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (c > static_cast<unsigned __int128>(UINT64_MAX))
            throw CapacityError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

PairBasis::PairBasis(int omega, int pairs, std::size_t cap) : omega_(omega), pairs_(pairs)
{
    if (omega <= 0 || omega > 62 || pairs < 1 || pairs > omega)
        throw ArgumentError("invalid (omega, pairs) for a pair basis");
    const std::uint64_t d = binomial(omega, pairs);
    if (d > cap)
        throw CapacityError("pair basis dimension " + std::to_string(d) + " exceeds cap " +
                            std::to_string(cap));

    configs_.reserve(d);
    // Gosper's hack walks fixed-popcount masks in increasing order.
    const Mask limit = Mask{1} << omega;
    Mask m = (Mask{1} << pairs) - 1;
    while (m < limit) {
        configs_.push_back(m);
        const Mask c = m & (~m + 1);
        const Mask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }

    binom_.assign(static_cast<std::size_t>(omega + 1) * (pairs + 1), 0);
    for (int n = 0; n <= omega; ++n)
        for (int j = 0; j <= pairs; ++j)
            binom_[n * (pairs + 1) + j] = binomial(n, j);
}

std::size_t PairBasis::rank_unchecked(Mask mask) const noexcept
{
    std::size_t r = 0;
    int j = 1;
    while (mask) {
        const int b = std::countr_zero(mask);
        r += binom_[b * (pairs_ + 1) + j];
        mask &= mask - 1;
        ++j;
    }
    return r;
}

std::size_t PairBasis::rank(Mask mask) const
{
    if (std::popcount(mask) != pairs_ || (mask >> omega_) != 0)
        throw ArgumentError("mask is not a configuration of this pair basis");
    return rank_unchecked(mask);
}

PairBasis enumerate_basis(const ModelParams& params, std::size_t cap)
{
    params.validate();
    return PairBasis(params.omega, params.pairs, cap);
}

double diagonal_energy(const ModelParams& params, Mask mask)
{
    double e = 0.0;
    for (int k = 1; k <= params.omega; ++k)
        if (PairBasis::occupied(mask, k))
            e += 2.0 * params.level_energy(k);
    return e - params.coupling * std::popcount(mask);
}

namespace {

// Level energies doubled, cached once per call.
std::vector<double> doubled_levels(const ModelParams& params)
{
    auto e = params.level_energies();
    for (auto& x : e)
        x *= 2.0;
    return e;
}

double diagonal_from(const std::vector<double>& twice_e, double g, Mask mask)
{
    double d = 0.0;
    for (Mask m = mask; m; m &= m - 1)
        d += twice_e[std::countr_zero(m)];
    return d - g * std::popcount(mask);
}

} // namespace

Eigen::VectorXd apply_hamiltonian(const ModelParams& params, const PairBasis& basis,
                                  const Eigen::VectorXd& x)
{
    if (static_cast<std::size_t>(x.size()) != basis.dim())
        throw DimensionError("vector length " + std::to_string(x.size()) +
                             " does not match basis dimension " + std::to_string(basis.dim()));

    const auto twice_e = doubled_levels(params);
    const double g = params.coupling;
    const Mask full = (Mask{1} << basis.omega()) - 1;
    Eigen::VectorXd y(x.size());

    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Mask m = basis.config(i);
        double acc = diagonal_from(twice_e, g, m) * x[i];
        if (g != 0.0) {
            // -G for every single-pair move k (occupied) -> k' (empty).
            double off = 0.0;
            for (Mask occ = m; occ; occ &= occ - 1) {
                const Mask from = occ & (~occ + 1);
                for (Mask emp = ~m & full; emp; emp &= emp - 1) {
                    const Mask to = emp & (~emp + 1);
                    off += x[basis.rank_unchecked(m ^ from ^ to)];
                }
            }
            acc -= g * off;
        }
        y[i] = acc;
    }
    return y;
}

Eigen::MatrixXd dense_hamiltonian(const ModelParams& params, const PairBasis& basis)
{
    const auto n = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    const auto twice_e = doubled_levels(params);
    const double g = params.coupling;
    const Mask full = (Mask{1} << basis.omega()) - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Mask m = basis.config(i);
        h(i, i) = diagonal_from(twice_e, g, m);
        for (Mask occ = m; occ; occ &= occ - 1) {
            const Mask from = occ & (~occ + 1);
            for (Mask emp = ~m & full; emp; emp &= emp - 1) {
                const Mask to = emp & (~emp + 1);
                h(static_cast<Eigen::Index>(basis.rank_unchecked(m ^ from ^ to)), i) = -g;
            }
        }
    }
    return h;
}

} // namespace pairsim

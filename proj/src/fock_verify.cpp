#include "pairsim/fock_verify.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pairsim/errors.hpp"
#include "pairsim/matrix_functions.hpp"

namespace pairsim {

namespace {

std::uint64_t pair_to_fock(Mask m)
{
    std::uint64_t out = 0;
    for (; m; m &= m - 1)
        out |= std::uint64_t{3} << (2 * std::countr_zero(m));
    return out;
}

void check_embed_size(int omega, int limit)
{
    if (omega > limit)
        throw CapacityError("Fock space for omega = " + std::to_string(omega) +
                            " exceeds the limit omega <= " + std::to_string(limit));
}

} // namespace

FockState embed(const PairStateVector& state)
{
    const PairBasis& b = state.space();
    check_embed_size(b.omega(), kMaxEmbedOmega);
    FockState out;
    out.omega = b.omega();
    out.amps = Eigen::VectorXd::Zero(Eigen::Index{1} << out.modes());
    for (std::size_t i = 0; i < b.dim(); ++i)
        out.amps[static_cast<Eigen::Index>(pair_to_fock(b.config(i)))] =
            state.amps[static_cast<Eigen::Index>(i)];
    return out;
}

FockDensity density(const FockState& psi)
{
    return FockDensity{psi.omega, psi.amps * psi.amps.transpose()};
}

Eigen::VectorXd gaussian_lambdas(const OccupationProfile& profile)
{
    const int omega = profile.omega();
    Eigen::VectorXd lambda(2 * omega);
    for (int k = 1; k <= omega; ++k) {
        const double f = profile(k);
        if (!(f > 0.0 && f < 1.0))
            throw DegenerateGaussianError("occupation of level " + std::to_string(k) +
                                          " is at an endpoint");
        lambda[fock_mode(k, false)] = lambda[fock_mode(k, true)] = std::log(1.0 / f - 1.0);
    }
    return lambda;
}

FockDensity gaussian_from_lambdas(int omega, const Eigen::VectorXd& lambda)
{
    check_embed_size(omega, kMaxEmbedOmega);
    const int modes = 2 * omega;
    if (lambda.size() != modes)
        throw DimensionError("one lambda per mode required");
    const Eigen::Index dim = Eigen::Index{1} << modes;
    Eigen::VectorXd diag(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        // product of per-mode factors e^{-lambda n} / (1 + e^{-lambda})
        double p = 1.0;
        for (int m = 0; m < modes; ++m) {
            const double occ = 1.0 / (1.0 + std::exp(lambda[m]));
            p *= ((n >> m) & 1) ? occ : 1.0 - occ;
        }
        diag[n] = p;
    }
    return FockDensity{omega, diag.asDiagonal()};
}

FockDensity gaussian_from_occupations(const OccupationProfile& profile)
{
    return gaussian_from_lambdas(profile.omega(), gaussian_lambdas(profile));
}

RelativeEntropy relative_entropy(const FockDensity& rho, const FockDensity& rhop)
{
    if (rho.rho.rows() != rhop.rho.rows())
        throw DimensionError("densities live on different spaces");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (rhop.rho + rhop.rho.transpose()));
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::VectorXd& w = es.eigenvalues();
    const double scale = std::max(w.cwiseAbs().maxCoeff(), 1.0);

    double cross = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double weight = v.col(i).dot(rho.rho * v.col(i));
        if (w[i] <= 1e-300 * scale) {
            if (weight > 1e-14)
                return RelativeEntropy{std::numeric_limits<double>::infinity(), true};
            continue;
        }
        cross -= weight * std::log2(w[i]);
    }
    return RelativeEntropy{cross - vn_entropy(rho.rho), false};
}

MinimumReport verify_minimum(const PairStateVector& state, int perturbations, std::uint64_t seed,
                             double delta)
{
    check_embed_size(state.space().omega(), kMaxMinimumOmega);
    const FockDensity rho = density(embed(state));
    const OccupationProfile prof = occupations(state);
    const Eigen::VectorXd lambda = gaussian_lambdas(prof);

    MinimumReport rep;
    rep.relative_entropy = relative_entropy(rho, gaussian_from_lambdas(rho.omega, lambda)).value;
    rep.one_body_entropy = one_body_entropy(prof);
    rep.identity_error = std::abs(rep.relative_entropy - rep.one_body_entropy);
    rep.perturbations = perturbations;
    rep.min_increase = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(lambda.size()) - 1);
    std::bernoulli_distribution sign(0.5);
    for (int p = 0; p < perturbations; ++p) {
        Eigen::VectorXd moved = lambda;
        moved[pick(rng)] += sign(rng) ? delta : -delta;
        const double s = relative_entropy(rho, gaussian_from_lambdas(rho.omega, moved)).value;
        const double inc = s - rep.relative_entropy;
        if (inc > 0.0)
            ++rep.increases;
        rep.min_increase = std::min(rep.min_increase, inc);
        rep.max_violation = std::max(rep.max_violation, -inc);
    }
    if (perturbations == 0)
        rep.min_increase = 0.0;
    return rep;
}

Eigen::MatrixXd partial_trace(const FockState& psi, const std::vector<int>& keep)
{
    const int modes = psi.modes();
    std::uint64_t keep_mask = 0;
    for (int m : keep) {
        if (m < 0 || m >= modes)
            throw ArgumentError("mode index out of range");
        if (keep_mask >> m & 1)
            throw ArgumentError("duplicate mode in partial trace");
        keep_mask |= std::uint64_t{1} << m;
    }
    std::vector<int> rest;
    for (int m = 0; m < modes; ++m)
        if (!(keep_mask >> m & 1))
            rest.push_back(m);

    const Eigen::Index na = Eigen::Index{1} << keep.size();
    const Eigen::Index nb = Eigen::Index{1} << rest.size();
    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(na, nb);
    for (Eigen::Index n = 0; n < psi.dim(); ++n) {
        const double a = psi.amps[n];
        if (a == 0.0)
            continue;
        const auto occ = static_cast<std::uint64_t>(n);
        Eigen::Index ia = 0;
        Eigen::Index ib = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            ia |= static_cast<Eigen::Index>((occ >> keep[i]) & 1) << i;
        for (std::size_t i = 0; i < rest.size(); ++i)
            ib |= static_cast<Eigen::Index>((occ >> rest[i]) & 1) << i;
        // bring the kept creators to the front in the order of `keep`:
        // count inversions relative to the canonical increasing order
        int swaps = 0;
        std::vector<int> seq;
        for (int m : keep)
            if (occ >> m & 1)
                seq.push_back(m);
        for (int m : rest)
            if (occ >> m & 1)
                seq.push_back(m);
        for (std::size_t i = 0; i < seq.size(); ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j)
                swaps += seq[i] > seq[j];
        coeff(ia, ib) += (swaps % 2 ? -a : a);
    }
    return coeff * coeff.transpose();
}

Eigen::MatrixXd partial_trace_four_modes(const FockState& psi, int k, int kp)
{
    if (k < 1 || k > psi.omega || kp < 1 || kp > psi.omega || k == kp)
        throw ArgumentError("invalid level pair");
    return partial_trace(psi, {fock_mode(k, false), fock_mode(k, true), fock_mode(kp, false),
                               fock_mode(kp, true)});
}

namespace {
constexpr int kEmpty = 0b0000;
constexpr int kOnlyK = 0b0011;
constexpr int kOnlyKp = 0b1100;
constexpr int kBoth = 0b1111;

bool in_pair_sector(int i)
{
    return i == kEmpty || i == kOnlyK || i == kOnlyKp || i == kBoth;
}
} // namespace

FourModeEvenBlock extract_even_block(const Eigen::MatrixXd& rho16)
{
    if (rho16.rows() != 16 || rho16.cols() != 16)
        throw DimensionError("four-mode state must be 16 x 16");
    FourModeEvenBlock b;
    b.nn = rho16(kBoth, kBoth);
    b.n_tilde = rho16(kOnlyK, kOnlyK);
    b.tilde_n = rho16(kOnlyKp, kOnlyKp);
    b.tilde_tilde = rho16(kEmpty, kEmpty);
    b.pair_transfer = rho16(kOnlyK, kOnlyKp);
    b.fk = b.nn + b.n_tilde;
    b.fkp = b.nn + b.tilde_n;
    return b;
}

double max_outside_pair_sector(const Eigen::MatrixXd& rho16)
{
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            if (!in_pair_sector(i) || !in_pair_sector(j))
                worst = std::max(worst, std::abs(rho16(i, j)));
    return worst;
}

double max_odd_parity(const Eigen::MatrixXd& rho16)
{
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            if (std::popcount(static_cast<unsigned>(i)) % 2 || std::popcount(static_cast<unsigned>(j)) % 2)
                worst = std::max(worst, std::abs(rho16(i, j)));
    return worst;
}

Eigen::MatrixXd creation_operator(int modes, int m)
{
    if (m < 0 || m >= modes)
        throw ArgumentError("mode index out of range");
    const Eigen::Index dim = Eigen::Index{1} << modes;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const auto occ = static_cast<std::uint64_t>(n);
        if (occ >> m & 1)
            continue;
        const int below = std::popcount(occ & ((std::uint64_t{1} << m) - 1));
        c(n | (Eigen::Index{1} << m), n) = below % 2 ? -1.0 : 1.0;
    }
    return c;
}

Eigen::MatrixXd fock_hamiltonian(const ModelParams& params)
{
    params.validate();
    check_embed_size(params.omega, kMaxMinimumOmega);
    const int modes = 2 * params.omega;
    const Eigen::Index dim = Eigen::Index{1} << modes;
    std::vector<Eigen::MatrixXd> cdag;
    for (int m = 0; m < modes; ++m)
        cdag.push_back(creation_operator(modes, m));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<Eigen::MatrixXd> pdag; // c+_k c+_kbar
    for (int k = 1; k <= params.omega; ++k) {
        const auto& a = cdag[fock_mode(k, false)];
        const auto& b = cdag[fock_mode(k, true)];
        h += params.level_energy(k) * (a * a.transpose() + b * b.transpose());
        pdag.push_back(a * b);
    }
    for (const auto& p : pdag)
        for (const auto& q : pdag)
            h -= params.coupling * p * q.transpose();
    return h;
}

Eigen::MatrixXd embedding_matrix(const PairBasis& basis)
{
    check_embed_size(basis.omega(), kMaxEmbedOmega);
    const Eigen::Index dim = Eigen::Index{1} << (2 * basis.omega());
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.dim(); ++i)
        e(static_cast<Eigen::Index>(pair_to_fock(basis.config(i))), static_cast<Eigen::Index>(i)) = 1.0;
    return e;
}

} // namespace pairsim

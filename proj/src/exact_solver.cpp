#include "pairsim/exact_solver.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/lanczos.hpp"
#include "pairsim/matrix_functions.hpp"

namespace pairsim {

PairStateVector make_state(std::shared_ptr<const PairBasis> basis, Eigen::VectorXd amps)
{
    if (!basis)
        throw ArgumentError("state requires a basis");
    if (static_cast<std::size_t>(amps.size()) != basis->dim())
        throw DimensionError("amplitude vector does not match the basis dimension");
    const double n = amps.norm();
    if (!(n > 0.0))
        throw ArgumentError("cannot normalize a zero state");
    return PairStateVector{std::move(basis), amps / n, std::nullopt, std::nullopt};
}

double OccupationProfile::operator()(int k) const
{
    if (k < 1 || k > omega())
        throw ArgumentError("level index " + std::to_string(k) + " out of range");
    return f[k - 1];
}

Eigen::Matrix4d FourModeEvenBlock::matrix() const
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = nn;
    m(1, 1) = n_tilde;
    m(1, 2) = pair_transfer;
    m(2, 1) = pair_transfer;
    m(2, 2) = tilde_n;
    m(3, 3) = tilde_tilde;
    return m;
}

void FourModeEvenBlock::validate(double tol) const
{
    for (double p : {nn, n_tilde, tilde_n, tilde_tilde})
        if (p < -tol || p > 1.0 + tol)
            throw ValidationError("four-mode probability outside [0, 1]");
    if (std::abs(nn + n_tilde + tilde_n + tilde_tilde - 1.0) > tol)
        throw ValidationError("four-mode probabilities do not sum to 1");
    if (std::abs(nn + n_tilde - fk) > tol || std::abs(nn + tilde_n - fkp) > tol)
        throw ValidationError("four-mode block marginals disagree with occupations");
    if (n_tilde * tilde_n - pair_transfer * pair_transfer < -1e-12)
        throw ValidationError("four-mode block is not positive semidefinite");
}

PairStateVector ground_state(const ModelParams& params, const SolverOptions& opts)
{
    params.validate();
    return ground_state(params, std::make_shared<const PairBasis>(params.omega, params.pairs,
                                                                  opts.basis_cap),
                        opts);
}

PairStateVector ground_state(const ModelParams& params, std::shared_ptr<const PairBasis> basis,
                             const SolverOptions& opts)
{
    params.validate();
    if (!basis || basis->omega() != params.omega || basis->pairs() != params.pairs)
        throw ArgumentError("basis does not match the model parameters");

    const double tol_scale = params.eps;
    Eigen::VectorXd x;
    double e = 0.0;
    double residual = 0.0;

    if (basis->dim() <= opts.dense_limit) {
        const Eigen::MatrixXd h = dense_hamiltonian(params, *basis);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        if (es.info() != Eigen::Success)
            throw SolverError("dense eigensolver failed");
        e = es.eigenvalues()[0];
        x = es.eigenvectors().col(0);
        residual = (h * x - e * x).norm();
    } else {
        LanczosOptions lo;
        lo.max_krylov = opts.max_krylov;
        lo.max_restarts = opts.max_restarts;
        lo.residual_tol = opts.residual_tol;
        lo.eigenvalue_change_tol = opts.eigenvalue_change_tol;
        lo.scale = tol_scale;
        const auto op = [&](const Eigen::VectorXd& v) { return apply_hamiltonian(params, *basis, v); };
        const Eigen::VectorXd start = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(basis->dim()));
        LanczosResult res;
        try {
            LanczosOptions tight = lo;
            tight.residual_tol = std::min(opts.lanczos_target, opts.residual_tol);
            res = lanczos_lowest(op, start, tight);
        } catch (const SolverError&) {
            res = lanczos_lowest(op, start, lo);
        }
        e = res.eigenvalue;
        x = std::move(res.vector);
        residual = res.residual;
    }

    if (residual > opts.residual_tol * std::max(std::abs(e), tol_scale))
        throw SolverError("ground state residual " + std::to_string(residual) + " above tolerance",
                          residual);

    if (x.sum() < 0.0)
        x = -x;
    if (x.minCoeff() < -1e-12)
        throw SolverError("ground vector is not sign-definite; min amplitude " +
                          std::to_string(x.minCoeff()));

    PairStateVector s{std::move(basis), x / x.norm(), e, residual};
    return s;
}

PairStateVector fermi_sea(const ModelParams& params)
{
    params.validate();
    auto basis = std::make_shared<const PairBasis>(params.omega, params.pairs);
    Eigen::VectorXd amps = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->dim()));
    amps[static_cast<Eigen::Index>(basis->fermi_sea_index())] = 1.0;
    const double e = diagonal_energy(params, basis->config(basis->fermi_sea_index()));
    return PairStateVector{std::move(basis), amps, e, 0.0};
}

double energy_expectation(const ModelParams& params, const PairStateVector& state)
{
    const Eigen::VectorXd hx = apply_hamiltonian(params, state.space(), state.amps);
    return state.amps.dot(hx) / state.amps.squaredNorm();
}

double eigen_residual(const ModelParams& params, const PairStateVector& state)
{
    const Eigen::VectorXd x = state.amps / state.amps.norm();
    const Eigen::VectorXd hx = apply_hamiltonian(params, state.space(), x);
    return (hx - x.dot(hx) * x).norm();
}

OccupationProfile occupations(const PairStateVector& state)
{
    const PairBasis& b = state.space();
    Eigen::VectorXd f = Eigen::VectorXd::Zero(b.omega());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const double w = state.amps[static_cast<Eigen::Index>(i)] *
                         state.amps[static_cast<Eigen::Index>(i)];
        for (Mask m = b.config(i); m; m &= m - 1)
            f[std::countr_zero(m)] += w;
    }
    return OccupationProfile{f};
}

double one_body_entropy(const OccupationProfile& profile)
{
    double s = 0.0;
    for (Eigen::Index k = 0; k < profile.f.size(); ++k)
        s += binary_entropy(profile.f[k]);
    return 2.0 * s;
}

double quadratic_entropy(const OccupationProfile& profile)
{
    return 8.0 * (profile.f.array() * (1.0 - profile.f.array())).sum();
}

double schmidt_entropy(const PairStateVector& state)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < state.amps.size(); ++i)
        s += entropy_term(state.amps[i] * state.amps[i]);
    return s;
}

Eigen::Matrix2d pair_mode_state(const OccupationProfile& profile, int k)
{
    const double f = profile(k);
    Eigen::Matrix2d m;
    m << f, 0.0, 0.0, 1.0 - f;
    return m;
}

FourModeEvenBlock four_mode_block(const PairStateVector& state, int k, int kp)
{
    const PairBasis& b = state.space();
    if (k < 1 || k > b.omega() || kp < 1 || kp > b.omega())
        throw ArgumentError("level index out of range");
    if (k == kp)
        throw ArgumentError("four-mode block requires k != k'");

    const Mask bk = Mask{1} << (k - 1);
    const Mask bkp = Mask{1} << (kp - 1);
    FourModeEvenBlock blk;
    const auto& a = state.amps;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const Mask m = b.config(i);
        const double ai = a[static_cast<Eigen::Index>(i)];
        const double w = ai * ai;
        const bool occ_k = m & bk;
        const bool occ_kp = m & bkp;
        if (occ_k && occ_kp)
            blk.nn += w;
        else if (occ_k)
            blk.n_tilde += w;
        else if (occ_kp) {
            blk.tilde_n += w;
            // move the pair k' -> k
            const auto j = static_cast<Eigen::Index>(b.rank_unchecked(m ^ bk ^ bkp));
            blk.pair_transfer += a[j] * ai;
        } else
            blk.tilde_tilde += w;
    }
    const double norm = a.squaredNorm();
    blk.nn /= norm;
    blk.n_tilde /= norm;
    blk.tilde_n /= norm;
    blk.tilde_tilde /= norm;
    blk.pair_transfer /= norm;
    blk.fk = blk.nn + blk.n_tilde;
    blk.fkp = blk.nn + blk.tilde_n;
    return blk;
}

} // namespace pairsim

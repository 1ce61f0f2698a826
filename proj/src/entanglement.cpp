#include "pairsim/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pairsim/errors.hpp"

namespace pairsim {

double binary_entropy(double f)
{
    if (f < -1e-12 || f > 1.0 + 1e-12 || std::isnan(f))
        throw DomainError("binary entropy argument " + std::to_string(f) + " outside [0, 1]");
    if (f <= 0.0 || f >= 1.0)
        return 0.0;
    const double x = std::clamp(f, 1e-300, 1.0 - 1e-16);
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double concurrence_closed(const FourModeEvenBlock& block)
{
    const double nt = std::max(block.nn, 0.0) * std::max(block.tilde_tilde, 0.0);
    return 2.0 * std::max(std::abs(block.pair_transfer) - std::sqrt(nt), 0.0);
}

Matrix8c parity_conjugation()
{
    Matrix8c t = Matrix8c::Zero();
    t.topRightCorner<4, 4>().setIdentity();
    t.bottomLeftCorner<4, 4>().setIdentity();
    return t;
}

EvenParityState8::EvenParityState8(const Matrix8c& rho) : rho_(rho)
{
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("even-parity state is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw ValidationError("even-parity state trace deviates from 1");
    if (hermitian_eigenvalues(rho).minCoeff() < -1e-12)
        throw ValidationError("even-parity state is not positive semidefinite");
}

EvenParityState8 EvenParityState8::from_block(const FourModeEvenBlock& block)
{
    // |none> = |0> (index 0), |k only> = c1+c2+|0> (1),
    // |k' only> = c3+c4+|0> = c2c1|0bar> (5), |both> = |0bar> = -(index 4).
    Matrix8c rho = Matrix8c::Zero();
    rho(0, 0) = block.tilde_tilde;
    rho(1, 1) = block.n_tilde;
    rho(5, 5) = block.tilde_n;
    rho(4, 4) = block.nn;
    rho(1, 5) = block.pair_transfer;
    rho(5, 1) = block.pair_transfer;
    return EvenParityState8(rho);
}

EvenParityState8 EvenParityState8::from_pure(const Vector8c& psi)
{
    return EvenParityState8(psi * psi.adjoint());
}

double concurrence_general(const EvenParityState8& state, const Matrix8c& conj)
{
    const Matrix8c& rho = state.matrix();
    const Matrix8c flipped = conj * rho.conjugate() * conj;

    // R^2 = rho^1/2 flipped rho^1/2 restricted to the support of rho; roundoff
    // eigenvalues of rho would otherwise enter Tr R as their square roots
    Eigen::SelfAdjointEigenSolver<Matrix8c> es((rho + rho.adjoint()) / 2.0);
    const Eigen::VectorXd& w = es.eigenvalues();
    const double cut = 1e-14 * std::max(w.maxCoeff(), 1.0);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] > cut)
            support.push_back(i);
    if (support.empty())
        return 0.0;
    const auto r = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXcd p(8, r);
    Eigen::VectorXd root(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        p.col(j) = es.eigenvectors().col(support[static_cast<std::size_t>(j)]);
        root[j] = std::sqrt(w[support[static_cast<std::size_t>(j)]]);
    }
    const Eigen::MatrixXcd m = root.asDiagonal() * (p.adjoint() * flipped * p) * root.asDiagonal();
    const Eigen::VectorXd lambda = hermitian_eigenvalues(m).cwiseMax(0.0).cwiseSqrt();
    return std::max(2.0 * lambda.maxCoeff() - lambda.sum(), 0.0);
}

FormationEntanglement eof_from_concurrence(double c)
{
    if (c < -1e-12 || c > 1.0 + 1e-12 || std::isnan(c))
        throw DomainError("concurrence " + std::to_string(c) + " outside [0, 1]");
    c = std::clamp(c, 0.0, 1.0);
    const double f_plus = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    const double h = binary_entropy(f_plus);
    return {4.0 * h, h};
}

double mutual_information(const FourModeEvenBlock& block)
{
    return binary_entropy(block.fk) + binary_entropy(block.fkp) - vn_entropy(block.matrix());
}

Eigen::Matrix4d TwoQubitRep::matrix() const
{
    // T = C + r_a r_b^T; only T_zz picks up the product of the z marginals.
    const double tzz = czz + rz_a * rz_b;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 0.25 * (1.0 + rz_a + rz_b + tzz);
    m(1, 1) = 0.25 * (1.0 + rz_a - rz_b - tzz);
    m(2, 2) = 0.25 * (1.0 - rz_a + rz_b - tzz);
    m(3, 3) = 0.25 * (1.0 - rz_a - rz_b + tzz);
    m(1, 2) = 0.5 * cxx;
    m(2, 1) = 0.5 * cxx;
    return m;
}

TwoQubitRep two_qubit_rep(const FourModeEvenBlock& block)
{
    TwoQubitRep r;
    r.rz_a = 2.0 * block.fk - 1.0;
    r.rz_b = 2.0 * block.fkp - 1.0;
    r.cxx = 2.0 * block.pair_transfer;
    r.czz = 4.0 * (block.nn - block.fk * block.fkp);
    return r;
}

double conditional_entropy(const TwoQubitRep& rep, double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double total = 0.0;
    for (const double nu : {1.0, -1.0}) {
        const double denom = 1.0 + nu * rep.rz_b * c;
        const double p = 0.5 * denom;
        if (p <= 1e-15)
            continue;
        const double vx = nu * rep.cxx * s / denom;
        const double vz = rep.rz_a + nu * rep.czz * c / denom;
        const double r = std::min(1.0, std::hypot(vx, vz));
        total += p * (entropy_term(0.5 * (1.0 + r)) + entropy_term(0.5 * (1.0 - r)));
    }
    return total;
}

DiscordResult discord_detail(const FourModeEvenBlock& block)
{
    const TwoQubitRep rep = two_qubit_rep(block);
    constexpr int kGrid = 181;
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    const double step = kHalfPi / (kGrid - 1);

    int best = 0;
    double best_val = conditional_entropy(rep, 0.0);
    for (int i = 1; i < kGrid; ++i) {
        const double v = conditional_entropy(rep, i * step);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // golden section inside the grid cell pair around the best node
    double lo = std::max(0, best - 1) * step;
    double hi = std::min(kGrid - 1, best + 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = conditional_entropy(rep, x1);
    double f2 = conditional_entropy(rep, x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = conditional_entropy(rep, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = conditional_entropy(rep, x2);
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double refined = conditional_entropy(rep, mid);

    DiscordResult out;
    out.theta = best * step;
    out.conditional = best_val;
    if (refined < best_val) {
        out.conditional = refined;
        out.theta = mid;
    }
    const double joint = vn_entropy(block.matrix());
    double d = out.conditional - (joint - binary_entropy(block.fkp));
    if (d < 0.0 && d >= -1e-10)
        d = 0.0;
    out.value = d;
    return out;
}

double discord(const FourModeEvenBlock& block)
{
    return discord_detail(block).value;
}

StrongCouplingLimits strong_coupling_limits(int omega)
{
    if (omega < 2 || omega % 2 != 0)
        throw ArgumentError("strong-coupling limits need an even omega >= 2");
    const double w = omega;
    StrongCouplingLimits l;
    l.omega = omega;
    l.nn = (w - 2.0) / (4.0 * (w - 1.0));
    l.inner = w / (4.0 * (w - 1.0));
    l.c = 1.0 / (w - 1.0);
    l.i_approx = 0.5 * (1.0 + 1.0 / w);
    l.s_approx = 0.5 * (3.0 - 1.0 / w);
    l.d_approx = 0.5 * (1.0 - std::log2(3.0) / 2.0) * (3.0 + 1.0 / w);
    l.d_inf = 1.5 - 0.75 * std::log2(3.0);
    return l;
}

FourModeEvenBlock strong_coupling_block(int omega)
{
    const auto l = strong_coupling_limits(omega);
    FourModeEvenBlock b;
    b.nn = l.nn;
    b.tilde_tilde = l.nn;
    b.n_tilde = l.inner;
    b.tilde_n = l.inner;
    b.pair_transfer = l.inner;
    b.fk = 0.5;
    b.fkp = 0.5;
    return b;
}

} // namespace pairsim

#include "pairsim/meanfield.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"

namespace pairsim {

double chemical_potential(const ModelParams& params)
{
    const auto e = params.level_energies();
    double s = 0.0;
    for (double x : e)
        s += x;
    return s / params.omega;
}

CriticalCoupling critical_coupling(const ModelParams& params)
{
    params.validate();
    const double mu = chemical_potential(params);
    double sum = 0.0;
    for (int k = 1; k <= params.omega; ++k) {
        const double et = params.level_energy(k) - mu;
        if (std::abs(et) < 1e-14)
            throw DegenerateFermiLevelError("level " + std::to_string(k) + " sits at the Fermi energy");
        sum += 1.0 / std::abs(et);
    }
    CriticalCoupling gc;
    gc.exact = 2.0 / sum;
    gc.estimate = params.eps / (std::log(params.omega / 2.0) + kCriticalCouplingGamma);
    return gc;
}

BcsSolution bcs_at_gap(const ModelParams& params, double delta)
{
    params.validate();
    if (!(delta >= 0.0))
        throw ArgumentError("gap must be nonnegative");
    const int n = params.omega;
    BcsSolution s;
    s.coupling = params.coupling;
    s.delta = delta;
    s.mu = chemical_potential(params);
    s.eps_tilde.resize(n);
    s.u.resize(n);
    s.v.resize(n);
    s.lambda.resize(n);
    s.f.resize(n);
    for (int k = 0; k < n; ++k) {
        const double et = params.level_energy(k + 1) - s.mu;
        const double lam = std::hypot(et, delta);
        s.eps_tilde[k] = et;
        s.lambda[k] = lam;
        if (lam == 0.0) {
            s.u[k] = s.v[k] = std::sqrt(0.5);
        } else {
            s.u[k] = std::sqrt(0.5 * (1.0 + et / lam));
            s.v[k] = std::sqrt(0.5 * (1.0 - et / lam));
        }
        s.f[k] = s.v[k] * s.v[k];
    }
    return s;
}

double gap_residual(const BcsSolution& sol)
{
    return (0.5 / sol.lambda.array()).sum() - 1.0 / sol.coupling;
}

BcsSolution solve_gap(const ModelParams& params)
{
    params.validate();
    const double g = params.coupling;
    const double gc = critical_coupling(params).exact;
    if (g <= gc)
        return bcs_at_gap(params, 0.0);

    const double mu = chemical_potential(params);
    const auto levels = params.level_energies();
    const auto lhs = [&](double d) {
        double s = 0.0;
        for (double e : levels)
            s += 0.5 / std::hypot(e - mu, d);
        return s - 1.0 / g;
    };

    double lo = 0.0;
    double hi = g * params.omega;
    if (!(lhs(hi) < 0.0))
        throw SolverError("gap equation root not bracketed");
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lhs(mid) > 0.0 ? lo : hi) = mid;
    }
    return bcs_at_gap(params, 0.5 * (lo + hi));
}

OccupationProfile bcs_occupations(const BcsSolution& sol)
{
    return OccupationProfile{sol.f};
}

double bcs_energy(const ModelParams& params, const BcsSolution& sol)
{
    const auto uv = (sol.u.array() * sol.v.array()).eval();
    double kinetic = 0.0;
    for (int k = 1; k <= sol.omega(); ++k)
        kinetic += 2.0 * params.level_energy(k) * sol.f[k - 1];
    const double sum_uv = uv.sum();
    return kinetic - params.coupling * (sum_uv * sum_uv - uv.square().sum() + sol.f.sum());
}

Eigen::MatrixXd qsp_matrix(const BcsSolution& sol)
{
    const int modes = 2 * sol.omega();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(modes, modes);
    Eigen::MatrixXd kappa = Eigen::MatrixXd::Zero(modes, modes);
    for (int k = 0; k < sol.omega(); ++k) {
        const int a = 2 * k;     // k
        const int b = 2 * k + 1; // kbar
        rho(a, a) = sol.f[k];
        rho(b, b) = sol.f[k];
        // kappa_ij = <c_j c_i>: <c_kbar c_k> = u v, <c_k c_kbar> = -u v
        kappa(a, b) = sol.u[k] * sol.v[k];
        kappa(b, a) = -sol.u[k] * sol.v[k];
    }
    Eigen::MatrixXd q(2 * modes, 2 * modes);
    q.topLeftCorner(modes, modes) = rho;
    q.topRightCorner(modes, modes) = kappa;
    q.bottomLeftCorner(modes, modes) = -kappa;
    q.bottomRightCorner(modes, modes) = Eigen::MatrixXd::Identity(modes, modes) - rho;
    return q;
}

BcsEntropies bcs_entropies(const BcsSolution& sol)
{
    BcsEntropies out;
    double sum_h = 0.0;
    double fluct = 0.0;
    for (int k = 0; k < sol.omega(); ++k) {
        sum_h += binary_entropy(sol.f[k]);
        const double uv = sol.u[k] * sol.v[k];
        fluct += uv * uv;
    }
    out.e_one_body = 2.0 * sum_h;
    out.e_schmidt = sum_h;
    out.number_fluctuation = 4.0 * fluct;

    const Eigen::VectorXd ev = hermitian_eigenvalues(qsp_matrix(sol));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        out.qsp_max_deviation = std::max(out.qsp_max_deviation,
                                         std::min(std::abs(ev[i]), std::abs(1.0 - ev[i])));
        out.e_qsp += entropy_term(ev[i]);
    }
    return out;
}

FourModeEvenBlock bcs_four_mode(const BcsSolution& sol, int k, int kp)
{
    if (k < 1 || k > sol.omega() || kp < 1 || kp > sol.omega())
        throw ArgumentError("level index out of range");
    if (k == kp)
        throw ArgumentError("four-mode block requires k != k'");
    const double f1 = sol.f[k - 1];
    const double f2 = sol.f[kp - 1];
    FourModeEvenBlock b;
    b.nn = f1 * f2;
    b.n_tilde = f1 * (1.0 - f2);
    b.tilde_n = (1.0 - f1) * f2;
    b.tilde_tilde = (1.0 - f1) * (1.0 - f2);
    b.pair_transfer = sol.u[k - 1] * sol.v[k - 1] * sol.u[kp - 1] * sol.v[kp - 1];
    b.fk = f1;
    b.fkp = f2;
    return b;
}

PairStateVector pbcs_state(const ModelParams& params, double delta,
                           std::shared_ptr<const PairBasis> basis)
{
    params.validate();
    if (!(delta >= 0.0))
        throw ArgumentError("gap must be nonnegative");
    if (!basis)
        basis = std::make_shared<const PairBasis>(params.omega, params.pairs);

    const auto dim = static_cast<Eigen::Index>(basis->dim());
    if (delta == 0.0) {
        Eigen::VectorXd amps = Eigen::VectorXd::Zero(dim);
        amps[static_cast<Eigen::Index>(basis->fermi_sea_index())] = 1.0;
        return make_state(std::move(basis), std::move(amps));
    }

    // log(v_k / u_k) = (log(lambda - e) - log(lambda + e)) / 2, both factors
    // written without cancellation.
    const double mu = chemical_potential(params);
    std::vector<double> log_ratio(params.omega);
    for (int k = 0; k < params.omega; ++k) {
        const double et = params.level_energy(k + 1) - mu;
        const double lam = std::hypot(et, delta);
        const double minus = et > 0.0 ? delta * delta / (lam + et) : lam - et;
        const double plus = et < 0.0 ? delta * delta / (lam - et) : lam + et;
        log_ratio[k] = 0.5 * (std::log(minus) - std::log(plus));
    }

    Eigen::VectorXd logs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double s = 0.0;
        for (Mask m = basis->config(static_cast<std::size_t>(i)); m; m &= m - 1)
            s += log_ratio[std::countr_zero(m)];
        logs[i] = s;
    }
    const double top = logs.maxCoeff();
    Eigen::VectorXd amps = (logs.array() - top).exp().matrix();
    return make_state(std::move(basis), std::move(amps));
}

PbcsSolution pbcs_optimize(const ModelParams& params, std::shared_ptr<const PairBasis> basis)
{
    params.validate();
    if (!basis)
        basis = std::make_shared<const PairBasis>(params.omega, params.pairs);

    const auto energy_at = [&](double d) {
        return energy_expectation(params, pbcs_state(params, d, basis));
    };

    PbcsSolution out;
    const double g = params.coupling;
    if (g == 0.0) {
        out.delta_var = 0.0;
        out.state = pbcs_state(params, 0.0, basis);
        out.energy = energy_expectation(params, out.state);
        return out;
    }

    const double dmax = 3.0 * g * params.omega;
    constexpr int kScan = 16;
    std::vector<double> pts{0.0};
    for (int i = 0; i < kScan; ++i)
        pts.push_back(dmax * std::pow(10.0, -6.0 * (kScan - 1 - i) / (kScan - 1)));
    std::vector<double> vals;
    for (double d : pts)
        vals.push_back(energy_at(d));
    const auto best = static_cast<std::size_t>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());

    if (best == pts.size() - 1) {
        out.boundary = true;
        out.delta_var = dmax;
        out.state = pbcs_state(params, dmax, basis);
        out.energy = vals.back();
        return out;
    }

    double lo = best == 0 ? 0.0 : pts[best - 1];
    double hi = pts[best + 1];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = energy_at(x1);
    double f2 = energy_at(x2);
    while (hi - lo > 1e-9 * hi + 1e-15) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = energy_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = energy_at(x2);
        }
    }

    double d = 0.5 * (lo + hi);
    double e = energy_at(d);
    if (vals[best] < e) {
        d = pts[best];
        e = vals[best];
    }
    out.delta_var = d;
    out.state = pbcs_state(params, d, basis);
    out.energy = e;
    return out;
}

} // namespace pairsim

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/exact_solver.hpp"
#include "pairsim/fock_verify.hpp"
#include "pairsim/matrix_functions.hpp"
#include "pairsim/meanfield.hpp"

using namespace pairsim;

namespace {

ModelParams model(int omega, double g)
{
    ModelParams p;
    p.omega = omega;
    p.pairs = omega / 2;
    p.coupling = g;
    return p;
}

} // namespace

TEST_CASE("embedding")
{
    const auto sea = embed(fermi_sea(model(2, 0.0)));
    CHECK(sea.dim() == 16);
    CHECK(sea.amps[0b0011] == 1.0);
    CHECK(sea.amps.norm() == doctest::Approx(1.0));

    const auto s = embed(ground_state(model(2, 1.0)));
    CHECK(s.amps[0b0011] == doctest::Approx(0.92388).epsilon(1e-5));
    CHECK(s.amps[0b1100] == doctest::Approx(0.38268).epsilon(1e-5));
    CHECK(std::abs(s.amps.norm() - 1.0) < 1e-14);

    const PairBasis basis(6, 3);
    const auto e = embedding_matrix(basis);
    CHECK(e.rows() == 4096);
    CHECK((e.transpose() * e - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(embed(fermi_sea(model(8, 0.0))), CapacityError);
}

TEST_CASE("creation operators obey the canonical anticommutators")
{
    const int modes = 4;
    std::vector<Eigen::MatrixXd> c;
    for (int m = 0; m < modes; ++m)
        c.push_back(creation_operator(modes, m));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(16, 16);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(16, 16);
    for (int a = 0; a < modes; ++a)
        for (int b = 0; b < modes; ++b) {
            const Eigen::MatrixXd ab = c[a].transpose() * c[b] + c[b] * c[a].transpose();
            CHECK((ab - (a == b ? id : zero)).cwiseAbs().maxCoeff() == 0.0);
            CHECK((c[a] * c[b] + c[b] * c[a]).cwiseAbs().maxCoeff() == 0.0);
        }
    CHECK_THROWS_AS(creation_operator(4, 4), ArgumentError);
}

TEST_CASE("Fock-space Hamiltonian restricted to pair states")
{
    for (int omega : {2, 4}) {
        const auto p = model(omega, 0.83);
        const PairBasis basis(omega, omega / 2);
        const auto hf = fock_hamiltonian(p);
        const auto e = embedding_matrix(basis);
        const auto h = dense_hamiltonian(p, basis);
        CHECK((e.transpose() * hf * e - h).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((hf * e - e * h).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("number-conserving gaussian")
{
    OccupationProfile half{Eigen::VectorXd::Constant(2, 0.5)};
    const auto g = gaussian_from_occupations(half);
    CHECK((g.rho - Eigen::MatrixXd::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(vn_entropy(g.rho) == doctest::Approx(4.0));

    const auto s = ground_state(model(2, 1.0));
    const auto f = occupations(s);
    const double oracle = 4.0 * binary_entropy(std::pow(std::cos(std::atan(1.0) / 2.0), 2));
    CHECK(oracle == doctest::Approx(2.4035041467).epsilon(1e-9));
    CHECK(vn_entropy(gaussian_from_occupations(f).rho) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(vn_entropy(gaussian_from_occupations(f).rho) == doctest::Approx(one_body_entropy(f)).epsilon(1e-12));

    const auto lambdas = gaussian_lambdas(f);
    CHECK(lambdas.size() == 4);
    CHECK(lambdas[0] == doctest::Approx(std::log(1.0 / f(1) - 1.0)));
    CHECK(lambdas[1] == lambdas[0]);

    CHECK_THROWS_AS(gaussian_from_occupations(occupations(fermi_sea(model(2, 0.0)))), DegenerateGaussianError);
    CHECK_THROWS_AS(gaussian_from_lambdas(2, Eigen::VectorXd::Zero(3)), DimensionError);
}

TEST_CASE("relative entropy")
{
    const auto s = ground_state(model(2, 1.0));
    const auto rho = density(embed(s));
    const auto gauss = gaussian_from_occupations(occupations(s));

    const auto self = relative_entropy(gauss, gauss);
    CHECK_FALSE(self.infinite);
    CHECK(self.value == doctest::Approx(0.0).epsilon(1e-12));

    const auto matched = relative_entropy(rho, gauss);
    CHECK_FALSE(matched.infinite);
    CHECK(matched.value == doctest::Approx(vn_entropy(gauss.rho)).epsilon(1e-12));
    CHECK(matched.value == doctest::Approx(2.4035041467).epsilon(1e-9));

    const auto other = density(embed(fermi_sea(model(2, 0.0))));
    Eigen::VectorXd flipped = Eigen::VectorXd::Zero(16);
    flipped[0b1100] = 1.0;
    const auto away = relative_entropy(other, density(FockState{2, flipped}));
    CHECK(away.infinite);
}

TEST_CASE("minimum relative entropy")
{
    const auto r2 = verify_minimum(ground_state(model(2, 1.0)), 20);
    CHECK(r2.passed());
    CHECK(r2.increases == 20);
    CHECK(r2.max_violation == 0.0);

    const auto p4 = model(4, 0.0);
    const double gc = critical_coupling(p4).exact;
    for (double r : {0.2, 1.0, 2.0, 3.0, 4.0}) {
        const auto rep = verify_minimum(ground_state(p4.with_coupling(r * gc)), 10, 3);
        CHECK(rep.identity_error <= 1e-8);
        CHECK(rep.passed());
    }
}

TEST_CASE("partial traces at omega = 4")
{
    const auto s = ground_state(model(4, 1.0));
    const auto psi = embed(s);

    const auto rho16 = partial_trace_four_modes(psi, 2, 3);
    CHECK(rho16.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_odd_parity(rho16) == 0.0);
    CHECK(max_outside_pair_sector(rho16) < 1e-15);
    const auto got = extract_even_block(rho16);
    const auto ref = four_mode_block(s, 2, 3);
    CHECK(std::abs(got.nn - ref.nn) < 1e-10);
    CHECK(std::abs(got.n_tilde - ref.n_tilde) < 1e-10);
    CHECK(std::abs(got.tilde_n - ref.tilde_n) < 1e-10);
    CHECK(std::abs(got.tilde_tilde - ref.tilde_tilde) < 1e-10);
    CHECK(std::abs(got.pair_transfer - ref.pair_transfer) < 1e-10);
    CHECK(concurrence_closed(got) == doctest::Approx(concurrence_closed(ref)).epsilon(1e-10));

    // tracing out every k-bar leaves the Schmidt spectrum
    std::vector<int> unbarred;
    for (int k = 1; k <= 4; ++k)
        unbarred.push_back(fock_mode(k, false));
    Eigen::VectorXd w = hermitian_eigenvalues(partial_trace(psi, unbarred));
    std::vector<double> spectrum(w.data(), w.data() + w.size());
    std::vector<double> alpha2;
    for (double a : s.amps)
        alpha2.push_back(a * a);
    std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
    std::sort(alpha2.begin(), alpha2.end(), std::greater<>());
    for (std::size_t i = 0; i < alpha2.size(); ++i)
        CHECK(std::abs(spectrum[i] - alpha2[i]) < 1e-12);
    for (std::size_t i = alpha2.size(); i < spectrum.size(); ++i)
        CHECK(std::abs(spectrum[i]) < 1e-12);

    CHECK_THROWS_AS(partial_trace(psi, {0, 0}), ArgumentError);
    CHECK_THROWS_AS(partial_trace(psi, {9}), ArgumentError);
    CHECK_THROWS_AS(partial_trace_four_modes(psi, 2, 2), ArgumentError);
}

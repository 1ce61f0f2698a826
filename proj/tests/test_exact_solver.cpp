#include <doctest.h>

#include <cmath>
#include <memory>

#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/exact_solver.hpp"
#include "pairsim/lanczos.hpp"

using namespace pairsim;

namespace {

ModelParams model(int omega, double g, int pairs = 0)
{
    ModelParams p;
    p.omega = omega;
    p.pairs = pairs == 0 ? omega / 2 : pairs;
    p.coupling = g;
    return p;
}

PairStateVector uniform_state(int omega)
{
    auto basis = std::make_shared<const PairBasis>(omega, omega / 2);
    return make_state(basis, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(basis->dim())));
}

} // namespace

TEST_CASE("omega = 2 ground state against the 2x2 closed form")
{
    for (double g : {0.1, 0.5, 1.0, 3.0, 40.0}) {
        const auto s = ground_state(model(2, g));
        // H = [[2 - G, -G], [-G, 4 - G]]: tan(2 theta) = G, E = 3 - G - sqrt(1 + G^2)
        const double theta = 0.5 * std::atan(g);
        CHECK(s.energy.value() == doctest::Approx(3.0 - g - std::sqrt(1.0 + g * g)).epsilon(1e-13));
        CHECK(s.amps[0] == doctest::Approx(std::cos(theta)).epsilon(1e-12));
        CHECK(s.amps[1] == doctest::Approx(std::sin(theta)).epsilon(1e-12));
    }
    const auto s = ground_state(model(2, 1.0));
    CHECK(s.amps[0] == doctest::Approx(0.92388).epsilon(1e-5));
    CHECK(s.amps[1] == doctest::Approx(0.38268).epsilon(1e-5));
    const auto blk = four_mode_block(s, 1, 2);
    CHECK(blk.nn == doctest::Approx(0.0));
    CHECK(blk.tilde_tilde == doctest::Approx(0.0));
    CHECK(blk.pair_transfer == doctest::Approx(s.amps[0] * s.amps[1]));
}

TEST_CASE("Lanczos agrees with the dense solver")
{
    const auto p = model(10, 1.3);
    const auto dense = ground_state(p);
    SolverOptions lo;
    lo.dense_limit = 0;
    const auto iter = ground_state(p, lo);
    CHECK(iter.energy.value() == doctest::Approx(dense.energy.value()).epsilon(1e-12));
    CHECK((iter.amps - dense.amps).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(eigen_residual(p, iter) < 1e-10);
    CHECK(eigen_residual(p, dense) < 1e-10);

    Eigen::MatrixXd diag = Eigen::Vector3d(3.0, 1.0, 2.0).asDiagonal();
    auto op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return diag * x; };
    const auto r = lanczos_lowest(op, Eigen::Vector3d::Ones(), {});
    CHECK(r.eigenvalue == doctest::Approx(1.0));
    CHECK_THROWS_AS(lanczos_lowest(op, Eigen::Vector3d::Zero(), {}), ArgumentError);
}

TEST_CASE("Fermi sea")
{
    const auto p = model(8, 0.0);
    const auto sea = fermi_sea(p);
    CHECK(sea.amps[0] == 1.0);
    CHECK(sea.amps.tail(sea.dim() - 1).cwiseAbs().maxCoeff() == 0.0);
    const auto f = occupations(sea);
    for (int k = 1; k <= 8; ++k)
        CHECK(f(k) == (k <= 4 ? 1.0 : 0.0));
    CHECK(one_body_entropy(f) == 0.0);
    CHECK(quadratic_entropy(f) == 0.0);
    CHECK(schmidt_entropy(sea) == 0.0);
    CHECK(energy_expectation(p, sea) == doctest::Approx(2.0 * (1 + 2 + 3 + 4)));

    const auto g0 = ground_state(p);
    CHECK(g0.energy.value() == doctest::Approx(20.0));
}

TEST_CASE("ground-state invariants")
{
    for (double g : {0.05, 0.4, 2.0, 20.0}) {
        const auto p = model(12, g);
        const auto s = ground_state(p);
        CHECK(s.amps.minCoeff() > 0.0);
        CHECK(s.amps.norm() == doctest::Approx(1.0));
        const auto f = occupations(s);
        CHECK(2.0 * f.f.sum() == doctest::Approx(p.particles()).epsilon(1e-12));
        CHECK(energy_expectation(p, s) == doctest::Approx(s.energy.value()).epsilon(1e-12));
        for (auto [k, kp] : {std::pair{6, 7}, std::pair{1, 12}, std::pair{3, 9}}) {
            const auto blk = four_mode_block(s, k, kp);
            CHECK_NOTHROW(blk.validate());
            CHECK(blk.fk == doctest::Approx(f(k)).epsilon(1e-12));
            CHECK(blk.fkp == doctest::Approx(f(kp)).epsilon(1e-12));
            CHECK(blk.nn + blk.n_tilde == doctest::Approx(f(k)).epsilon(1e-12));
            CHECK(blk.nn + blk.tilde_n == doctest::Approx(f(kp)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(four_mode_block(s, 3, 3), ArgumentError);
        CHECK_THROWS_AS(four_mode_block(s, 0, 3), ArgumentError);
    }
}

TEST_CASE("ground energy decreases with G")
{
    double last = ground_state(model(10, 0.0)).energy.value();
    for (double g = 0.1; g < 8.0; g *= 1.6) {
        const double e = ground_state(model(10, g)).energy.value();
        CHECK(e < last);
        last = e;
    }
}

TEST_CASE("uniform amplitudes")
{
    const auto s = uniform_state(16);
    CHECK(schmidt_entropy(s) == doctest::Approx(std::log2(12870.0)).epsilon(1e-12));
    const auto f = occupations(s);
    CHECK(f.f.cwiseAbs().maxCoeff() == doctest::Approx(0.5));
    CHECK(one_body_entropy(f) == doctest::Approx(32.0));
    CHECK(quadratic_entropy(f) == doctest::Approx(32.0));

    const auto blk = four_mode_block(s, 8, 9);
    const auto ref = strong_coupling_block(16);
    CHECK(blk.nn == doctest::Approx(ref.nn).epsilon(1e-12));
    CHECK(blk.n_tilde == doctest::Approx(ref.n_tilde).epsilon(1e-12));
    CHECK(blk.pair_transfer == doctest::Approx(ref.pair_transfer).epsilon(1e-12));
    CHECK(blk.tilde_tilde == doctest::Approx(ref.tilde_tilde).epsilon(1e-12));

    const auto m = pair_mode_state(f, 3);
    CHECK(m(0, 0) == doctest::Approx(0.5));
    CHECK(m(0, 1) == 0.0);
}

TEST_CASE("state construction errors")
{
    auto basis = std::make_shared<const PairBasis>(4, 2);
    CHECK_THROWS_AS(make_state(basis, Eigen::VectorXd::Ones(5)), DimensionError);
    CHECK_THROWS_AS(make_state(basis, Eigen::VectorXd::Zero(6)), ArgumentError);
    CHECK_THROWS_AS(make_state(nullptr, Eigen::VectorXd::Ones(6)), ArgumentError);
    CHECK_THROWS_AS(ground_state(model(4, 1.0), std::make_shared<const PairBasis>(4, 1)), ArgumentError);
}

#include <doctest.h>

#include <cmath>

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

TEST_CASE("critical coupling")
{
    long double harmonic = 0.0L;
    for (int j = 1; j <= 15; j += 2)
        harmonic += 1.0L / j;
    const auto c16 = critical_coupling(model(16, 0.0));
    CHECK(c16.exact == doctest::Approx(static_cast<double>(2.0L / (4.0L * harmonic))).epsilon(1e-14));
    CHECK(c16.exact == doctest::Approx(0.2473043306).epsilon(1e-9));
    CHECK(c16.estimate == doctest::Approx(1.0 / (std::log(8.0) + 1.9635)).epsilon(1e-14));
    CHECK(critical_coupling(model(2, 0.0)).exact == doctest::Approx(0.5));

    auto degenerate = model(4, 0.0);
    degenerate.levels = {0.0, 1.0, 2.0, 5.0};
    CHECK_THROWS_AS(critical_coupling(degenerate), DegenerateFermiLevelError);
}

TEST_CASE("gap equation")
{
    const auto p = model(16, 0.0);
    const double gc = critical_coupling(p).exact;

    const auto below = solve_gap(p.with_coupling(0.9 * gc));
    CHECK(below.delta == 0.0);
    for (int k = 1; k <= 16; ++k)
        CHECK(below.f[k - 1] == (k <= 8 ? 1.0 : 0.0));

    CHECK(solve_gap(p.with_coupling(1.001 * gc)).delta < 0.05);

    const double g_strong = 100.0 * 16;
    const auto strong = solve_gap(p.with_coupling(g_strong));
    CHECK(std::abs(strong.delta / (g_strong * 16 / 2) - 1.0) < 1e-4);

    double last = 0.0;
    for (double r = 1.05; r < 40.0; r *= 1.4) {
        const auto s = solve_gap(p.with_coupling(r * gc));
        CHECK(s.delta > last);
        CHECK(std::abs(gap_residual(s)) <= 1e-10);
        CHECK(2.0 * s.f.sum() == doctest::Approx(16.0).epsilon(1e-9));
        for (int k = 0; k < 16; ++k) {
            CHECK(s.u[k] * s.u[k] + s.v[k] * s.v[k] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(s.u[k] * s.v[k] == doctest::Approx(s.delta / (2.0 * s.lambda[k])).epsilon(1e-12));
            CHECK(s.f[k] == doctest::Approx(0.5 * (1.0 - s.eps_tilde[k] / s.lambda[k])).epsilon(1e-12));
        }
        last = s.delta;
    }
    CHECK(chemical_potential(p) == doctest::Approx(8.5));
    CHECK_THROWS_AS(bcs_at_gap(p, -1.0), ArgumentError);
}

TEST_CASE("BCS energy against the Fock-space expectation")
{
    const auto p = model(4, 1.7);
    const auto sol = solve_gap(p);
    REQUIRE(sol.delta > 0.0);
    const Eigen::MatrixXd hf = fock_hamiltonian(p);
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(hf.rows());
    for (Mask m = 0; m < 16; ++m) {
        Eigen::Index index = 0;
        double amp = 1.0;
        for (int k = 1; k <= 4; ++k) {
            const bool occ = (m >> (k - 1)) & 1u;
            amp *= occ ? sol.v[k - 1] : sol.u[k - 1];
            if (occ)
                index |= Eigen::Index{3} << (2 * (k - 1));
        }
        psi[index] = amp;
    }
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bcs_energy(p, sol) == doctest::Approx(psi.dot(hf * psi)).epsilon(1e-12));
}

TEST_CASE("BCS entropies and the quasiparticle density")
{
    const auto p = model(16, 0.0);
    const double gc = critical_coupling(p).exact;

    const auto zero = bcs_entropies(solve_gap(p.with_coupling(0.5 * gc)));
    CHECK(zero.e_one_body == 0.0);
    CHECK(zero.e_schmidt == 0.0);
    CHECK(zero.number_fluctuation == 0.0);
    CHECK(zero.e_qsp == doctest::Approx(0.0).epsilon(1e-10));

    for (double r : {1.2, 3.0, 30.0}) {
        const auto sol = solve_gap(p.with_coupling(r * gc));
        const auto e = bcs_entropies(sol);
        CHECK(e.e_schmidt == doctest::Approx(e.e_one_body / 2.0).epsilon(1e-14));
        CHECK(quadratic_entropy(bcs_occupations(sol)) ==
              doctest::Approx(2.0 * e.number_fluctuation).epsilon(1e-12));
        CHECK(e.qsp_max_deviation < 1e-10);
        CHECK(std::abs(e.e_qsp) < 1e-8);
        const auto q = qsp_matrix(sol);
        CHECK(q.rows() == 64);
        CHECK((q * q - q).cwiseAbs().maxCoeff() < 1e-10);
    }
    const auto strong = bcs_entropies(solve_gap(p.with_coupling(1600.0)));
    CHECK(strong.e_one_body / 32.0 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("BCS four-mode block")
{
    const auto p = model(16, 0.0);
    const auto sol = solve_gap(p.with_coupling(1.0));
    for (auto [k, kp] : {std::pair{8, 9}, std::pair{1, 16}, std::pair{2, 11}}) {
        const auto b = bcs_four_mode(sol, k, kp);
        CHECK_NOTHROW(b.validate());
        CHECK(concurrence_closed(b) < 1e-15);
        CHECK(b.pair_transfer ==
              doctest::Approx(sol.u[k - 1] * sol.v[k - 1] * sol.u[kp - 1] * sol.v[kp - 1]));
        CHECK(two_qubit_rep(b).czz == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(bcs_four_mode(sol, 3, 3), ArgumentError);

    const auto half = bcs_four_mode(bcs_at_gap(model(2, 0.0), 1e9), 1, 2);
    const auto w = hermitian_eigenvalues(half.matrix());
    CHECK(w.minCoeff() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(w.maxCoeff() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(vn_entropy(half.matrix()) == doctest::Approx(1.5).epsilon(1e-9));

    const auto slater = bcs_four_mode(solve_gap(p.with_coupling(0.1)), 8, 9);
    CHECK(mutual_information(slater) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("projected BCS state")
{
    const auto p16 = model(16, 1.0);
    const auto uniform = pbcs_state(p16, 1e6 * 16);
    CHECK(schmidt_entropy(uniform) == doctest::Approx(std::log2(12870.0)).epsilon(1e-9));
    const auto sea = pbcs_state(p16, 0.0);
    CHECK(sea.amps[0] == doctest::Approx(1.0));
    CHECK(sea.amps.tail(sea.dim() - 1).cwiseAbs().maxCoeff() == 0.0);

    for (double delta : {0.1, 0.8, 5.0}) {
        const auto p2 = model(2, 0.4);
        const auto sol = bcs_at_gap(p2, delta);
        const auto s = pbcs_state(p2, delta);
        Eigen::Vector2d ref(sol.v[0] * sol.u[1], sol.u[0] * sol.v[1]);
        ref.normalize();
        CHECK((s.amps - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("projected BCS optimization")
{
    const auto p = model(10, 0.0);
    const auto g0 = pbcs_optimize(p);
    CHECK(g0.delta_var == 0.0);
    CHECK(g0.energy == doctest::Approx(2.0 * (1 + 2 + 3 + 4 + 5)));

    const double gc = critical_coupling(p).exact;
    for (double r : {0.3, 0.9, 1.5, 4.0}) {
        const auto q = p.with_coupling(r * gc);
        const auto opt = pbcs_optimize(q);
        const double exact = ground_state(q).energy.value();
        const auto pav = pbcs_state(q, solve_gap(q).delta);
        CHECK(opt.delta_var > 0.0);
        CHECK(opt.energy >= exact - 1e-9);
        CHECK(opt.energy <= energy_expectation(q, pav) + 1e-12);
        CHECK(opt.energy == doctest::Approx(energy_expectation(q, opt.state)).epsilon(1e-12));
        CHECK(opt.state.amps.norm() == doctest::Approx(1.0));
    }

    const auto p16 = model(16, 0.0);
    const auto near = pbcs_optimize(p16.with_coupling(critical_coupling(p16).exact));
    CHECK(concurrence_closed(four_mode_block(near.state, 8, 9)) > 0.0);
}

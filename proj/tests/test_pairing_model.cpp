#include <doctest.h>

#include <bit>
#include <random>
#include <vector>

#include "pairsim/errors.hpp"
#include "pairsim/pairing_model.hpp"

using namespace pairsim;

namespace {

ModelParams model(int omega, int pairs, double g, double eps = 1.0)
{
    ModelParams p;
    p.omega = omega;
    p.pairs = pairs;
    p.eps = eps;
    p.coupling = g;
    return p;
}

// Reference matrix straight from the second-quantized form: a pair hop
// changes exactly two bits, the diagonal carries the k = k' terms.
Eigen::MatrixXd reference_hamiltonian(const ModelParams& p)
{
    std::vector<Mask> configs;
    for (Mask m = 0; m < (Mask{1} << p.omega); ++m)
        if (std::popcount(m) == p.pairs)
            configs.push_back(m);
    const auto n = static_cast<Eigen::Index>(configs.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Mask a = configs[static_cast<std::size_t>(i)];
            const Mask b = configs[static_cast<std::size_t>(j)];
            if (i == j) {
                double e = 0.0;
                for (int k = 1; k <= p.omega; ++k)
                    if ((a >> (k - 1)) & 1u)
                        e += 2.0 * k * p.eps;
                h(i, j) = e - p.coupling * p.pairs;
            } else if (std::popcount(a ^ b) == 2) {
                h(i, j) = -p.coupling;
            }
        }
    return h;
}

} // namespace

TEST_CASE("binomial coefficients")
{
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK_THROWS_AS(binomial(70, 35), CapacityError);
}

TEST_CASE("basis enumeration is sorted and complete")
{
    const PairBasis b4(4, 2);
    const std::vector<Mask> expect{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};
    REQUIRE(b4.dim() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(b4.config(i) == expect[i]);

    const PairBasis b16(16, 8);
    std::size_t count = 0;
    for (Mask m = 0; m < (Mask{1} << 16); ++m)
        count += std::popcount(m) == 8 ? 1 : 0;
    CHECK(b16.dim() == count);
    CHECK(b16.dim() == 12870);
    CHECK(b16.config(b16.fermi_sea_index()) == 0xFFu);
    for (std::size_t i = 0; i < b16.dim(); ++i)
        REQUIRE(b16.rank(b16.config(i)) == i);
    CHECK_THROWS_AS(b16.rank(0b111), ArgumentError);
    CHECK(PairBasis::occupied(0b0101, 1));
    CHECK_FALSE(PairBasis::occupied(0b0101, 2));
    CHECK(PairBasis::occupied(0b0101, 3));
}

TEST_CASE("capacity and argument checks")
{
    CHECK_THROWS_AS(PairBasis(32, 16, 1000), CapacityError);
    CHECK_THROWS_AS(model(3, 1, 1.0).validate(), ArgumentError);
    CHECK_THROWS_AS(model(4, 5, 1.0).validate(), ArgumentError);
    CHECK_THROWS_AS(model(4, 2, -1.0).validate(), ArgumentError);
    CHECK_THROWS_AS(model(4, 2, 1.0, 0.0).validate(), ArgumentError);
    CHECK_THROWS_AS(model(64, 32, 1.0).validate(), CapacityError);
    CHECK_NOTHROW(model(16, 8, 0.0).validate());
}

TEST_CASE("level energies")
{
    const auto p = model(4, 2, 0.3, 0.5);
    CHECK(p.level_energy(1) == doctest::Approx(0.5));
    CHECK(p.level_energy(4) == doctest::Approx(2.0));
    CHECK_THROWS_AS(p.level_energy(5), ArgumentError);
    auto q = p;
    q.levels = {0.0, 1.0, 3.0, 7.0};
    CHECK(q.level_energy(3) == doctest::Approx(3.0));
    CHECK(diagonal_energy(q, 0b1010) == doctest::Approx(2.0 * (1.0 + 7.0) - 0.3 * 2));
}

TEST_CASE("omega = 2 Hamiltonian")
{
    const auto p = model(2, 1, 0.7);
    const auto basis = enumerate_basis(p);
    const auto h = dense_hamiltonian(p, basis);
    Eigen::Matrix2d expect;
    expect << 2.0 - 0.7, -0.7, -0.7, 4.0 - 0.7;
    CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::VectorXd x(2);
    x << 1.0, 0.0;
    const auto y = apply_hamiltonian(p, basis, x);
    CHECK(y[0] == doctest::Approx(1.3));
    CHECK(y[1] == doctest::Approx(-0.7));
    CHECK_THROWS_AS(apply_hamiltonian(p, basis, Eigen::VectorXd::Zero(3)), DimensionError);
}

TEST_CASE("dense and matrix-free Hamiltonians match the reference for omega <= 8")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int omega = 2; omega <= 8; omega += 2)
        for (int pairs = 1; pairs <= omega; ++pairs) {
            const auto p = model(omega, pairs, 0.37 * omega);
            const auto basis = enumerate_basis(p);
            const auto ref = reference_hamiltonian(p);
            const auto h = dense_hamiltonian(p, basis);
            REQUIRE(h.rows() == ref.rows());
            CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-13);
            CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

            Eigen::VectorXd x(h.rows());
            for (auto& v : x)
                v = normal(rng);
            CHECK((apply_hamiltonian(p, basis, x) - ref * x).cwiseAbs().maxCoeff() < 1e-12);

            // every configuration couples to pairs * (omega - pairs) others
            for (Eigen::Index i = 0; i < h.rows(); ++i) {
                Eigen::Index links = 0;
                for (Eigen::Index j = 0; j < h.cols(); ++j)
                    links += (i != j && h(i, j) != 0.0) ? 1 : 0;
                REQUIRE(links == pairs * (omega - pairs));
            }
        }
}

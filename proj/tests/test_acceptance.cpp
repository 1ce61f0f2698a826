#include <doctest.h>

#include "pairsim/acceptance.hpp"
#include "pairsim/errors.hpp"

using namespace pairsim;

namespace {

ScanResult small_scan()
{
    ScanConfig c;
    c.omega = 8;
    c.g_points = 30;
    return run_scan(c.resolved());
}

} // namespace

TEST_CASE("concurrence oracle detects a wrong conjugation matrix")
{
    AcceptanceSuite suite;
    suite.use_scan(small_scan());

    const auto good = suite.concurrence_oracle();
    CHECK(good.passed);
    CHECK(good.id == 3);

    const auto identity = suite.concurrence_oracle(Matrix8c::Identity());
    CHECK_FALSE(identity.passed);

    Matrix8c shifted = parity_conjugation();
    shifted.col(1).swap(shifted.col(2));
    CHECK_FALSE(suite.concurrence_oracle(shifted).passed);
}

TEST_CASE("criterion bookkeeping")
{
    AcceptanceSuite suite;
    CHECK(AcceptanceSuite::strong_coupling(2));
    CHECK(AcceptanceSuite::strong_coupling(10));
    CHECK_FALSE(AcceptanceSuite::strong_coupling(3));
    CHECK_THROWS_AS(suite.run(11), ArgumentError);

    const auto r = suite.run(1);
    CHECK(r.id == 1);
    CHECK(r.passed);
    const auto line = format_result(r);
    CHECK(line.starts_with("[PASS] 1 "));

    CriterionResult failed{4, "x", false, "d", 0.0};
    CHECK(format_result(failed).starts_with("[FAIL] 4 x: d"));
}

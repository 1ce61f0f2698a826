#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pairsim/entanglement.hpp"
#include "pairsim/scan.hpp"

namespace pairsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; ///< measured values, tolerances and margins
    double seconds = 0.0;
};

enum class VerifyLevel { fast, full };

/// The ten acceptance criteria. The omega = 16 scan and the strong-coupling
/// ground state are computed once and shared between criteria.
class AcceptanceSuite {
public:
    explicit AcceptanceSuite(unsigned threads = 0);

    static constexpr int kCount = 10;
    /// Criteria skipped by the fast level (omega = 16 strong-coupling runs).
    static bool strong_coupling(int id) { return id == 2 || id == 10; }

    CriterionResult run(int id);
    std::vector<CriterionResult> run_all(VerifyLevel level,
                                         const std::function<void(const CriterionResult&)>& on_result = {});

    CriterionResult omega2_analytic();
    CriterionResult strong_coupling_limits_check();
    /// `conj` replaces the conjugation matrix of the general concurrence.
    CriterionResult concurrence_oracle(const Matrix8c& conj = parity_conjugation());
    CriterionResult bcs_identities();
    CriterionResult gap_equation();
    CriterionResult relative_entropy_minimum();
    CriterionResult fock_oracle();
    CriterionResult concurrence_peak();
    CriterionResult projected_bcs();
    CriterionResult discord_asymptote();

    const ScanResult& default_scan();
    const PairStateVector& strong_state();
    /// Replaces the shared scan (smaller grids for tests).
    void use_scan(ScanResult scan) { scan_ = std::move(scan); }

private:
    unsigned threads_;
    std::optional<ScanResult> scan_;
    std::optional<PairStateVector> strong_;
};

/// One line per criterion: "[PASS] 3 name: detail".
std::string format_result(const CriterionResult& r);

} // namespace pairsim

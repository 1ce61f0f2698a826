#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pairsim/exact_solver.hpp"
#include "pairsim/pairing_model.hpp"

namespace pairsim {

/// pav: projection after variation, the projected state at the BCS gap.
enum class Method { exact, bcs, pbcs, pav };

std::string to_string(Method m);
/// Accepts "exact", "bcs", "pbcs", "pav"; throws ArgumentError otherwise.
Method parse_method(const std::string& name);

struct LevelPair {
    int k = 0;
    int kp = 0;
    friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

/// Parses "k:k'[,k:k']".
std::vector<LevelPair> parse_level_pairs(const std::string& text);
std::vector<Method> parse_methods(const std::string& text);

struct ScanConfig {
    int omega = 16;
    int pairs = 0;         ///< 0 means omega / 2
    double eps = 1.0;
    double g_min = 0.02;   ///< in units of eps
    double g_max = 0.0;    ///< 0 means 10 omega eps
    int g_points = 60;
    bool g_log = true;
    bool include_zero = true;
    std::vector<LevelPair> level_pairs; ///< empty means the three default pairs
    std::vector<Method> methods{Method::exact, Method::bcs, Method::pbcs};
    std::string out_dir = "pairsim-out";
    unsigned threads = 0;  ///< 0 means hardware concurrency

    /// Fills the defaulted fields and validates.
    ScanConfig resolved() const;
    void validate() const;

    ModelParams params(double g) const;
    /// Coupling values (absolute, not divided by eps), ascending.
    std::vector<double> grid() const;
    /// Sorted distinct levels appearing in level_pairs.
    std::vector<int> levels() const;
};

/// (omega/2, omega/2 + 1), (1, omega), (omega/2 - 1, omega/2 + 2).
std::vector<LevelPair> default_level_pairs(int omega);

struct PairMeasures {
    LevelPair levels;
    FourModeEvenBlock block;
    double concurrence = 0.0;
    double e_pair = 0.0;
    double mutual_information = 0.0;
    double discord = 0.0;
};

struct PointResult {
    Method method = Method::exact;
    double g = 0.0;
    double energy = 0.0;
    double e_one_body = 0.0;
    double e_schmidt = 0.0;
    double delta = 0.0;       ///< BCS gap or PBCS variational gap; nan for exact
    bool boundary = false;    ///< PBCS optimum on the search boundary
    std::vector<double> h_f;  ///< h(f_k) for ScanConfig::levels()
    std::vector<PairMeasures> pairs;
};

PairMeasures pair_measures(const FourModeEvenBlock& block, LevelPair levels);

/// Evaluates one method at one coupling. `basis` may be shared across calls.
PointResult evaluate_point(const ScanConfig& config, Method method, double g,
                           std::shared_ptr<const PairBasis> basis = nullptr);

struct ScanResult {
    ScanConfig config;
    std::vector<double> g;
    std::vector<std::vector<PointResult>> rows; ///< rows[method index][grid index]

    const std::vector<PointResult>* rows_for(Method m) const;
};

ScanResult run_scan(const ScanConfig& config);

/// 12 significant digits, "nan" for non-finite values.
std::string format_number(double x);

std::string csv_header(const ScanConfig& config);
std::string csv_table(const ScanResult& result, Method m);

/// Writes scan_<method>.csv and fig1..fig6 SVG files into config.out_dir.
/// Returns the paths written.
std::vector<std::string> write_scan(const ScanResult& result);

/// Applies `fn` to 0..n-1 on a worker pool; results are stored by index, so
/// the output does not depend on scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn, unsigned threads = 0)
{
    std::vector<T> out(n);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace pairsim

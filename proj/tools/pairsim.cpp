// pairsim: coupling scans, single-point reports, strong-coupling tables and
// the acceptance suite for the pairing model.
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pairsim/acceptance.hpp"
#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/meanfield.hpp"
#include "pairsim/scan.hpp"

using namespace pairsim;

namespace {

void print_point(const ScanConfig& cfg, double g)
{
    const double gc = critical_coupling(cfg.params(g)).exact;
    std::cout << "omega = " << cfg.omega << ", pairs = " << cfg.pairs << ", eps = "
              << format_number(cfg.eps) << ", G/eps = " << format_number(g / cfg.eps)
              << ", G/G_c = " << format_number(g / gc) << "\n";
    for (Method m : cfg.methods) {
        const auto r = evaluate_point(cfg, m, g);
        std::cout << "\n[" << to_string(m) << "]\n";
        const auto row = [](const std::string& label, double v) {
            std::cout << "  " << std::left << std::setw(22) << label << format_number(v) << "\n";
        };
        row("energy/eps", r.energy / cfg.eps);
        row("E", r.e_one_body);
        row("E/(2 omega)", r.e_one_body / (2.0 * cfg.omega));
        row("E_schmidt", r.e_schmidt);
        if (m != Method::exact)
            row("delta/eps", r.delta / cfg.eps);
        if (r.boundary)
            std::cout << "  (variational gap on the search boundary)\n";
        const auto levels = cfg.levels();
        for (std::size_t i = 0; i < levels.size(); ++i)
            row("h(f_" + std::to_string(levels[i]) + ")", r.h_f[i]);
        for (const auto& p : r.pairs) {
            const std::string t = "(" + std::to_string(p.levels.k) + "," + std::to_string(p.levels.kp) + ")";
            row("C" + t, p.concurrence);
            row("E_pair" + t, p.e_pair);
            row("I" + t, p.mutual_information);
            row("D" + t, p.discord);
        }
    }
}

void print_limits(int omega, double eps)
{
    const auto l = strong_coupling_limits(omega);
    const auto blk = strong_coupling_block(omega);
    ModelParams p;
    p.omega = omega;
    p.pairs = omega / 2;
    p.eps = eps;
    const auto gc = critical_coupling(p);
    const auto row = [](const std::string& label, double closed, double measured) {
        std::cout << std::left << std::setw(30) << label << std::setw(20) << format_number(closed)
                  << format_number(measured) << "\n";
    };
    std::cout << "omega = " << omega << " (G -> infinity)\n";
    std::cout << std::left << std::setw(30) << "quantity" << std::setw(20) << "closed form"
              << "uniform-state block\n";
    row("<n_k n_k'>", l.nn, blk.nn);
    row("<n_k (1 - n_k')>", l.inner, blk.n_tilde);
    row("C_kk'", l.c, concurrence_closed(blk));
    row("I_kk' ~ (1 + 1/omega)/2", l.i_approx, mutual_information(blk));
    row("S(block) ~ (3 - 1/omega)/2", l.s_approx, vn_entropy(blk.matrix()));
    row("D_kk'", l.d_approx, discord(blk));
    row("D_kk' (omega -> inf)", l.d_inf, l.d_inf);
    std::cout << "\nG_c/eps exact sum   " << format_number(gc.exact / eps) << "\n";
    std::cout << "G_c/eps estimate    " << format_number(gc.estimate / eps) << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pairsim: entanglement in the ground state of the pairing model"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (command-line flags win)");

    ScanConfig cfg;
    std::string level_pairs;
    std::string methods = "exact,bcs,pbcs";
    app.add_option("--omega", cfg.omega, "number of doubly degenerate levels")
        ->envname("PAIRSIM_OMEGA")->capture_default_str();
    app.add_option("--pairs", cfg.pairs, "number of pairs (0 = omega/2)")
        ->envname("PAIRSIM_PAIRS")->capture_default_str();
    app.add_option("--eps", cfg.eps, "level spacing")->envname("PAIRSIM_EPS")->capture_default_str();
    app.add_option("--g-min", cfg.g_min, "smallest G/eps of the grid")
        ->envname("PAIRSIM_G_MIN")->capture_default_str();
    app.add_option("--g-max", cfg.g_max, "largest G/eps of the grid (0 = 10 omega)")
        ->envname("PAIRSIM_G_MAX")->capture_default_str();
    app.add_option("--g-points", cfg.g_points, "grid points besides G = 0")
        ->envname("PAIRSIM_G_POINTS")->capture_default_str();
    app.add_option("--g-log", cfg.g_log, "logarithmic grid (true/false)")
        ->envname("PAIRSIM_G_LOG")->capture_default_str();
    app.add_option("--pairs-of-levels", level_pairs, "k:k'[,k:k'] (default: omega/2:omega/2+1,1:omega,...)")
        ->envname("PAIRSIM_PAIRS_OF_LEVELS");
    app.add_option("--methods", methods, "subset of exact,bcs,pbcs,pav (pav: projection after variation)")
        ->envname("PAIRSIM_METHODS")->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->envname("PAIRSIM_OUT")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->envname("PAIRSIM_THREADS")->capture_default_str();

    auto* scan_cmd = app.add_subcommand("scan", "sweep G and write CSV tables and SVG figures");
    auto* point_cmd = app.add_subcommand("point", "evaluate every measure at one coupling");
    double g = 1.0;
    point_cmd->add_option("--g", g, "coupling G/eps")->envname("PAIRSIM_G")->required();
    auto* limits_cmd = app.add_subcommand("limits", "strong-coupling closed forms and G_c");
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    std::string level = "fast";
    verify_cmd->add_option("--level", level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}))->envname("PAIRSIM_LEVEL")->capture_default_str();
    for (auto* sub : {scan_cmd, point_cmd, limits_cmd, verify_cmd})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!level_pairs.empty())
            cfg.level_pairs = parse_level_pairs(level_pairs);
        cfg.methods = parse_methods(methods);

        if (*scan_cmd) {
            const auto res = run_scan(cfg);
            for (const auto& path : write_scan(res))
                std::cout << path << "\n";
        } else if (*point_cmd) {
            const auto c = cfg.resolved();
            print_point(c, g * c.eps);
        } else if (*limits_cmd) {
            print_limits(cfg.omega, cfg.eps);
        } else if (*verify_cmd) {
            AcceptanceSuite suite(cfg.threads);
            bool ok = true;
            suite.run_all(level == "full" ? VerifyLevel::full : VerifyLevel::fast,
                          [&](const CriterionResult& r) {
                              ok = ok && r.passed;
                              std::cout << format_result(r) << std::endl;
                          });
            std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const pairsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

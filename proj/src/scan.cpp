#include "pairsim/scan.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

#include "pairsim/entanglement.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/meanfield.hpp"
#include "pairsim/svg_plot.hpp"

namespace pairsim {

std::string to_string(Method m)
{
    switch (m) {
    case Method::exact: return "exact";
    case Method::bcs: return "bcs";
    case Method::pbcs: return "pbcs";
    case Method::pav: return "pav";
    }
    return "unknown";
}

Method parse_method(const std::string& name)
{
    if (name == "exact")
        return Method::exact;
    if (name == "bcs")
        return Method::bcs;
    if (name == "pbcs")
        return Method::pbcs;
    if (name == "pav")
        return Method::pav;
    throw ArgumentError("unknown method '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

std::vector<LevelPair> parse_level_pairs(const std::string& text)
{
    std::vector<LevelPair> out;
    for (const auto& item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ArgumentError("level pair '" + item + "' is not of the form k:k'");
        try {
            std::size_t used = 0;
            LevelPair p;
            p.k = std::stoi(item.substr(0, colon), &used);
            if (used != colon)
                throw std::invalid_argument(item);
            const std::string rest = item.substr(colon + 1);
            p.kp = std::stoi(rest, &used);
            if (used != rest.size())
                throw std::invalid_argument(item);
            out.push_back(p);
        } catch (const std::logic_error&) {
            throw ArgumentError("level pair '" + item + "' is not of the form k:k'");
        }
    }
    return out;
}

std::vector<Method> parse_methods(const std::string& text)
{
    std::vector<Method> out;
    for (const auto& item : split(text, ','))
        out.push_back(parse_method(item));
    return out;
}

std::vector<LevelPair> default_level_pairs(int omega)
{
    const int h = omega / 2;
    std::vector<LevelPair> out{{h, h + 1}, {1, omega}};
    if (h - 1 >= 1 && h + 2 <= omega)
        out.push_back({h - 1, h + 2});
    // small omega may produce repeats
    std::vector<LevelPair> uniq;
    for (const auto& p : out)
        if (p.k != p.kp && std::find(uniq.begin(), uniq.end(), p) == uniq.end())
            uniq.push_back(p);
    return uniq;
}

ScanConfig ScanConfig::resolved() const
{
    ScanConfig c = *this;
    if (c.pairs == 0)
        c.pairs = c.omega / 2;
    if (c.g_max == 0.0)
        c.g_max = 10.0 * c.omega;
    if (c.level_pairs.empty())
        c.level_pairs = default_level_pairs(c.omega);
    c.validate();
    return c;
}

void ScanConfig::validate() const
{
    params(0.0).validate();
    if (!(g_min >= 0.0))
        throw ArgumentError("g-min must be nonnegative");
    if (!(g_max > g_min))
        throw ArgumentError("g-max must exceed g-min");
    if (g_points < 2)
        throw ArgumentError("g-points must be at least 2");
    if (g_log && !(g_min > 0.0))
        throw ArgumentError("a log grid needs g-min > 0");
    if (methods.empty())
        throw ArgumentError("no methods selected");
    for (std::size_t i = 0; i < level_pairs.size(); ++i) {
        const auto& p = level_pairs[i];
        if (p.k < 1 || p.k > omega || p.kp < 1 || p.kp > omega || p.k == p.kp)
            throw ArgumentError("invalid level pair " + std::to_string(p.k) + ":" +
                                std::to_string(p.kp));
        for (std::size_t j = 0; j < i; ++j)
            if (level_pairs[j] == p)
                throw ArgumentError("duplicate level pair");
    }
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (methods[i] == methods[j])
                throw ArgumentError("duplicate method");
}

ModelParams ScanConfig::params(double g) const
{
    ModelParams p;
    p.omega = omega;
    p.pairs = pairs == 0 ? omega / 2 : pairs;
    p.eps = eps;
    p.coupling = g;
    return p;
}

std::vector<double> ScanConfig::grid() const
{
    std::vector<double> g;
    if (include_zero && g_min > 0.0)
        g.push_back(0.0);
    for (int i = 0; i < g_points; ++i) {
        const double t = static_cast<double>(i) / (g_points - 1);
        const double x = g_log ? g_min * std::pow(g_max / g_min, t) : g_min + t * (g_max - g_min);
        g.push_back(x * eps);
    }
    return g;
}

std::vector<int> ScanConfig::levels() const
{
    std::set<int> s;
    for (const auto& p : level_pairs) {
        s.insert(p.k);
        s.insert(p.kp);
    }
    return {s.begin(), s.end()};
}

PairMeasures pair_measures(const FourModeEvenBlock& block, LevelPair levels)
{
    PairMeasures m;
    m.levels = levels;
    m.block = block;
    m.concurrence = concurrence_closed(block);
    m.e_pair = eof_from_concurrence(std::min(m.concurrence, 1.0)).e_pair;
    m.mutual_information = mutual_information(block);
    m.discord = discord(block);
    return m;
}

PointResult evaluate_point(const ScanConfig& config, Method method, double g,
                           std::shared_ptr<const PairBasis> basis)
{
    const ModelParams params = config.params(g);
    PointResult r;
    r.method = method;
    r.g = g;

    const auto fill_from_state = [&](const PairStateVector& state) {
        const auto prof = occupations(state);
        r.e_one_body = one_body_entropy(prof);
        r.e_schmidt = schmidt_entropy(state);
        for (int k : config.levels())
            r.h_f.push_back(binary_entropy(prof(k)));
        for (const auto& p : config.level_pairs)
            r.pairs.push_back(pair_measures(four_mode_block(state, p.k, p.kp), p));
    };

    if (method != Method::bcs && !basis)
        basis = std::make_shared<const PairBasis>(params.omega, params.pairs);

    switch (method) {
    case Method::exact: {
        r.delta = std::numeric_limits<double>::quiet_NaN();
        PairStateVector state;
        if (g == 0.0) {
            state = pbcs_state(params, 0.0, basis);
            r.energy = energy_expectation(params, state);
        } else {
            state = ground_state(params, basis);
            r.energy = *state.energy;
        }
        fill_from_state(state);
        break;
    }
    case Method::pbcs: {
        const auto sol = pbcs_optimize(params, basis);
        r.delta = sol.delta_var;
        r.boundary = sol.boundary;
        r.energy = sol.energy;
        fill_from_state(sol.state);
        break;
    }
    case Method::pav: {
        const auto gap = solve_gap(params).delta;
        const auto state = pbcs_state(params, gap, basis);
        r.delta = gap;
        r.energy = energy_expectation(params, state);
        fill_from_state(state);
        break;
    }
    case Method::bcs: {
        const auto sol = solve_gap(params);
        r.delta = sol.delta;
        r.energy = bcs_energy(params, sol);
        const auto ent = bcs_entropies(sol);
        r.e_one_body = ent.e_one_body;
        r.e_schmidt = ent.e_schmidt;
        for (int k : config.levels())
            r.h_f.push_back(binary_entropy(sol.f[k - 1]));
        for (const auto& p : config.level_pairs)
            r.pairs.push_back(pair_measures(bcs_four_mode(sol, p.k, p.kp), p));
        break;
    }
    }
    return r;
}

const std::vector<PointResult>* ScanResult::rows_for(Method m) const
{
    for (std::size_t i = 0; i < config.methods.size(); ++i)
        if (config.methods[i] == m)
            return &rows[i];
    return nullptr;
}

ScanResult run_scan(const ScanConfig& config)
{
    ScanResult res;
    res.config = config.resolved();
    res.g = res.config.grid();
    const auto& c = res.config;

    std::shared_ptr<const PairBasis> basis;
    for (Method m : c.methods)
        if (m != Method::bcs)
            basis = std::make_shared<const PairBasis>(c.omega, c.params(0.0).pairs);

    const std::size_t ng = res.g.size();
    const auto flat = parallel_map<PointResult>(
        c.methods.size() * ng,
        [&](std::size_t i) { return evaluate_point(c, c.methods[i / ng], res.g[i % ng], basis); },
        c.threads);
    res.rows.resize(c.methods.size());
    for (std::size_t i = 0; i < flat.size(); ++i)
        res.rows[i / ng].push_back(flat[i]);
    return res;
}

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return "nan";
    if (x == 0.0)
        return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string pair_tag(const LevelPair& p)
{
    return std::to_string(p.k) + "_" + std::to_string(p.kp);
}

double log2_binomial(int n, int k)
{
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

} // namespace

std::string csv_header(const ScanConfig& config)
{
    std::ostringstream os;
    os << "G_over_eps[1],energy[eps],E_over_2Omega[1],E_schmidt_scaled[1],delta_over_g[1]";
    for (int k : config.levels())
        os << ",h_f_" << k << "[bit]";
    for (const auto& p : config.level_pairs) {
        const auto t = pair_tag(p);
        os << ",C_" << t << "[1],E_pair_" << t << "[bit],I_" << t << "[bit],D_" << t << "[bit]";
    }
    return os.str();
}

std::string csv_table(const ScanResult& result, Method m)
{
    const auto* rows = result.rows_for(m);
    if (!rows)
        throw ArgumentError("method " + to_string(m) + " was not scanned");
    const auto& c = result.config;
    const double schmidt_max = log2_binomial(c.omega, c.params(0.0).pairs);
    std::ostringstream os;
    os << csv_header(c) << '\n';
    for (const auto& r : *rows) {
        const double half_g = r.g * c.omega / 2.0;
        const double dg = (std::isfinite(r.delta) && half_g > 0.0)
                              ? r.delta / half_g
                              : std::numeric_limits<double>::quiet_NaN();
        os << format_number(r.g / c.eps) << ',' << format_number(r.energy / c.eps) << ','
           << format_number(r.e_one_body / (2.0 * c.omega)) << ','
           << format_number(schmidt_max > 0.0 ? r.e_schmidt / schmidt_max : 0.0) << ','
           << format_number(dg);
        for (double h : r.h_f)
            os << ',' << format_number(h);
        for (const auto& p : r.pairs)
            os << ',' << format_number(p.concurrence) << ',' << format_number(p.e_pair) << ','
               << format_number(p.mutual_information) << ',' << format_number(p.discord);
        os << '\n';
    }
    return os.str();
}

namespace {

template <typename Fn>
Series make_series(const ScanResult& res, Method m, const std::string& label, Fn value,
                   bool dashed = false)
{
    Series s;
    s.label = label;
    s.dashed = dashed;
    const auto* rows = res.rows_for(m);
    if (!rows)
        return s;
    for (const auto& r : *rows) {
        s.x.push_back(r.g / res.config.eps);
        s.y.push_back(value(r));
    }
    return s;
}

void add_if(Chart& chart, const ScanResult& res, Method m, Series s)
{
    if (res.rows_for(m))
        chart.series.push_back(std::move(s));
}

} // namespace

std::vector<std::string> write_scan(const ScanResult& res)
{
    const auto& c = res.config;
    std::error_code ec;
    std::filesystem::create_directories(c.out_dir, ec);
    if (ec)
        throw Error("cannot create output directory " + c.out_dir + ": " + ec.message());

    std::vector<std::string> written;
    const auto put = [&](const std::string& name, const std::string& text) {
        const auto path = (std::filesystem::path(c.out_dir) / name).string();
        write_text_file(path, text);
        written.push_back(path);
    };
    for (Method m : c.methods)
        put("scan_" + to_string(m) + ".csv", csv_table(res, m));

    const double two_omega = 2.0 * c.omega;
    const double schmidt_max = log2_binomial(c.omega, c.params(0.0).pairs);
    const auto levels = c.levels();
    const auto level_index = [&](int k) -> int {
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (levels[i] == k)
                return static_cast<int>(i);
        return -1;
    };
    const std::string xl = "G/eps";

    {
        Chart ch{"One-body entanglement entropy and scaled gap", xl, "E/(2 Omega), Delta/g", true, {}};
        const auto e = [&](const PointResult& r) { return r.e_one_body / two_omega; };
        add_if(ch, res, Method::exact, make_series(res, Method::exact, "exact E/(2 Omega)", e));
        add_if(ch, res, Method::bcs, make_series(res, Method::bcs, "BCS E/(2 Omega)", e));
        add_if(ch, res, Method::bcs,
               make_series(res, Method::bcs, "BCS Delta/g",
                           [&](const PointResult& r) {
                               return r.g > 0.0 ? r.delta / (r.g * c.omega / 2.0) : 0.0;
                           },
                           true));
        put("fig1_one_body_entropy.svg", render_svg(ch));
    }
    {
        Chart ch{"Single-mode entropy h(f_k)", xl, "h(f_k)", true, {}};
        for (int k : {c.omega / 2, 1}) {
            const int i = level_index(k);
            if (i < 0)
                continue;
            const auto h = [i](const PointResult& r) { return r.h_f[static_cast<std::size_t>(i)]; };
            const std::string tag = "k=" + std::to_string(k);
            add_if(ch, res, Method::exact, make_series(res, Method::exact, "exact " + tag, h));
            add_if(ch, res, Method::bcs, make_series(res, Method::bcs, "BCS " + tag, h, true));
        }
        put("fig2_mode_entropy.svg", render_svg(ch));
    }
    {
        Chart ch{"One-body vs Schmidt entropy (exact)", xl, "scaled entropy", true, {}};
        add_if(ch, res, Method::exact,
               make_series(res, Method::exact, "E/(2 Omega)",
                           [&](const PointResult& r) { return r.e_one_body / two_omega; }));
        add_if(ch, res, Method::exact,
               make_series(res, Method::exact, "E_schmidt scaled",
                           [&](const PointResult& r) { return r.e_schmidt / schmidt_max; }, true));
        put("fig3_schmidt_entropy.svg", render_svg(ch));
    }
    {
        Chart ch{"Pair entanglement of formation E_kk'", xl, "E_kk'", true, {}};
        for (std::size_t j = 0; j < c.level_pairs.size(); ++j) {
            const auto v = [j](const PointResult& r) { return r.pairs[j].e_pair; };
            const std::string tag = "(" + std::to_string(c.level_pairs[j].k) + "," +
                                    std::to_string(c.level_pairs[j].kp) + ")";
            add_if(ch, res, Method::exact, make_series(res, Method::exact, "exact " + tag, v));
        }
        if (!c.level_pairs.empty())
            add_if(ch, res, Method::bcs,
                   make_series(res, Method::bcs, "BCS (all pairs)",
                               [](const PointResult& r) { return r.pairs[0].e_pair; }, true));
        put("fig4_pair_entanglement.svg", render_svg(ch));
    }
    {
        Chart ch{"Mutual information and discord", xl, "bits", true, {}};
        for (std::size_t j = 0; j < std::min<std::size_t>(2, c.level_pairs.size()); ++j) {
            const std::string tag = "(" + std::to_string(c.level_pairs[j].k) + "," +
                                    std::to_string(c.level_pairs[j].kp) + ")";
            const auto mi = [j](const PointResult& r) { return r.pairs[j].mutual_information; };
            const auto d = [j](const PointResult& r) { return r.pairs[j].discord; };
            add_if(ch, res, Method::exact, make_series(res, Method::exact, "I exact " + tag, mi));
            add_if(ch, res, Method::exact, make_series(res, Method::exact, "D exact " + tag, d));
            add_if(ch, res, Method::bcs, make_series(res, Method::bcs, "I BCS " + tag, mi, true));
            add_if(ch, res, Method::bcs, make_series(res, Method::bcs, "D BCS " + tag, d, true));
        }
        put("fig5_mutual_information_discord.svg", render_svg(ch));
    }
    {
        Chart ch{"Exact vs projected BCS", xl, "E_kk', E/(2 Omega), Delta E/(2 Omega)", true, {}};
        if (!c.level_pairs.empty()) {
            const auto v = [](const PointResult& r) { return r.pairs[0].e_pair; };
            add_if(ch, res, Method::exact, make_series(res, Method::exact, "exact E_kk'", v));
            add_if(ch, res, Method::pbcs, make_series(res, Method::pbcs, "PBCS E_kk'", v, true));
        }
        const auto e = [&](const PointResult& r) { return r.e_one_body / two_omega; };
        add_if(ch, res, Method::exact, make_series(res, Method::exact, "exact E/(2 Omega)", e));
        add_if(ch, res, Method::pbcs, make_series(res, Method::pbcs, "PBCS E/(2 Omega)", e, true));
        const auto* ex = res.rows_for(Method::exact);
        const auto* pb = res.rows_for(Method::pbcs);
        if (ex && pb) {
            Series s;
            s.label = "(E_PBCS - E_exact)/(2 Omega)";
            for (std::size_t i = 0; i < ex->size(); ++i) {
                s.x.push_back((*ex)[i].g / c.eps);
                s.y.push_back(((*pb)[i].energy - (*ex)[i].energy) / two_omega);
            }
            ch.series.push_back(std::move(s));
        }
        put("fig6_projected_bcs.svg", render_svg(ch));
    }
    return written;
}

} // namespace pairsim

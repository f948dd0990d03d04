#include "uavmec/sweep.hpp"

#include "uavmec/antenna.hpp"
#include "uavmec/errors.hpp"

#include <boost/crc.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace uavmec::sweep {

using config::format_number;
using scenario::ScenarioSpec;

namespace {

struct Point
{
    std::optional<channel::BandKind> band;
    double series_value = 0.0;
    double axis_value = 0.0;
    std::size_t variant = 0;
    std::uint64_t seed = 0;
};

struct Outcome
{
    bool ok = false;
    ResultRow row;
    std::string reason;
};

std::vector<StrategyVariant> variants_of(const SweepSpec& s)
{
    if (!s.strategies.empty())
        return s.strategies;
    return {StrategyVariant{s.base.spec.strategy, std::nullopt}};
}

std::vector<Point> enumerate(const SweepSpec& s)
{
    std::vector<std::optional<channel::BandKind>> bands;
    for (auto b : s.bands)
        bands.emplace_back(b);
    if (bands.empty())
        bands.emplace_back(std::nullopt);
    const std::vector<double> series = s.series_axis.empty() ? std::vector<double>{0.0} : s.series_values;
    const std::vector<std::uint64_t> seeds = s.seeds.empty() ? std::vector{s.base.spec.radio.rng_seed} : s.seeds;
    const std::size_t n_variants = variants_of(s).size();

    std::vector<Point> pts;
    for (const auto& b : bands)
        for (double sv : series)
            for (double av : s.values)
                for (std::size_t v = 0; v < n_variants; ++v)
                    for (auto seed : seeds)
                        pts.push_back({b, sv, av, v, seed});
    return pts;
}

config::ResolvedConfig resolve(const SweepSpec& s, const Point& p)
{
    config::ResolvedConfig cfg = s.base;
    if (p.band)
        config::set_band(cfg, *p.band, config::Source::Flag);
    if (!s.series_axis.empty())
        config::set_field(cfg, s.series_axis, format_number(p.series_value), config::Source::Flag);
    config::set_field(cfg, s.axis, format_number(p.axis_value), config::Source::Flag);
    const StrategyVariant var = variants_of(s)[p.variant];
    cfg.spec.strategy = var.strategy;
    if (var.velocity)
        cfg.spec.velocity = *var.velocity;
    cfg.spec.radio.rng_seed = p.seed;
    return cfg;
}

Outcome evaluate_point(const SweepSpec& s, const Point& p)
{
    Outcome out;
    out.row.band = std::string(config::band_label(p.band ? *p.band : s.base.spec.radio.band.kind));
    out.row.series_value = p.series_value;
    out.row.axis_value = p.axis_value;
    out.row.strategy = variants_of(s)[p.variant].label();
    out.row.seed = p.seed;
    try {
        out.row.spec = resolve(s, p).spec;
        out.row.spec.validate();
        out.row.report = scenario::evaluate(out.row.spec);
        out.ok = true;
    } catch (const Error& e) {
        out.reason = e.what();
    }
    return out;
}

// Builds the shared gain tables up front so workers only read them.
void warm_tables(const SweepSpec& s, const std::vector<Point>& pts)
{
    std::set<std::tuple<int, int, double, double>> seen;
    for (const auto& p : pts) {
        try {
            const ScenarioSpec spec = resolve(s, p).spec;
            if (!scenario::uses_link(spec.strategy))
                continue;
            const auto& a = spec.radio.array;
            if (!seen.emplace(a.m_elems, a.n_elems, a.spacing_x, a.spacing_y).second)
                continue;
            a.validate();
            antenna::steered_array(a);
        } catch (const Error&) {
            // reported per point during evaluation
        }
    }
}

SweepResult collect(std::vector<Outcome>&& outcomes)
{
    SweepResult r;
    for (auto& o : outcomes) {
        if (o.ok)
            r.rows.push_back(std::move(o.row));
        else
            r.skipped.push_back({o.row.band, o.row.series_value, o.row.axis_value, o.row.strategy, o.row.seed,
                                 std::move(o.reason)});
    }
    return r;
}

std::string csv_field(std::string s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

const std::vector<std::string> output_columns = {
    "band",     "series_axis",  "series_value", "axis",    "axis_value", "strategy", "seed",
    "energy_j", "energy_stderr", "t_total",     "t_m",     "t_h",        "propulsion_j",
    "compute_j", "comm_j",      "r0_m",         "drops",   "warnings"};

} // namespace

std::string StrategyVariant::label() const
{
    std::string s(scenario::strategy_label(strategy));
    if (velocity)
        s += "@" + format_number(*velocity);
    return s;
}

StrategyVariant parse_variant(std::string_view text)
{
    StrategyVariant v;
    const auto at = text.find('@');
    const auto name = text.substr(0, at);
    auto st = scenario::parse_strategy(name);
    if (!st)
        throw ValidationError("unknown strategy '" + std::string(name) + "'");
    v.strategy = *st;
    if (at != std::string_view::npos)
        v.velocity = config::parse_number(text.substr(at + 1), "strategy velocity");
    return v;
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw ValidationError("sweep values must not be empty");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ValidationError("sweep values must be sorted ascending");
    const auto* f = config::find_field(axis);
    if (!f || !f->numeric)
        throw ValidationError("sweep axis '" + axis + "' is not a numeric field");
    if (axis == "seed")
        throw ValidationError("sweep over seeds with the seed list, not the axis");
    if (!series_axis.empty()) {
        const auto* g = config::find_field(series_axis);
        if (!g || !g->numeric)
            throw ValidationError("series axis '" + series_axis + "' is not a numeric field");
        if (series_values.empty() || !std::is_sorted(series_values.begin(), series_values.end()))
            throw ValidationError("series values must be non-empty and sorted ascending");
    }
    for (const auto& v : strategies)
        if (v.velocity && !(*v.velocity > 0.0))
            throw ValidationError("strategy velocity must be positive");
}

std::vector<double> log_space(double lo, double hi, int n)
{
    if (n == 1)
        return {lo};
    std::vector<double> out(static_cast<std::size_t>(n));
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < n; ++i)
        out[std::size_t(i)] = std::pow(10.0, a + (b - a) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_space(double lo, double hi, int n)
{
    if (n == 1)
        return {lo};
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[std::size_t(i)] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

SweepSpec preset(std::string_view name, const config::ResolvedConfig& base)
{
    using scenario::Strategy;
    SweepSpec s;
    s.base = base;
    s.preset = std::string(name);
    if (name == "fig1") {
        s.axis = "deployment.lambda_c";
        s.values = log_space(1e-8, 1e-6, 41);
        s.strategies = {{Strategy::HoverOnboard, {}}, {Strategy::HoverOffload, {}}};
        s.bands = {channel::BandKind::Sub6, channel::BandKind::MmWave, channel::BandKind::Thz};
    } else if (name == "fig2") {
        s.axis = "deployment.lambda_c";
        s.values = log_space(1e-8, 1e-6, 41);
        s.strategies = {{Strategy::HoverOffload, {}},
                        {Strategy::MoveReturnOffload, 10.0},
                        {Strategy::MoveReturnOffload, 20.0}};
        s.bands = {channel::BandKind::MmWave};
    } else if (name == "fig3") {
        s.axis = "q_bits";
        s.values = log_space(1e8, 1e12, 33);
        s.strategies = {{Strategy::HoverOffload, {}}, {Strategy::MoveReturnOffload, 20.0}};
        s.bands = {channel::BandKind::MmWave};
    } else if (name == "fig4") {
        s.axis = "mass.m_cp";
        s.values = lin_space(0.1, 2.0, 20);
        s.strategies = {{Strategy::MoveReturnOffload, {}},
                        {Strategy::MoveReturnParallel, {}},
                        {Strategy::HoverParallel, {}}};
        s.bands = {channel::BandKind::MmWave};
        s.series_axis = "compute.c_cp";
        s.series_values = {500.0, 1000.0, 2000.0};
    } else {
        throw ValidationError("unknown preset '" + std::string(name) + "' (expected fig1, fig2, fig3 or fig4)");
    }
    return s;
}

SweepResult run_sweep(const SweepSpec& spec, int threads)
{
    spec.validate();
    const std::vector<Point> pts = enumerate(spec);
    warm_tables(spec, pts);
    std::vector<Outcome> outcomes(pts.size());
    const int n = threads > 0 ? threads : omp_get_max_threads();
    const long count = long(pts.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(n)
    for (long i = 0; i < count; ++i)
        outcomes[std::size_t(i)] = evaluate_point(spec, pts[std::size_t(i)]);
    return collect(std::move(outcomes));
}

SweepResult run_sweep_serial(const SweepSpec& spec)
{
    spec.validate();
    const std::vector<Point> pts = enumerate(spec);
    std::vector<Outcome> outcomes;
    outcomes.reserve(pts.size());
    for (const auto& p : pts)
        outcomes.push_back(evaluate_point(spec, p));
    return collect(std::move(outcomes));
}

std::vector<std::string> csv_columns()
{
    std::vector<std::string> cols = output_columns;
    for (const auto& f : config::fields())
        cols.push_back("cfg." + f.path);
    return cols;
}

std::string csv_comment(const SweepSpec& spec)
{
    boost::crc_32_type crc;
    const std::string text = config::canonical_text(spec.base.spec);
    crc.process_bytes(text.data(), text.size());
    char hex[9];
    std::snprintf(hex, sizeof hex, "%08x", unsigned(crc.checksum()));
    std::string line = std::string("# uavmec ") + UAVMEC_VERSION + " csv-v1 config-crc32=" + hex;
    if (!spec.preset.empty())
        line += " preset=" + spec.preset;
    line += " axis=" + spec.axis;
    if (!spec.series_axis.empty())
        line += " series=" + spec.series_axis;
    return line;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result)
{
    out << csv_comment(spec) << "\n";
    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : result.rows) {
        const auto& e = r.report;
        std::string warnings;
        for (const auto& w : e.warnings)
            warnings += (warnings.empty() ? "" : ";") + w;
        std::vector<std::string> cells = {r.band,
                                          spec.series_axis,
                                          spec.series_axis.empty() ? "" : format_number(r.series_value),
                                          spec.axis,
                                          format_number(r.axis_value),
                                          r.strategy,
                                          std::to_string(r.seed),
                                          format_number(e.energy_j),
                                          format_number(e.energy_stderr),
                                          format_number(e.t_total),
                                          format_number(e.t_m),
                                          format_number(e.t_h),
                                          format_number(e.propulsion_j),
                                          format_number(e.compute_j),
                                          format_number(e.comm_j),
                                          format_number(e.r0_m),
                                          std::to_string(e.drops),
                                          warnings};
        for (const auto& f : config::fields())
            cells.push_back(f.get(r.spec));
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << csv_field(cells[i]);
        out << "\n";
    }
}

void write_skipped(std::ostream& out, const SweepResult& result)
{
    for (const auto& s : result.skipped) {
        out << "band=" << s.band << " series=" << format_number(s.series_value)
            << " axis=" << format_number(s.axis_value) << " strategy=" << s.strategy << " seed=" << s.seed
            << ": " << s.reason << "\n";
    }
}

SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out, int threads)
{
    SweepResult result = run_sweep(spec, threads);
    {
        std::ofstream f(out, std::ios::binary);
        if (!f)
            throw Error("cannot write '" + out.string() + "'");
        write_csv(f, spec, result);
        if (!f)
            throw Error("write to '" + out.string() + "' failed");
    }
    std::filesystem::path side = out;
    side += ".skipped.log";
    if (result.skipped.empty()) {
        std::error_code ec;
        std::filesystem::remove(side, ec);
    } else {
        std::ofstream f(side, std::ios::binary);
        if (!f)
            throw Error("cannot write '" + side.string() + "'");
        write_skipped(f, result);
    }
    return result;
}

ScenarioSpec spec_from_row(const std::vector<std::string>& header, const std::vector<std::string>& row)
{
    if (header.size() != row.size())
        throw ValidationError("row has " + std::to_string(row.size()) + " cells, header has " +
                              std::to_string(header.size()));
    config::ResolvedConfig cfg = config::defaults();
    const std::string prefix = "cfg.";
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == prefix + "band.kind")
            config::set_field(cfg, "band.kind", row[i], config::Source::Flag);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].rfind(prefix, 0) != 0 || header[i] == prefix + "band.kind")
            continue;
        config::set_field(cfg, header[i].substr(prefix.size()), row[i], config::Source::Flag);
    }
    return cfg.spec;
}

} // namespace uavmec::sweep

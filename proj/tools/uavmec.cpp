// uavmec: evaluate, sweep and inspect UAV offloading energy configurations.
//
//   uavmec run <config> [--preset fig1|fig2|fig3|fig4] [--axis PATH --values LIST]
//                       [--strategies LIST] [--bands LIST] [--seeds LIST] [--out FILE]
//   uavmec describe <config>
//   uavmec validate <config>
//
// Exit status: 0 success, 2 invalid input, 3 runtime failure.

#include "uavmec/config.hpp"
#include "uavmec/errors.hpp"
#include "uavmec/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_runtime = 3;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// "1,2,3", "log:1e-8:1e-6:41" or "lin:0.1:2:20".
std::vector<double> parse_values(const std::string& text)
{
    using uavmec::config::parse_number;
    const auto parts = split(text, ':');
    if (!parts.empty() && (parts[0] == "log" || parts[0] == "lin")) {
        if (parts.size() != 4)
            throw uavmec::ValidationError("range '" + text + "' must look like " + parts[0] + ":lo:hi:n");
        const double lo = parse_number(parts[1], "values");
        const double hi = parse_number(parts[2], "values");
        const double n = parse_number(parts[3], "values");
        if (n < 1 || n != std::floor(n))
            throw uavmec::ValidationError("range point count must be a positive integer");
        if (parts[0] == "log" && !(lo > 0 && hi > 0))
            throw uavmec::ValidationError("log range bounds must be positive");
        return parts[0] == "log" ? uavmec::sweep::log_space(lo, hi, int(n)) : uavmec::sweep::lin_space(lo, hi, int(n));
    }
    std::vector<double> out;
    for (const auto& p : split(text, ','))
        out.push_back(parse_number(p, "values"));
    return out;
}

uavmec::config::Overrides parse_sets(const std::vector<std::string>& sets)
{
    uavmec::config::Overrides out;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw uavmec::ValidationError("--set expects path=value, got '" + s + "'");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

struct RunOptions
{
    std::string preset;
    std::string axis;
    std::string values;
    std::string strategies;
    std::string bands;
    std::string seeds;
    std::string series_axis;
    std::string series_values;
    std::string out;
    int threads = 0;
};

int run(const std::string& path, const uavmec::config::Overrides& sets, const RunOptions& o)
{
    using namespace uavmec;
    const config::ResolvedConfig cfg = config::load_config(path, sets);

    sweep::SweepSpec spec;
    if (!o.preset.empty()) {
        spec = sweep::preset(o.preset, cfg);
    } else {
        spec.base = cfg;
        spec.axis = "q_bits";
        spec.values = {cfg.spec.q_bits};
    }
    if (!o.axis.empty()) {
        if (o.values.empty())
            throw ValidationError("--axis needs --values");
        spec.axis = o.axis;
    }
    if (!o.values.empty())
        spec.values = parse_values(o.values);
    if (!o.strategies.empty()) {
        spec.strategies.clear();
        for (const auto& s : split(o.strategies, ','))
            spec.strategies.push_back(sweep::parse_variant(s));
    }
    if (!o.bands.empty()) {
        spec.bands.clear();
        for (const auto& b : split(o.bands, ','))
            spec.bands.push_back(config::parse_band(b));
    }
    if (!o.seeds.empty()) {
        spec.seeds.clear();
        for (const auto& s : split(o.seeds, ','))
            spec.seeds.push_back(std::stoull(s));
    }
    if (!o.series_axis.empty()) {
        spec.series_axis = o.series_axis;
        spec.series_values = parse_values(o.series_values);
    }

    sweep::SweepResult result;
    if (o.out.empty()) {
        result = sweep::run_sweep(spec, o.threads);
        sweep::write_csv(std::cout, spec, result);
        if (!result.skipped.empty())
            sweep::write_skipped(std::cerr, result);
    } else {
        result = sweep::run_sweep(spec, o.out, o.threads);
        std::cerr << result.rows.size() << " rows written to " << o.out;
        if (!result.skipped.empty())
            std::cerr << ", " << result.skipped.size() << " points skipped (see " << o.out << ".skipped.log)";
        std::cerr << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UAV edge-computing energy model"};
    app.set_version_flag("--version", std::string(UAVMEC_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    RunOptions opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "configuration file (YAML)")->required();
        sub->add_option("--set", sets, "override a field, e.g. --set deployment.lambda_c=1e-7");
    };

    auto* run_cmd = app.add_subcommand("run", "evaluate a configuration or sweep it into CSV");
    add_common(run_cmd);
    run_cmd->add_option("--preset", opts.preset, "figure sweep")->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    run_cmd->add_option("--axis", opts.axis, "numeric field to sweep");
    run_cmd->add_option("--values", opts.values, "comma list, log:lo:hi:n or lin:lo:hi:n");
    run_cmd->add_option("--strategies", opts.strategies, "comma list, e.g. B,MR-B@20");
    run_cmd->add_option("--bands", opts.bands, "comma list of sub6, mmwave, thz");
    run_cmd->add_option("--seeds", opts.seeds, "comma list of seeds");
    run_cmd->add_option("--series-axis", opts.series_axis, "second numeric field");
    run_cmd->add_option("--series-values", opts.series_values, "values of the second field");
    run_cmd->add_option("--out", opts.out, "CSV output path (stdout when omitted)");
    run_cmd->add_option("--threads", opts.threads, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);

    auto* describe_cmd = app.add_subcommand("describe", "print every resolved field with unit and source");
    add_common(describe_cmd);
    auto* validate_cmd = app.add_subcommand("validate", "check a configuration");
    add_common(validate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        const auto overrides = parse_sets(sets);
        if (*run_cmd)
            return run(config_path, overrides, opts);
        if (*describe_cmd) {
            std::cout << uavmec::config::describe(uavmec::config::load_config(config_path, overrides));
            return 0;
        }
        if (*validate_cmd) {
            uavmec::config::load_config(config_path, overrides);
            std::cout << config_path << ": ok\n";
            return 0;
        }
    } catch (const uavmec::ParseError& e) {
        std::cerr << "error";
        if (e.line() > 0)
            std::cerr << " (line " << e.line() << ")";
        std::cerr << ": " << e.what() << "\n";
        return exit_invalid;
    } catch (const uavmec::ValidationError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return 0;
}

#pragma once

// Parameter sweeps over a resolved configuration, the four figure presets,
// and the versioned CSV they are written to.

#include "uavmec/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace uavmec::sweep {

/// A strategy, optionally pinned to its own cruise speed ("MR-B@20").
struct StrategyVariant
{
    scenario::Strategy strategy = scenario::Strategy::MoveReturnOffload;
    std::optional<double> velocity;

    std::string label() const;
};

StrategyVariant parse_variant(std::string_view text);

struct SweepSpec
{
    config::ResolvedConfig base;
    std::string preset; // empty for free-form sweeps
    std::string axis;
    std::vector<double> values;
    std::vector<StrategyVariant> strategies;    // empty: the base strategy
    std::vector<std::uint64_t> seeds;           // empty: the base seed
    std::vector<channel::BandKind> bands;       // empty: the base band
    std::string series_axis;                    // optional second numeric axis
    std::vector<double> series_values;

    /// Values non-empty and sorted, axes numeric.
    void validate() const;
};

std::vector<double> log_space(double lo, double hi, int n);
std::vector<double> lin_space(double lo, double hi, int n);

/// fig1 | fig2 | fig3 | fig4 on top of `base`.
SweepSpec preset(std::string_view name, const config::ResolvedConfig& base);

struct ResultRow
{
    std::string band;
    double series_value = 0.0;
    double axis_value = 0.0;
    std::string strategy; // variant label
    std::uint64_t seed = 0;
    scenario::ScenarioSpec spec; // fully resolved input of this row
    scenario::EnergyReport report;
};

struct SkippedPoint
{
    std::string band;
    double series_value = 0.0;
    double axis_value = 0.0;
    std::string strategy;
    std::uint64_t seed = 0;
    std::string reason;
};

struct SweepResult
{
    std::vector<ResultRow> rows; // canonical order
    std::vector<SkippedPoint> skipped;
};

/// Concurrent evaluation; `threads` <= 0 uses the OpenMP default.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference with identical output.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// Column names of the CSV, output columns first, then one per config field.
std::vector<std::string> csv_columns();

std::string csv_comment(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result);

void write_skipped(std::ostream& out, const SweepResult& result);

/// Runs the sweep and writes `out` plus `<out>.skipped.log` when points were skipped.
SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out, int threads = 0);

/// Spec of one CSV data row, rebuilt from its config columns.
scenario::ScenarioSpec spec_from_row(const std::vector<std::string>& header, const std::vector<std::string>& row);

} // namespace uavmec::sweep

#pragma once

// Structured-text (YAML) configuration: a registry of every tunable field,
// band-aware defaults, per-field provenance and a round-tripping dump.

#include "uavmec/scenario.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uavmec::config {

enum class Source
{
    Default,
    File,
    Flag
};

std::string_view source_label(Source s);

struct FieldInfo
{
    std::string path; // dotted, e.g. "deployment.lambda_c"
    std::string unit;
    std::string description;
    bool numeric = true;
    bool band_dependent = false; // default changes with band.kind
    bool table_default = false;  // default is a published reference value

    std::function<std::string(const scenario::ScenarioSpec&)> get;
    std::function<void(scenario::ScenarioSpec&, std::string_view)> set; // throws ParseError
    std::function<double(const scenario::ScenarioSpec&)> value;        // numeric fields only
};

/// All fields in schema order.
const std::vector<FieldInfo>& fields();

/// nullptr for an unknown path.
const FieldInfo* find_field(std::string_view path);

struct ResolvedConfig
{
    scenario::ScenarioSpec spec;
    std::map<std::string, Source, std::less<>> sources;

    Source source(std::string_view path) const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Reference defaults for `kind`: carrier, bandwidth, array size and pointing error.
ResolvedConfig defaults(channel::BandKind kind = channel::BandKind::MmWave);

/// Switches band.kind and re-applies band defaults to fields still at their default.
void set_band(ResolvedConfig& cfg, channel::BandKind kind, Source src);

/// Assigns one field from text. Setting band.kind goes through set_band.
void set_field(ResolvedConfig& cfg, std::string_view path, std::string_view text, Source src);

std::string get_field(const scenario::ScenarioSpec& spec, std::string_view path);

/// Numeric value of a field in SI units (band.f_c in Hz, not GHz); throws
/// ValidationError for non-numeric or unknown paths.
double get_numeric(const scenario::ScenarioSpec& spec, std::string_view path);

/// Parses YAML text, then applies `overrides` as flags. Validates the result
/// unless `validate` is false.
ResolvedConfig parse_config(std::string_view text, const Overrides& overrides = {}, bool validate = true);

ResolvedConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {},
                           bool validate = true);

/// YAML dump of every field with unit and source as trailing comments.
std::string describe(const ResolvedConfig& cfg);

/// One `path=value` line per field; the basis of the config hash.
std::string canonical_text(const scenario::ScenarioSpec& spec);

/// Shortest round-tripping decimal, exponent without padding ("2e-7").
std::string format_number(double x);

/// Strict decimal parse of the whole string; `field` names the error.
double parse_number(std::string_view text, std::string_view field);

std::string_view band_label(channel::BandKind kind);
channel::BandKind parse_band(std::string_view text);

} // namespace uavmec::config

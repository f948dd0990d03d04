#include "uavmec/config.hpp"

#include "uavmec/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace uavmec::config {

using scenario::ScenarioSpec;

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(std::string_view field, std::string_view text, std::string_view expected)
{
    throw ParseError("field '" + std::string(field) + "': cannot parse '" + std::string(text) + "' as " +
                         std::string(expected),
                     0, std::string(field));
}

template <class Int>
Int parse_integer(std::string_view text, std::string_view field)
{
    const std::string t = trim(text);
    std::string_view body = t;
    if (!body.empty() && body.front() == '+')
        body.remove_prefix(1);
    Int out{};
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size())
        bad_value(field, text, "an integer");
    return out;
}

// Text t such that parse(t) * scale reproduces x bit for bit, when one exists nearby.
std::string format_scaled(double x, double scale)
{
    const double v = x / scale;
    double lo = v;
    double hi = v;
    if (v * scale == x)
        return format_number(v);
    for (int i = 0; i < 4; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
        if (lo * scale == x)
            return format_number(lo);
        if (hi * scale == x)
            return format_number(hi);
    }
    return format_number(v);
}

using DoubleRef = double& (*)(ScenarioSpec&);
using IntRef = int& (*)(ScenarioSpec&);

double& cref(DoubleRef ref, const ScenarioSpec& s)
{
    return ref(const_cast<ScenarioSpec&>(s));
}

FieldInfo real(std::string path, std::string unit, std::string description, DoubleRef ref, double scale = 1.0,
               bool table = false, bool band_dep = false)
{
    FieldInfo f;
    f.path = std::move(path);
    f.unit = std::move(unit);
    f.description = std::move(description);
    f.table_default = table;
    f.band_dependent = band_dep;
    f.get = [ref, scale](const ScenarioSpec& s) { return format_scaled(cref(ref, s), scale); };
    f.set = [ref, scale, p = f.path](ScenarioSpec& s, std::string_view t) { ref(s) = parse_number(t, p) * scale; };
    f.value = [ref](const ScenarioSpec& s) { return cref(ref, s); };
    return f;
}

FieldInfo integer(std::string path, std::string unit, std::string description, IntRef ref, bool table = false,
                  bool band_dep = false)
{
    FieldInfo f;
    f.path = std::move(path);
    f.unit = std::move(unit);
    f.description = std::move(description);
    f.table_default = table;
    f.band_dependent = band_dep;
    f.get = [ref](const ScenarioSpec& s) { return std::to_string(ref(const_cast<ScenarioSpec&>(s))); };
    f.set = [ref, p = f.path](ScenarioSpec& s, std::string_view t) { ref(s) = parse_integer<int>(t, p); };
    f.value = [ref](const ScenarioSpec& s) { return double(ref(const_cast<ScenarioSpec&>(s))); };
    return f;
}

FieldInfo choice(std::string path, std::string description, std::function<std::string(const ScenarioSpec&)> get,
                 std::function<void(ScenarioSpec&, std::string_view)> set)
{
    FieldInfo f;
    f.path = std::move(path);
    f.description = std::move(description);
    f.numeric = false;
    f.get = std::move(get);
    f.set = std::move(set);
    return f;
}

std::vector<FieldInfo> build_registry()
{
    std::vector<FieldInfo> r;
    // clang-format off
    r.push_back(choice("strategy", "A | B | C | MR-B | MR-C",
        [](const ScenarioSpec& s) { return std::string(scenario::strategy_label(s.strategy)); },
        [](ScenarioSpec& s, std::string_view t) {
            auto st = scenario::parse_strategy(trim(t));
            if (!st)
                bad_value("strategy", t, "one of A, B, C, MR-B, MR-C");
            s.strategy = *st;
        }));
    r.push_back(real("q_bits", "bit", "workload Q", [](ScenarioSpec& s) -> double& { return s.q_bits; }, 1.0, true));
    r.push_back(real("v", "m/s", "cruise speed V", [](ScenarioSpec& s) -> double& { return s.velocity; }, 1.0, true));
    {
        FieldInfo f;
        f.path = "seed";
        f.description = "seed of every random draw";
        f.get = [](const ScenarioSpec& s) { return std::to_string(s.radio.rng_seed); };
        f.set = [](ScenarioSpec& s, std::string_view t) { s.radio.rng_seed = parse_integer<std::uint64_t>(t, "seed"); };
        f.value = [](const ScenarioSpec& s) { return double(s.radio.rng_seed); };
        r.push_back(std::move(f));
    }
    r.push_back(integer("trace_points", "", "rate samples kept along the MR path (0 = none)",
        [](ScenarioSpec& s) -> int& { return s.trace_points; }));

    r.push_back(real("geometry.h_u", "m", "UAV altitude", [](ScenarioSpec& s) -> double& { return s.uav_height_m; }, 1.0, true));
    r.push_back(real("geometry.h_b", "m", "BS antenna height", [](ScenarioSpec& s) -> double& { return s.bs_height_m; }, 1.0, true));

    r.push_back(real("urban.building_height", "m", "average building height",
        [](ScenarioSpec& s) -> double& { return s.env.urban.building_height_m; }, 1.0, true));
    r.push_back(real("urban.street_width", "m", "average street width",
        [](ScenarioSpec& s) -> double& { return s.env.urban.street_width_m; }, 1.0, true));

    r.push_back(real("atmosphere.temperature", "K", "air temperature",
        [](ScenarioSpec& s) -> double& { return s.env.atmosphere.temperature_k; }, 1.0, true));
    r.push_back(real("atmosphere.pressure", "Pa", "air pressure",
        [](ScenarioSpec& s) -> double& { return s.env.atmosphere.pressure_pa; }, 1.0, true));
    r.push_back(real("atmosphere.humidity", "%", "relative humidity",
        [](ScenarioSpec& s) -> double& { return s.env.atmosphere.humidity_percent; }));

    r.push_back(choice("band.kind", "sub6 | mmwave | thz",
        [](const ScenarioSpec& s) { return std::string(band_label(s.radio.band.kind)); },
        [](ScenarioSpec& s, std::string_view t) { s.radio.band.kind = parse_band(t); }));
    r.push_back(real("band.f_c", "GHz", "carrier frequency",
        [](ScenarioSpec& s) -> double& { return s.radio.band.carrier_hz; }, 1e9, true, true));
    r.push_back(real("band.bw", "MHz", "bandwidth",
        [](ScenarioSpec& s) -> double& { return s.radio.band.bandwidth_hz; }, 1e6, true, true));

    r.push_back(integer("antenna.m", "", "BS array elements along x",
        [](ScenarioSpec& s) -> int& { return s.radio.array.m_elems; }, true, true));
    r.push_back(integer("antenna.n", "", "BS array elements along y",
        [](ScenarioSpec& s) -> int& { return s.radio.array.n_elems; }, true, true));
    r.push_back(real("antenna.d_x", "wavelength", "element spacing along x",
        [](ScenarioSpec& s) -> double& { return s.radio.array.spacing_x; }));
    r.push_back(real("antenna.d_y", "wavelength", "element spacing along y",
        [](ScenarioSpec& s) -> double& { return s.radio.array.spacing_y; }));
    r.push_back(real("antenna.g_e_max", "dBi", "element peak gain",
        [](ScenarioSpec& s) -> double& { return s.radio.array.max_element_gain_dbi; }));
    r.push_back(real("antenna.sigma", "deg", "beam pointing error standard deviation",
        [](ScenarioSpec& s) -> double& { return s.radio.array.mismatch_sigma_deg; }, 1.0, false, true));
    r.push_back(real("antenna.uav_gain", "dBi", "isotropic UAV antenna gain",
        [](ScenarioSpec& s) -> double& { return s.radio.uav_gain_dbi; }));

    r.push_back(real("radio.p_tx", "W", "UAV transmit power",
        [](ScenarioSpec& s) -> double& { return s.radio.tx_power_w; }));
    r.push_back(integer("radio.mc_samples", "", "pointing-error samples per distance",
        [](ScenarioSpec& s) -> int& { return s.radio.mc_samples; }));

    r.push_back(choice("model.distance_interpretation", "3d | 2d: distance inside the aerial path-loss logs",
        [](const ScenarioSpec& s) {
            return std::string(s.env.options.distance == channel::DistanceMode::ThreeD ? "3d" : "2d");
        },
        [](ScenarioSpec& s, std::string_view t) {
            const std::string v = trim(t);
            if (v == "3d")
                s.env.options.distance = channel::DistanceMode::ThreeD;
            else if (v == "2d")
                s.env.options.distance = channel::DistanceMode::TwoD;
            else
                bad_value("model.distance_interpretation", t, "3d or 2d");
        }));
    r.push_back(choice("model.nlos_height", "bs | uav: height in the mmWave NLoS correction term",
        [](const ScenarioSpec& s) {
            return std::string(s.env.options.mmwave_nlos_height == channel::NlosHeightRef::BsHeight ? "bs" : "uav");
        },
        [](ScenarioSpec& s, std::string_view t) {
            const std::string v = trim(t);
            if (v == "bs")
                s.env.options.mmwave_nlos_height = channel::NlosHeightRef::BsHeight;
            else if (v == "uav")
                s.env.options.mmwave_nlos_height = channel::NlosHeightRef::UavHeight;
            else
                bad_value("model.nlos_height", t, "bs or uav");
        }));

    r.push_back(real("deployment.lambda_c", "1/m²", "BS density",
        [](ScenarioSpec& s) -> double& { return s.deployment.bs_density; }, 1.0, true));
    r.push_back(real("deployment.p_a", "", "probability that a BS hosts a MEC server",
        [](ScenarioSpec& s) -> double& { return s.deployment.mec_probability; }));
    r.push_back(real("deployment.r_min", "m", "closest horizontal approach to the BS",
        [](ScenarioSpec& s) -> double& { return s.deployment.min_distance_m; }, 1.0, true));
    r.push_back(choice("deployment.r0_mode", "analytic | sampled: mean nearest-BS distance or seeded draws",
        [](const ScenarioSpec& s) {
            return std::string(s.deployment.r0_mode == scenario::R0Mode::AnalyticMean ? "analytic" : "sampled");
        },
        [](ScenarioSpec& s, std::string_view t) {
            const std::string v = trim(t);
            if (v == "analytic")
                s.deployment.r0_mode = scenario::R0Mode::AnalyticMean;
            else if (v == "sampled")
                s.deployment.r0_mode = scenario::R0Mode::SampledNearest;
            else
                bad_value("deployment.r0_mode", t, "analytic or sampled");
        }));
    r.push_back(integer("deployment.n_drops", "", "R_0 draws averaged in sampled mode",
        [](ScenarioSpec& s) -> int& { return s.deployment.n_drops; }));

    r.push_back(real("mass.m_0", "kg", "airframe mass",
        [](ScenarioSpec& s) -> double& { return s.mass.airframe_kg; }, 1.0, true));
    r.push_back(real("mass.m_cp", "kg", "onboard computer mass",
        [](ScenarioSpec& s) -> double& { return s.mass.computer_kg; }, 1.0, true));

    r.push_back(real("compute.f_cp", "GHz", "CPU clock",
        [](ScenarioSpec& s) -> double& { return s.compute.cpu_hz; }, 1e9, true));
    r.push_back(real("compute.eta", "W/(cycle/s)³", "effective switched capacitance",
        [](ScenarioSpec& s) -> double& { return s.compute.capacitance; }, 1.0, true));
    r.push_back(real("compute.p_io", "W", "computer I/O power",
        [](ScenarioSpec& s) -> double& { return s.compute.io_power_w; }));
    r.push_back(real("compute.c_cp", "cycle/bit", "cycles per bit",
        [](ScenarioSpec& s) -> double& { return s.compute.cycles_per_bit; }, 1.0, true));

    r.push_back(real("propulsion.c0", "W", "rotor power polynomial, constant term",
        [](ScenarioSpec& s) -> double& { return s.propulsion.c[0]; }));
    r.push_back(real("propulsion.c1", "W/(rad/s)", "rotor power polynomial, linear term",
        [](ScenarioSpec& s) -> double& { return s.propulsion.c[1]; }));
    r.push_back(real("propulsion.c2", "W/(rad/s)²", "rotor power polynomial, quadratic term",
        [](ScenarioSpec& s) -> double& { return s.propulsion.c[2]; }));
    r.push_back(real("propulsion.c3", "W/(rad/s)³", "rotor power polynomial, cubic term",
        [](ScenarioSpec& s) -> double& { return s.propulsion.c[3]; }));
    r.push_back(real("propulsion.c4", "W/(rad/s)⁴", "rotor power polynomial, quartic term",
        [](ScenarioSpec& s) -> double& { return s.propulsion.c[4]; }));
    r.push_back(real("propulsion.c_t", "N/(rad/s)²", "rotor thrust coefficient",
        [](ScenarioSpec& s) -> double& { return s.propulsion.thrust_coeff; }));
    r.push_back(real("propulsion.c_d", "N/(m/s)²", "airframe drag coefficient",
        [](ScenarioSpec& s) -> double& { return s.propulsion.drag_coeff; }));
    r.push_back(real("propulsion.g", "m/s²", "gravitational acceleration",
        [](ScenarioSpec& s) -> double& { return s.propulsion.gravity; }));

    r.push_back(real("power.p_cm", "W", "communication circuit power",
        [](ScenarioSpec& s) -> double& { return s.comm_power_w; }));
    // clang-format on
    return r;
}

struct BandDefaults
{
    double carrier_hz;
    double bandwidth_hz;
    int elems;
    double sigma_deg;
};

BandDefaults band_defaults(channel::BandKind kind)
{
    switch (kind) {
    case channel::BandKind::Sub6:
        return {2e9, 1e6, 1, 0.0};
    case channel::BandKind::MmWave:
        return {30e9, 100e6, 8, 0.0};
    case channel::BandKind::Thz:
        return {350e9, 1000e6, 16, 3.0};
    }
    return {30e9, 100e6, 8, 0.0};
}

void apply_band_defaults(ScenarioSpec& s, channel::BandKind kind, const ResolvedConfig& cfg)
{
    const BandDefaults d = band_defaults(kind);
    auto at_default = [&](std::string_view p) { return cfg.source(p) == Source::Default; };
    if (at_default("band.f_c"))
        s.radio.band.carrier_hz = d.carrier_hz;
    if (at_default("band.bw"))
        s.radio.band.bandwidth_hz = d.bandwidth_hz;
    if (at_default("antenna.m"))
        s.radio.array.m_elems = d.elems;
    if (at_default("antenna.n"))
        s.radio.array.n_elems = d.elems;
    if (at_default("antenna.sigma"))
        s.radio.array.mismatch_sigma_deg = d.sigma_deg;
}

struct Entry
{
    std::string path;
    std::string text;
    std::size_t line;
};

void flatten(const YAML::Node& node, const std::string& prefix, std::vector<Entry>& out)
{
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        const YAML::Node& v = kv.second;
        const std::size_t line = std::size_t(kv.first.Mark().line + 1);
        if (v.IsMap()) {
            flatten(v, path, out);
        } else if (v.IsScalar()) {
            out.push_back({path, v.Scalar(), line});
        } else if (v.IsNull()) {
            continue; // empty section
        } else {
            throw ParseError("field '" + path + "' must be a scalar or a section", line, path);
        }
    }
}

} // namespace

std::string_view source_label(Source s)
{
    switch (s) {
    case Source::Default:
        return "default";
    case Source::File:
        return "file";
    case Source::Flag:
        return "flag";
    }
    return "default";
}

const std::vector<FieldInfo>& fields()
{
    static const std::vector<FieldInfo> registry = build_registry();
    return registry;
}

const FieldInfo* find_field(std::string_view path)
{
    for (const auto& f : fields())
        if (f.path == path)
            return &f;
    return nullptr;
}

Source ResolvedConfig::source(std::string_view path) const
{
    auto it = sources.find(path);
    return it == sources.end() ? Source::Default : it->second;
}

std::string_view band_label(channel::BandKind kind)
{
    switch (kind) {
    case channel::BandKind::Sub6:
        return "sub6";
    case channel::BandKind::MmWave:
        return "mmwave";
    case channel::BandKind::Thz:
        return "thz";
    }
    return "mmwave";
}

channel::BandKind parse_band(std::string_view text)
{
    std::string v = trim(text);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (v == "sub6")
        return channel::BandKind::Sub6;
    if (v == "mmwave")
        return channel::BandKind::MmWave;
    if (v == "thz")
        return channel::BandKind::Thz;
    bad_value("band.kind", text, "one of sub6, mmwave, thz");
}

std::string format_number(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, ptr);
    const auto e = s.find('e');
    if (e == std::string::npos)
        return s;
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    std::string sign;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        if (exp[0] == '-')
            sign = "-";
        exp.erase(0, 1);
    }
    exp.erase(0, std::min(exp.find_first_not_of('0'), exp.size() - 1));
    return mant + "e" + sign + exp;
}

double parse_number(std::string_view text, std::string_view field)
{
    const std::string t = trim(text);
    std::string_view body = t;
    if (!body.empty() && body.front() == '+')
        body.remove_prefix(1);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(out))
        bad_value(field, text, "a finite number");
    return out;
}

ResolvedConfig defaults(channel::BandKind kind)
{
    ResolvedConfig cfg;
    for (const auto& f : fields())
        cfg.sources.emplace(f.path, Source::Default);
    cfg.spec.radio.band.kind = kind;
    apply_band_defaults(cfg.spec, kind, cfg);
    return cfg;
}

void set_band(ResolvedConfig& cfg, channel::BandKind kind, Source src)
{
    cfg.spec.radio.band.kind = kind;
    cfg.sources["band.kind"] = src;
    apply_band_defaults(cfg.spec, kind, cfg);
}

void set_field(ResolvedConfig& cfg, std::string_view path, std::string_view text, Source src)
{
    const FieldInfo* f = find_field(path);
    if (!f)
        throw ParseError("unknown field '" + std::string(path) + "'", 0, std::string(path));
    if (path == "band.kind") {
        set_band(cfg, parse_band(text), src);
        return;
    }
    f->set(cfg.spec, text);
    cfg.sources[f->path] = src;
}

std::string get_field(const ScenarioSpec& spec, std::string_view path)
{
    const FieldInfo* f = find_field(path);
    if (!f)
        throw ValidationError("unknown field '" + std::string(path) + "'");
    return f->get(spec);
}

double get_numeric(const ScenarioSpec& spec, std::string_view path)
{
    const FieldInfo* f = find_field(path);
    if (!f)
        throw ValidationError("unknown field '" + std::string(path) + "'");
    if (!f->numeric)
        throw ValidationError("field '" + std::string(path) + "' is not numeric");
    return f->value(spec);
}

ResolvedConfig parse_config(std::string_view text, const Overrides& overrides, bool validate)
{
    std::vector<Entry> entries;
    try {
        const YAML::Node root = YAML::Load(std::string(text));
        if (root.IsMap())
            flatten(root, "", entries);
        else if (!root.IsNull())
            throw ParseError("configuration must be a mapping of fields and sections",
                             std::size_t(root.Mark().line + 1), "");
    } catch (const YAML::Exception& e) {
        throw ParseError(e.msg, std::size_t(e.mark.line + 1), "");
    }

    for (const auto& e : entries)
        if (!find_field(e.path))
            throw ParseError("unknown field '" + e.path + "'", e.line, e.path);
    for (const auto& [path, value] : overrides)
        if (!find_field(path))
            throw ParseError("unknown field '" + path + "'", 0, path);

    ResolvedConfig cfg = defaults();

    // The band decides which defaults apply, so it goes first.
    for (const auto& e : entries)
        if (e.path == "band.kind")
            try {
                set_band(cfg, parse_band(e.text), Source::File);
            } catch (const ParseError& err) {
                throw ParseError(err.what(), e.line, e.path);
            }
    for (const auto& [path, value] : overrides)
        if (path == "band.kind")
            set_band(cfg, parse_band(value), Source::Flag);

    for (const auto& e : entries) {
        if (e.path == "band.kind")
            continue;
        try {
            set_field(cfg, e.path, e.text, Source::File);
        } catch (const ParseError& err) {
            throw ParseError(err.what(), e.line, e.path);
        }
    }
    for (const auto& [path, value] : overrides)
        if (path != "band.kind")
            set_field(cfg, path, value, Source::Flag);

    if (validate)
        cfg.spec.validate();
    return cfg;
}

ResolvedConfig load_config(const std::filesystem::path& path, const Overrides& overrides, bool validate)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open configuration file '" + path.string() + "'", 0, "");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides, validate);
}

std::string describe(const ResolvedConfig& cfg)
{
    std::ostringstream out;
    out << "# uavmec " << UAVMEC_VERSION << " resolved configuration\n";
    std::string section;
    for (const auto& f : fields()) {
        const auto dot = f.path.find('.');
        const std::string sec = dot == std::string::npos ? std::string() : f.path.substr(0, dot);
        const std::string key = dot == std::string::npos ? f.path : f.path.substr(dot + 1);
        if (sec != section) {
            if (!sec.empty())
                out << sec << ":\n";
            section = sec;
        }
        const Source src = cfg.source(f.path);
        std::string note(source_label(src));
        if (src == Source::Default && f.table_default)
            note += ", reference";
        out << (sec.empty() ? "" : "  ") << key << ": " << f.get(cfg.spec) << "  # ";
        if (!f.unit.empty())
            out << f.unit << " ";
        out << "(" << note << ") " << f.description << "\n";
    }
    return out.str();
}

std::string canonical_text(const ScenarioSpec& spec)
{
    std::string out;
    for (const auto& f : fields())
        out += f.path + "=" + f.get(spec) + "\n";
    return out;
}

} // namespace uavmec::config

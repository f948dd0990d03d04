#pragma once

// Energy of processing Q bits under the hovering cases (A onboard, B offload,
// C parallel) and the move-and-return strategies (MR-B, MR-C).

#include "uavmec/link.hpp"
#include "uavmec/power.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavmec::scenario {

enum class Strategy
{
    HoverOnboard,       // A
    HoverOffload,       // B
    HoverParallel,      // C
    MoveReturnOffload,  // MR-B
    MoveReturnParallel, // MR-C
};

std::string_view strategy_label(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view label);

bool is_move_return(Strategy s);
bool uses_onboard(Strategy s);
bool uses_link(Strategy s);

enum class R0Mode
{
    AnalyticMean,
    SampledNearest
};

/// Poisson BS field thinned by MEC availability.
struct Deployment
{
    double bs_density = 2e-7; // lambda_C, 1/m^2
    double mec_probability = 1.0;
    double min_distance_m = 10.0;
    R0Mode r0_mode = R0Mode::AnalyticMean;
    int n_drops = 32;

    double mec_density() const { return mec_probability * bs_density; }
    void validate() const;
};

struct ScenarioSpec
{
    Strategy strategy = Strategy::MoveReturnOffload;
    double q_bits = 2e9;
    double velocity = 10.0;
    double uav_height_m = 30.0;
    double bs_height_m = 25.0;

    power::MassBudget mass;
    power::ComputeParams compute;
    power::PropulsionParams propulsion;
    double comm_power_w = 0.0;

    link::Environment env;
    link::RadioConfig radio; // radio.rng_seed seeds every random draw of the scenario
    Deployment deployment;

    int trace_points = 0;

    void validate() const;

    /// Strategy B and MR-B carry no onboard computer.
    power::MassBudget effective_mass() const;
    bool compute_enabled() const { return uses_onboard(strategy); }
};

struct TracePoint
{
    double t;
    double r;
    double r_tot;
};

struct EnergyReport
{
    double t_m = 0.0;
    double t_h = 0.0;
    double t_total = 0.0;
    double energy_j = 0.0;
    double propulsion_j = 0.0;
    double compute_j = 0.0;
    double comm_j = 0.0;
    double r0_m = 0.0;
    double energy_stderr = 0.0; // non-zero only for sampled R_0 over several drops
    int drops = 1;
    std::uint64_t seed = 0;
    std::vector<TracePoint> rate_trace;
    std::vector<std::string> warnings;
};

/// R_0 = 1/(2 sqrt(lambda_M)) or one seeded nearest-neighbour draw.
double r0_distance(const Deployment& dep, std::uint64_t seed);

/// R_0 used by evaluation `drop` of a SampledNearest scenario.
double sampled_r0(const Deployment& dep, std::uint64_t seed, int drop);

/// f_cp / C_cp in bit/s.
double compute_rate(const power::ComputeParams& cp);

/// R_tot(r) for the strategy: link throughput (if offloading) plus onboard rate (if computing).
using RateFunction = std::function<double(double)>;
RateFunction make_rate_function(const ScenarioSpec& spec);

struct MrTimes
{
    double t_mr = 0.0;
    double t_m = 0.0;
    double t_h = 0.0;
    bool reached_min_distance = false;
    double residual = 0.0; // |integral - Q/2| / (Q/2)
    std::vector<std::string> warnings;
};

/// Solves Q/2 = int_0^{T_MR/2} R_tot(max(R_0 - V t, R_min)) dt for T_MR and
/// splits it into moving and hovering time. Throws NoSolution if the rate is
/// identically zero along the path.
MrTimes solve_mr_time(const RateFunction& rate, double r0, double r_min, double velocity, double q_bits);

MrTimes solve_mr_time(const ScenarioSpec& spec);

/// Hover energy with a known link throughput (ignored for case A).
EnergyReport hover_energy(const ScenarioSpec& spec, double r0, double link_rate);

EnergyReport hover_energy(const ScenarioSpec& spec);

/// Combines moving and hovering power over solved times.
EnergyReport mr_energy(const ScenarioSpec& spec, const MrTimes& times);

EnergyReport mr_energy(const ScenarioSpec& spec);

/// Dispatch over strategy; MR follows rate -> T_MR -> T_M -> T_H -> energy.
EnergyReport evaluate(const ScenarioSpec& spec);

} // namespace uavmec::scenario

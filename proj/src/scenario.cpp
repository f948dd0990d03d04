#include "uavmec/scenario.hpp"

#include "uavmec/errors.hpp"
#include "uavmec/units.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace uavmec::scenario {

namespace {

constexpr int monotonicity_probes = 33;

double integrate_rate(const RateFunction& rate, double r0, double velocity, double tau)
{
    if (tau <= 0.0)
        return 0.0;
    auto integrand = [&](double t) { return rate(r0 - velocity * t); };
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, tau, 15, 1e-12,
                                                                          &error);
}

void check_monotone(const RateFunction& rate, double r_min, double r0, std::vector<std::string>& warnings)
{
    double prev = rate(r_min);
    for (int i = 1; i < monotonicity_probes; ++i)
    {
        const double r = r_min + (r0 - r_min) * i / (monotonicity_probes - 1);
        const double cur = rate(r);
        if (cur > prev * (1.0 + 1e-9) + 1e-300)
        {
            warnings.push_back("NonMonotoneRate: R_tot increases with distance near r = " + std::to_string(r) +
                               " m");
            return;
        }
        prev = cur;
    }
}

struct Powers
{
    double total;
    double propulsion;
    double compute;
    double comm;
};

Powers powers_at(const ScenarioSpec& spec, double velocity)
{
    const auto mass = spec.effective_mass();
    const bool on = spec.compute_enabled();
    return {power::total_power(velocity, mass, spec.propulsion, spec.compute, on, spec.comm_power_w),
            power::propulsion_power(velocity, mass, spec.propulsion),
            power::compute_power(spec.compute, on),
            spec.comm_power_w};
}

std::vector<TracePoint> mr_trace(const ScenarioSpec& spec, const RateFunction& rate, double r0, const MrTimes& t)
{
    std::vector<TracePoint> out;
    const int n = spec.trace_points;
    const double r_stop = std::min(r0, spec.deployment.min_distance_m);
    for (int i = 0; i < n; ++i)
    {
        const double time = n == 1 ? 0.0 : t.t_mr * i / (n - 1);
        const double outbound = std::min(time, t.t_mr - time);
        const double r = std::max(r0 - spec.velocity * outbound, r_stop);
        out.push_back({time, r, rate(r)});
    }
    return out;
}

EnergyReport evaluate_at(const ScenarioSpec& spec, double r0)
{
    if (!is_move_return(spec.strategy))
    {
        double link_rate = 0.0;
        if (uses_link(spec.strategy))
            link_rate = link::LinkModel(spec.env, spec.radio, spec.uav_height_m, spec.bs_height_m).rate(r0);
        auto rep = hover_energy(spec, r0, link_rate);
        if (spec.trace_points > 0)
        {
            const double r_tot = rep.t_h > 0.0 ? spec.q_bits / rep.t_h : 0.0;
            for (int i = 0; i < spec.trace_points; ++i)
            {
                const double time = spec.trace_points == 1 ? 0.0 : rep.t_h * i / (spec.trace_points - 1);
                rep.rate_trace.push_back({time, r0, r_tot});
            }
        }
        return rep;
    }

    const auto rate = make_rate_function(spec);
    const auto times = solve_mr_time(rate, r0, spec.deployment.min_distance_m, spec.velocity, spec.q_bits);
    auto rep = mr_energy(spec, times);
    rep.r0_m = r0;
    if (spec.trace_points > 0)
        rep.rate_trace = mr_trace(spec, rate, r0, times);
    return rep;
}

template <class PerR0>
EnergyReport aggregate(const ScenarioSpec& spec, PerR0&& per_r0)
{
    const auto& dep = spec.deployment;
    const std::uint64_t seed = spec.radio.rng_seed;
    if (dep.r0_mode == R0Mode::AnalyticMean)
    {
        auto rep = per_r0(r0_distance(dep, seed));
        rep.seed = seed;
        return rep;
    }

    EnergyReport mean;
    mean.seed = seed;
    mean.drops = dep.n_drops;
    double sum_sq = 0.0;
    for (int i = 0; i < dep.n_drops; ++i)
    {
        const auto rep = per_r0(sampled_r0(dep, seed, i));
        mean.t_m += rep.t_m;
        mean.t_h += rep.t_h;
        mean.t_total += rep.t_total;
        mean.energy_j += rep.energy_j;
        mean.propulsion_j += rep.propulsion_j;
        mean.compute_j += rep.compute_j;
        mean.comm_j += rep.comm_j;
        mean.r0_m += rep.r0_m;
        sum_sq += rep.energy_j * rep.energy_j;
        for (const auto& w : rep.warnings)
            if (std::find(mean.warnings.begin(), mean.warnings.end(), w) == mean.warnings.end())
                mean.warnings.push_back(w);
    }
    const double n = dep.n_drops;
    mean.t_m /= n;
    mean.t_h /= n;
    mean.t_total /= n;
    mean.energy_j /= n;
    mean.propulsion_j /= n;
    mean.compute_j /= n;
    mean.comm_j /= n;
    mean.r0_m /= n;
    if (dep.n_drops > 1)
    {
        const double var = std::max(0.0, (sum_sq - n * mean.energy_j * mean.energy_j) / (n - 1.0));
        mean.energy_stderr = std::sqrt(var / n);
    }
    return mean;
}

} // namespace

std::string_view strategy_label(Strategy s)
{
    switch (s)
    {
    case Strategy::HoverOnboard:
        return "A";
    case Strategy::HoverOffload:
        return "B";
    case Strategy::HoverParallel:
        return "C";
    case Strategy::MoveReturnOffload:
        return "MR-B";
    case Strategy::MoveReturnParallel:
        return "MR-C";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view label)
{
    for (auto s : {Strategy::HoverOnboard, Strategy::HoverOffload, Strategy::HoverParallel,
                   Strategy::MoveReturnOffload, Strategy::MoveReturnParallel})
        if (strategy_label(s) == label)
            return s;
    return std::nullopt;
}

bool is_move_return(Strategy s)
{
    return s == Strategy::MoveReturnOffload || s == Strategy::MoveReturnParallel;
}

bool uses_onboard(Strategy s)
{
    return s == Strategy::HoverOnboard || s == Strategy::HoverParallel || s == Strategy::MoveReturnParallel;
}

bool uses_link(Strategy s)
{
    return s != Strategy::HoverOnboard;
}

void Deployment::validate() const
{
    if (!(bs_density > 0.0))
        throw ValidationError("deployment: BS density lambda_C must be > 0");
    if (!(mec_probability > 0.0 && mec_probability <= 1.0))
        throw ValidationError("deployment: MEC availability p_a must lie in (0, 1]");
    if (!(min_distance_m > 0.0))
        throw ValidationError("deployment: r_min must be > 0");
    if (r0_mode == R0Mode::SampledNearest && n_drops < 1)
        throw ValidationError("deployment: n_drops must be >= 1");
}

void ScenarioSpec::validate() const
{
    if (!(q_bits > 0.0))
        throw ValidationError("scenario: q_bits must be > 0");
    if (!(velocity >= 0.0))
        throw ValidationError("scenario: velocity must be >= 0");
    if (is_move_return(strategy) && !(velocity > 0.0))
        throw ValidationError("scenario: move-and-return needs velocity > 0");
    if (!(uav_height_m > 0.0 && bs_height_m > 0.0))
        throw ValidationError("geometry: UAV and BS heights must be > 0");
    if (!(comm_power_w >= 0.0))
        throw ValidationError("power: communication power must be >= 0");
    if (trace_points < 0)
        throw ValidationError("scenario: trace_points must be >= 0");

    mass.validate();
    if (uses_onboard(strategy))
    {
        if (!(mass.computer_kg > 0.0))
            throw ValidationError("scenario: onboard computing requires m_cp > 0");
        compute.validate();
    }
    power::validate_propulsion(propulsion, effective_mass(), std::max(30.0, velocity));
    deployment.validate();

    if (uses_link(strategy))
    {
        radio.validate();
        env.atmosphere.validate();
        if (radio.band.kind == channel::BandKind::Thz)
        {
            if (!(uav_height_m > channel::min_model_altitude_m))
                throw AltitudeOutOfModelRange("THz LoS model requires h_U > 22.5 m");
        }
        else
        {
            channel::require_aerial_altitude(uav_height_m);
        }
        if (radio.band.kind == channel::BandKind::MmWave)
            env.urban.validate();
    }
}

power::MassBudget ScenarioSpec::effective_mass() const
{
    power::MassBudget m = mass;
    if (!uses_onboard(strategy))
        m.computer_kg = 0.0;
    return m;
}

double r0_distance(const Deployment& dep, std::uint64_t seed)
{
    if (dep.r0_mode == R0Mode::AnalyticMean)
        return 1.0 / (2.0 * std::sqrt(dep.mec_density()));
    return sampled_r0(dep, seed, 0);
}

double sampled_r0(const Deployment& dep, std::uint64_t seed, int drop)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(drop), 0x72306472u};
    std::mt19937_64 engine(seq);
    // Nearest point of a Poisson field: pi lambda R^2 ~ Exp(1).
    std::exponential_distribution<double> exp1(1.0);
    return std::sqrt(exp1(engine) / (units::pi * dep.mec_density()));
}

double compute_rate(const power::ComputeParams& cp)
{
    if (!(cp.cycles_per_bit > 0.0))
        throw InvalidComputeParams("compute: cycles per bit C_cp must be > 0");
    return cp.cpu_hz / cp.cycles_per_bit;
}

RateFunction make_rate_function(const ScenarioSpec& spec)
{
    const double onboard = uses_onboard(spec.strategy) ? compute_rate(spec.compute) : 0.0;
    if (!uses_link(spec.strategy))
        return [onboard](double) { return onboard; };
    auto model = std::make_shared<const link::LinkModel>(spec.env, spec.radio, spec.uav_height_m, spec.bs_height_m);
    return [model, onboard](double r) { return model->rate(r) + onboard; };
}

MrTimes solve_mr_time(const RateFunction& rate, double r0, double r_min, double velocity, double q_bits)
{
    if (!(velocity > 0.0))
        throw ValidationError("move-and-return needs velocity > 0");
    const double half = 0.5 * q_bits;
    MrTimes out;

    if (r0 <= r_min)
    {
        // Already inside the closest allowed distance: nothing to fly, hover at R_0.
        const double c = rate(r0);
        if (!(c > 0.0))
            throw NoSolution("R_tot is zero at R_0; Q/2 can never be delivered");
        out.t_mr = 2.0 * half / c;
        out.t_m = 0.0;
        out.t_h = out.t_mr;
        out.reached_min_distance = true;
        return out;
    }

    check_monotone(rate, r_min, r0, out.warnings);

    const double t_reach = (r0 - r_min) / velocity;
    const double s_reach = integrate_rate(rate, r0, velocity, t_reach);
    double tau = 0.0;

    if (s_reach >= half)
    {
        const double c0 = rate(r0);
        const double guess = c0 > 0.0 ? std::min(half / c0, t_reach) : 0.5 * t_reach;
        auto f = [&](double t) {
            return std::make_pair(integrate_rate(rate, r0, velocity, t) - half, rate(r0 - velocity * t));
        };
        std::uintmax_t iters = 100;
        tau = boost::math::tools::newton_raphson_iterate(f, guess, 0.0, t_reach, 48, iters);
        out.reached_min_distance = !(tau < t_reach);
        out.residual = std::abs(integrate_rate(rate, r0, velocity, tau) - half) / half;
    }
    else
    {
        const double c_min = rate(r_min);
        if (!(c_min > 0.0))
            throw NoSolution("R_tot vanishes at R_min before Q/2 is delivered");
        tau = t_reach + (half - s_reach) / c_min;
        out.reached_min_distance = true;
        out.residual = std::abs(s_reach + c_min * (tau - t_reach) - half) / half;
    }

    out.t_mr = 2.0 * tau;
    // T_M = T_MR while the turn-around happens before R_min, 2 (R_0 - R_min)/V otherwise.
    out.t_m = (r0 - velocity * out.t_mr / 2.0 > r_min) ? out.t_mr : 2.0 * (r0 - r_min) / velocity;
    out.t_h = out.t_mr - out.t_m;
    return out;
}

MrTimes solve_mr_time(const ScenarioSpec& spec)
{
    spec.validate();
    if (!is_move_return(spec.strategy))
        throw ValidationError("solve_mr_time needs an MR strategy");
    const double r0 = r0_distance(spec.deployment, spec.radio.rng_seed);
    return solve_mr_time(make_rate_function(spec), r0, spec.deployment.min_distance_m, spec.velocity, spec.q_bits);
}

EnergyReport hover_energy(const ScenarioSpec& spec, double r0, double link_rate)
{
    const double onboard = uses_onboard(spec.strategy) ? compute_rate(spec.compute) : 0.0;
    const double cm = uses_link(spec.strategy) ? link_rate : 0.0;
    const double r_tot = cm + onboard;
    if (!(r_tot > 0.0))
        throw ZeroTotalRate("hovering with R_tot = 0 (strategy " + std::string(strategy_label(spec.strategy)) + ")");

    const Powers p = powers_at(spec, 0.0);
    EnergyReport rep;
    rep.r0_m = r0;
    rep.seed = spec.radio.rng_seed;
    rep.t_h = spec.q_bits / r_tot;
    rep.t_total = rep.t_h;
    rep.energy_j = p.total * rep.t_h;
    rep.propulsion_j = p.propulsion * rep.t_h;
    rep.compute_j = p.compute * rep.t_h;
    rep.comm_j = p.comm * rep.t_h;
    return rep;
}

EnergyReport hover_energy(const ScenarioSpec& spec)
{
    spec.validate();
    if (is_move_return(spec.strategy))
        throw ValidationError("hover_energy needs strategy A, B or C");
    return aggregate(spec, [&](double r0) { return evaluate_at(spec, r0); });
}

EnergyReport mr_energy(const ScenarioSpec& spec, const MrTimes& times)
{
    const Powers moving = powers_at(spec, spec.velocity);
    const Powers hovering = powers_at(spec, 0.0);
    EnergyReport rep;
    rep.seed = spec.radio.rng_seed;
    rep.t_m = times.t_m;
    rep.t_h = times.t_h;
    rep.t_total = times.t_m + times.t_h;
    rep.energy_j = moving.total * times.t_m + hovering.total * times.t_h;
    rep.propulsion_j = moving.propulsion * times.t_m + hovering.propulsion * times.t_h;
    rep.compute_j = hovering.compute * times.t_mr;
    rep.comm_j = hovering.comm * times.t_mr;
    rep.warnings = times.warnings;
    return rep;
}

EnergyReport mr_energy(const ScenarioSpec& spec)
{
    spec.validate();
    if (!is_move_return(spec.strategy))
        throw ValidationError("mr_energy needs strategy MR-B or MR-C");
    return aggregate(spec, [&](double r0) { return evaluate_at(spec, r0); });
}

EnergyReport evaluate(const ScenarioSpec& spec)
{
    spec.validate();
    return aggregate(spec, [&](double r0) { return evaluate_at(spec, r0); });
}

} // namespace uavmec::scenario

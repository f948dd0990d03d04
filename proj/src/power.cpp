#include "uavmec/power.hpp"

#include "uavmec/errors.hpp"

#include <cmath>
#include <string>

namespace uavmec::power {

void MassBudget::validate() const
{
    if (!(airframe_kg > 0.0))
        throw ValidationError("mass: airframe mass m_0 must be > 0");
    if (!(computer_kg >= 0.0))
        throw ValidationError("mass: computer mass m_cp must be >= 0");
}

void ComputeParams::validate() const
{
    if (!(cpu_hz >= 0.0 && capacitance >= 0.0 && io_power_w >= 0.0))
        throw InvalidComputeParams("compute: f_cp, eta and P_I/O must be >= 0");
    if (!(cycles_per_bit > 0.0))
        throw InvalidComputeParams("compute: cycles per bit C_cp must be > 0");
}

double rotor_speed(double velocity, const MassBudget& mass, const PropulsionParams& pp)
{
    const double weight = mass.total() * pp.gravity;
    const double hover = std::sqrt(weight / (4.0 * pp.thrust_coeff));
    const double v2 = velocity * velocity;
    const double ratio = pp.drag_coeff * pp.drag_coeff * v2 * v2 / (weight * weight);
    return hover * std::pow(1.0 + ratio, 0.25);
}

double propulsion_power(double velocity, const MassBudget& mass, const PropulsionParams& pp)
{
    const double w = rotor_speed(velocity, mass, pp);
    const auto& c = pp.c;
    return 4.0 * ((((c[4] * w + c[3]) * w + c[2]) * w + c[1]) * w + c[0]);
}

void validate_propulsion(const PropulsionParams& pp, const MassBudget& mass, double max_velocity)
{
    if (!(pp.thrust_coeff > 0.0))
        throw InvalidPropulsionParams("propulsion: thrust coefficient C_T must be > 0");
    if (!(pp.drag_coeff >= 0.0))
        throw InvalidPropulsionParams("propulsion: drag coefficient C_d must be >= 0");
    if (!(pp.gravity > 0.0))
        throw InvalidPropulsionParams("propulsion: gravity must be > 0");
    mass.validate();

    constexpr int steps = 300;
    double prev = propulsion_power(0.0, mass, pp);
    if (!(prev > 0.0))
        throw InvalidPropulsionParams("propulsion: hover power must be positive");
    for (int i = 1; i <= steps; ++i)
    {
        const double v = max_velocity * i / steps;
        const double p = propulsion_power(v, mass, pp);
        if (!(p >= prev))
            throw InvalidPropulsionParams("propulsion: P_pr decreases between " +
                                          std::to_string(max_velocity * (i - 1) / steps) + " and " +
                                          std::to_string(v) + " m/s");
        prev = p;
    }
}

double cpu_power(const ComputeParams& cp)
{
    return cp.capacitance * cp.cpu_hz * cp.cpu_hz * cp.cpu_hz;
}

double compute_power(const ComputeParams& cp, bool enabled)
{
    return enabled ? cpu_power(cp) + cp.io_power_w : 0.0;
}

double total_power(double velocity,
                   const MassBudget& mass,
                   const PropulsionParams& pp,
                   const ComputeParams& cp,
                   bool compute_enabled,
                   double comm_power_w)
{
    return comm_power_w + compute_power(cp, compute_enabled) + propulsion_power(velocity, mass, pp);
}

} // namespace uavmec::power

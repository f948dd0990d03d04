#pragma once

#include <array>

namespace uavmec::power {

/// Motor/rotor constants of the rotary-wing propulsion model.
/// P_pr = 4 (c4 w^4 + c3 w^3 + c2 w^2 + c1 w + c0) with the rotor speed w
/// derived from mass, thrust coefficient and body drag.
struct PropulsionParams
{
    std::array<double, 5> c{0.5, 1.0e-3, 2.0e-5, 4.0e-7, 1.0e-10}; // c0..c4
    double thrust_coeff = 3.5e-5;                                  // N / (rad/s)^2
    double drag_coeff = 0.1;                                       // N / (m/s)^2
    double gravity = 9.81;
};

struct MassBudget
{
    double airframe_kg = 3.0;
    double computer_kg = 0.5;

    double total() const { return airframe_kg + computer_kg; }
    void validate() const;
};

struct ComputeParams
{
    double cpu_hz = 4e9;
    double capacitance = 1e-28; // W / (cycle/s)^3
    double io_power_w = 0.0;
    double cycles_per_bit = 500.0;

    void validate() const;
};

double rotor_speed(double velocity, const MassBudget& mass, const PropulsionParams& pp);

double propulsion_power(double velocity, const MassBudget& mass, const PropulsionParams& pp);

/// Checks C_T > 0 and that P_pr is positive and non-decreasing on a velocity grid
/// over [0, max_velocity]; throws InvalidPropulsionParams otherwise.
void validate_propulsion(const PropulsionParams& pp, const MassBudget& mass, double max_velocity = 30.0);

double cpu_power(const ComputeParams& cp);

/// eta f^3 + P_I/O when enabled, 0 otherwise.
double compute_power(const ComputeParams& cp, bool enabled);

/// P_cm + P_cp + P_pr. Communication power defaults to zero.
double total_power(double velocity,
                   const MassBudget& mass,
                   const PropulsionParams& pp,
                   const ComputeParams& cp,
                   bool compute_enabled,
                   double comm_power_w = 0.0);

} // namespace uavmec::power

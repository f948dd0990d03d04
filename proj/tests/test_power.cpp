#include "uavmec/errors.hpp"
#include "uavmec/power.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace uavmec;
using namespace uavmec::power;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Direct evaluation of the rotor-speed/quartic propulsion model.
double propulsion_oracle(double v, double m, const PropulsionParams& pp)
{
    const double mg = m * pp.gravity;
    const double omega = std::sqrt(mg / (4.0 * pp.thrust_coeff)) *
                         std::pow(1.0 + std::pow(pp.drag_coeff, 2) * std::pow(v, 4) / (mg * mg), 0.25);
    double sum = 0.0;
    for (int i = 0; i < 5; ++i)
        sum += pp.c[std::size_t(i)] * std::pow(omega, i);
    return 4.0 * sum;
}

} // namespace

TEST_CASE("rotor speed")
{
    const PropulsionParams pp;
    const MassBudget mass{3.0, 0.5};
    SECTION("hover multiplier is one")
    {
        CHECK_THAT(rotor_speed(0.0, mass, pp), WithinRel(std::sqrt(3.5 * 9.81 / (4.0 * 3.5e-5)), 1e-14));
    }
    SECTION("no drag means no speed dependence")
    {
        PropulsionParams nodrag = pp;
        nodrag.drag_coeff = 0.0;
        CHECK(rotor_speed(17.0, mass, nodrag) == rotor_speed(0.0, mass, nodrag));
    }
}

TEST_CASE("propulsion power")
{
    const PropulsionParams pp;
    SECTION("3.5 kg at 10 m/s against direct evaluation")
    {
        CHECK_THAT(propulsion_power(10.0, {3.0, 0.5}, pp), WithinRel(propulsion_oracle(10.0, 3.5, pp), 1e-12));
    }
    SECTION("default parameter table")
    {
        for (double v : {0.0, 5.0, 10.0, 20.0})
            CHECK_THAT(propulsion_power(v, {3.0, 0.0}, pp), WithinRel(propulsion_oracle(v, 3.0, pp), 1e-12));
        // frozen from the direct evaluation
        CHECK_THAT(propulsion_power(0.0, {3.0, 0.0}, pp), WithinAbs(193.0, 1.0));
        CHECK_THAT(propulsion_power(0.0, {3.0, 0.5}, pp), WithinAbs(242.0, 1.0));
    }
    SECTION("a heavier craft needs more power")
    {
        CHECK(propulsion_power(0.0, {3.0, 0.5}, pp) > propulsion_power(0.0, {3.0, 0.0}, pp));
    }
    SECTION("non-decreasing in speed")
    {
        double prev = propulsion_power(0.0, {3.0, 0.5}, pp);
        for (int i = 1; i <= 3000; ++i) {
            const double p = propulsion_power(0.01 * i, {3.0, 0.5}, pp);
            CHECK(p - prev >= -1e-9);
            prev = p;
        }
    }
}

TEST_CASE("propulsion parameter validation")
{
    PropulsionParams pp;
    CHECK_NOTHROW(validate_propulsion(pp, {3.0, 0.5}));
    pp.thrust_coeff = 0.0;
    CHECK_THROWS_AS(validate_propulsion(pp, {3.0, 0.5}), InvalidPropulsionParams);
    PropulsionParams dip;
    dip.c = {3000.0, 0.0, -1e-2, 0.0, 0.0}; // power falls as the rotor speeds up
    CHECK_THROWS_AS(validate_propulsion(dip, {3.0, 0.5}), InvalidPropulsionParams);
}

TEST_CASE("mass budget")
{
    CHECK((MassBudget{3.0, 0.5}.total()) == 3.5);
    CHECK_THROWS_AS((MassBudget{0.0, 0.5}.validate()), ValidationError);
    CHECK_THROWS_AS((MassBudget{3.0, -0.1}.validate()), ValidationError);
}

TEST_CASE("compute power")
{
    const ComputeParams cp{4e9, 1e-28, 0.0, 500.0};
    CHECK_THAT(cpu_power(cp), WithinRel(6.4, 1e-12));
    CHECK(compute_power(cp, false) == 0.0);
    CHECK_THAT(compute_power({0.0, 1e-28, 1.5, 500.0}, true), WithinAbs(1.5, 1e-15));
    ComputeParams twice = cp;
    twice.capacitance *= 2.0;
    CHECK(cpu_power(twice) == 2.0 * cpu_power(cp));
    CHECK_THROWS_AS((ComputeParams{4e9, 1e-28, 0.0, 0.0}.validate()), InvalidComputeParams);
    CHECK_THROWS_AS((ComputeParams{-1.0, 1e-28, 0.0, 500.0}.validate()), InvalidComputeParams);
}

TEST_CASE("total power")
{
    const PropulsionParams pp;
    const ComputeParams cp;
    SECTION("compute disabled is propulsion only")
    {
        CHECK(total_power(7.0, {3.0, 0.0}, pp, cp, false) == propulsion_power(7.0, {3.0, 0.0}, pp));
    }
    SECTION("defaults at hover with compute on")
    {
        CHECK_THAT(total_power(0.0, {3.0, 0.5}, pp, cp, true),
                   WithinRel(propulsion_power(0.0, {3.0, 0.5}, pp) + 6.4, 1e-12));
    }
    SECTION("onboard computing costs more than offloading at equal speed")
    {
        for (double v : {0.0, 10.0, 20.0})
            CHECK(total_power(v, {3.0, 0.5}, pp, cp, true) > total_power(v, {3.0, 0.0}, pp, cp, false));
    }
    SECTION("communication power adds on top")
    {
        CHECK_THAT(total_power(0.0, {3.0, 0.0}, pp, cp, false, 2.0),
                   WithinRel(propulsion_power(0.0, {3.0, 0.0}, pp) + 2.0, 1e-12));
    }
}

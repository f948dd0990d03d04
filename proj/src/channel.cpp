#include "uavmec/channel.hpp"

#include "uavmec/errors.hpp"
#include "uavmec/units.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uavmec::channel {

namespace {

std::string num(double v)
{
    return std::to_string(v);
}

double model_distance(const Geometry& geom, const ModelOptions& opts)
{
    const double d = opts.distance == DistanceMode::ThreeD ? geom.distance_3d() : geom.horizontal_m;
    if (!(d > 0.0))
        throw ValidationError("path-loss distance must be positive (got " + num(d) + " m)");
    return d;
}

} // namespace

double Geometry::distance_3d() const
{
    return std::hypot(horizontal_m, uav_height_m - bs_height_m);
}

void Geometry::validate() const
{
    if (!(uav_height_m > 0.0))
        throw ValidationError("geometry: UAV height must be > 0 (got " + num(uav_height_m) + ")");
    if (!(bs_height_m > 0.0))
        throw ValidationError("geometry: BS height must be > 0 (got " + num(bs_height_m) + ")");
    if (!(horizontal_m >= 0.0))
        throw ValidationError("geometry: horizontal distance must be >= 0 (got " + num(horizontal_m) + ")");
}

void UrbanProfile::validate() const
{
    if (!(building_height_m >= 5.0 && building_height_m <= 50.0))
        throw ValidationError("urban: average building height must lie in [5, 50] m (got " +
                              num(building_height_m) + ")");
    if (!(street_width_m >= 5.0 && street_width_m <= 50.0))
        throw ValidationError("urban: average street width must lie in [5, 50] m (got " +
                              num(street_width_m) + ")");
}

void Atmosphere::validate() const
{
    if (!(temperature_k > 0.0))
        throw ValidationError("atmosphere: temperature must be > 0 K");
    if (!(pressure_pa > 0.0))
        throw ValidationError("atmosphere: pressure must be > 0 Pa");
    if (!(humidity_percent >= 0.0 && humidity_percent <= 100.0))
        throw ValidationError("atmosphere: relative humidity must lie in [0, 100] %");
}

void Band::validate() const
{
    if (!(carrier_hz > 0.0))
        throw ValidationError("band: carrier frequency must be > 0");
    if (!(bandwidth_hz > 0.0))
        throw ValidationError("band: bandwidth must be > 0");
    if (kind == BandKind::Thz && !(carrier_hz >= thz_fit_min_hz && carrier_hz <= thz_fit_max_hz))
        throw FrequencyOutsideFitRange("band: THz carrier must lie in [275, 400] GHz (got " +
                                       num(carrier_hz / 1e9) + " GHz)");
}

void require_aerial_altitude(double uav_height_m)
{
    if (!(uav_height_m > min_model_altitude_m && uav_height_m < max_model_altitude_m))
        throw AltitudeOutOfModelRange("UAV altitude " + num(uav_height_m) +
                                      " m is outside the aerial model range (22.5, 300) m");
}

PathLoss path_loss_sub6(const Geometry& geom, double carrier_hz, const ModelOptions& opts)
{
    require_aerial_altitude(geom.uav_height_m);
    const double d = model_distance(geom, opts);
    const double d3 = geom.distance_3d();
    if (!(d3 > 0.0))
        throw ValidationError("path-loss distance must be positive");
    const double f_ghz = carrier_hz / 1e9;

    const double los = 28.0 + 22.0 * std::log10(d) + 20.0 * std::log10(f_ghz);
    const double nlos = -17.5 + (46.0 - 7.0 * std::log10(geom.uav_height_m)) * std::log10(d3) +
                        20.0 * std::log10(40.0 * units::pi * f_ghz / 3.0);
    return {los, nlos};
}

PathLoss path_loss_mmwave(const Geometry& geom,
                          const UrbanProfile& urban,
                          double carrier_hz,
                          const ModelOptions& opts)
{
    require_aerial_altitude(geom.uav_height_m);
    urban.validate();
    const double d3 = geom.distance_3d();
    if (!(d3 > 0.0))
        throw ValidationError("path-loss distance must be positive");
    const double d = model_distance(geom, opts);
    const double f_ghz = carrier_hz / 1e9;
    const double hb = urban.building_height_m;
    const double hu = geom.uav_height_m;
    const double hb_pow = std::pow(hb, 1.72);

    const double los = 20.0 * std::log10(40.0 * units::pi * d3 * f_ghz / 3.0) +
                       std::min(0.03 * hb_pow, 10.0) * std::log10(d3) -
                       std::min(0.044 * hb_pow, 14.77) + 0.002 * std::log10(hb) * d3;

    const double h_corr =
        opts.mmwave_nlos_height == NlosHeightRef::BsHeight ? geom.bs_height_m : geom.uav_height_m;
    const double log_corr = std::log10(11.75 * h_corr);
    const double nlos_raw = 161.04 - 7.1 * std::log10(urban.street_width_m) + 7.5 * std::log10(hb) -
                            (24.37 - 3.7 * (hb / hu) * (hb / hu)) * std::log10(hu) +
                            (43.42 - 3.1 * std::log10(hu)) * (std::log10(d) - 3.0) +
                            20.0 * std::log10(f_ghz) - (3.2 * log_corr * log_corr - 4.97);

    return {los, std::max(los, nlos_raw)};
}

double water_vapor_mixing_ratio(const Atmosphere& atm)
{
    atm.validate();
    const double t_c = atm.temperature_k - 273.15;
    const double p_hpa = atm.pressure_pa / 100.0;
    const double p_sat = 6.1121 * (1.0007 + 3.46e-6 * p_hpa) * std::exp(17.502 * t_c / (240.94 + t_c));
    return atm.humidity_percent * p_sat / (100.0 * p_hpa);
}

double absorption_lines(double carrier_hz, const Atmosphere& atm)
{
    const double mu = water_vapor_mixing_ratio(atm);
    const double wavenumber = carrier_hz / (100.0 * units::speed_of_light); // 1/cm

    const double a1 = 0.4093 * mu + 0.0925;
    const double w1 = wavenumber - 10.835;
    const double k1 = 0.2205 * mu * (0.1303 * mu + 0.0294) / (a1 * a1 + w1 * w1);

    const double a2 = 0.537 * mu + 0.0956;
    const double w2 = wavenumber - 12.664;
    const double k2 = 2.014 * mu * (0.1702 * mu + 0.0303) / (a2 * a2 + w2 * w2);
    return k1 + k2;
}

double absorption_background(double carrier_hz)
{
    const double f = carrier_hz;
    return 5.54e-37 * f * f * f - 3.94e-25 * f * f + 9.06e-14 * f - 6.36e-3;
}

double absorption_coefficient(double carrier_hz, const Atmosphere& atm)
{
    if (!(carrier_hz >= thz_fit_min_hz && carrier_hz <= thz_fit_max_hz))
        throw FrequencyOutsideFitRange("absorption fit is valid for 275-400 GHz only (got " +
                                       num(carrier_hz / 1e9) + " GHz)");
    // Lines first so that the dry-air case reduces to exactly the background term.
    return absorption_lines(carrier_hz, atm) + absorption_background(carrier_hz);
}

double free_space_loss_db(double distance_m, double carrier_hz)
{
    return 20.0 * std::log10(4.0 * units::pi * distance_m * carrier_hz / units::speed_of_light);
}

ThzPathLoss path_loss_thz(const Geometry& geom, const Atmosphere& atm, double carrier_hz)
{
    const double kappa = absorption_coefficient(carrier_hz, atm);
    const double d3 = geom.distance_3d();
    if (!(d3 > 0.0))
        throw ValidationError("path-loss distance must be positive");
    const double propagation = free_space_loss_db(d3, carrier_hz);
    const double absorption = 4.34 * kappa * d3;
    return {propagation + absorption, absorption, propagation};
}

LosBreakpoints los_breakpoints(double uav_height_m)
{
    const double lh = std::log10(uav_height_m);
    return {std::max(460.0 * lh - 700.0, 18.0), 4300.0 * lh - 3800.0};
}

double los_probability(double uav_height_m, double horizontal_m)
{
    if (!(uav_height_m > min_model_altitude_m))
        throw AltitudeOutOfModelRange("LoS probability model requires h_U > 22.5 m (got " +
                                      num(uav_height_m) + ")");
    if (!(horizontal_m >= 0.0))
        throw ValidationError("LoS probability: horizontal distance must be >= 0");
    if (uav_height_m >= 100.0)
        return 1.0;
    const auto [r1, r2] = los_breakpoints(uav_height_m);
    if (horizontal_m <= r1)
        return 1.0;
    const double ratio = r1 / horizontal_m;
    return ratio + (1.0 - ratio) * std::exp(-horizontal_m / r2);
}

} // namespace uavmec::channel

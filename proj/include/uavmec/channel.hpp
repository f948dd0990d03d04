#pragma once

// Large-scale propagation for the UAV-to-BS link: 3GPP sub-6 GHz and mmWave
// path loss, THz free-space loss plus water-vapour absorption, and the
// altitude-dependent LoS probability. Everything here is a pure function.

namespace uavmec::channel {

enum class BandKind
{
    Sub6,
    MmWave,
    Thz
};

/// Lower/upper edge of the frequency window where the THz absorption fit holds.
inline constexpr double thz_fit_min_hz = 275e9;
inline constexpr double thz_fit_max_hz = 400e9;

/// Altitude window (exclusive) of the aerial 3GPP path-loss and LoS models.
inline constexpr double min_model_altitude_m = 22.5;
inline constexpr double max_model_altitude_m = 300.0;

/// UAV/BS placement. The 3D distance is derived, never stored.
struct Geometry
{
    double uav_height_m = 30.0;
    double bs_height_m = 25.0;
    double horizontal_m = 0.0;

    double distance_3d() const;
    void validate() const;
};

/// Average building height and street width, both restricted to [5, 50] m.
struct UrbanProfile
{
    double building_height_m = 10.0;
    double street_width_m = 15.0;

    void validate() const;
};

struct Atmosphere
{
    double temperature_k = 300.0;
    double pressure_pa = 101325.0;
    double humidity_percent = 50.0;

    void validate() const;
};

struct Band
{
    BandKind kind = BandKind::MmWave;
    double carrier_hz = 30e9;
    double bandwidth_hz = 100e6;

    void validate() const;
};

/// Which distance enters the `log10(d)` terms that the aerial models leave ambiguous.
enum class DistanceMode
{
    ThreeD,
    TwoD
};

/// Height used in the mmWave NLoS correction term `3.2 (log10(11.75 h))^2 - 4.97`.
enum class NlosHeightRef
{
    BsHeight,
    UavHeight
};

struct ModelOptions
{
    DistanceMode distance = DistanceMode::ThreeD;
    NlosHeightRef mmwave_nlos_height = NlosHeightRef::BsHeight;
};

struct PathLoss
{
    double los_db;
    double nlos_db;
};

struct ThzPathLoss
{
    double los_db;
    double absorption_db;
    double propagation_db;
};

/// Throws AltitudeOutOfModelRange unless 22.5 m < h_U < 300 m.
void require_aerial_altitude(double uav_height_m);

PathLoss path_loss_sub6(const Geometry& geom, double carrier_hz, const ModelOptions& opts = {});

/// NLoS obeys the max-rule, so `nlos_db >= los_db` holds exactly.
PathLoss path_loss_mmwave(const Geometry& geom,
                          const UrbanProfile& urban,
                          double carrier_hz,
                          const ModelOptions& opts = {});

/// Volume mixing ratio of water vapour (Buck saturation pressure, T in Celsius, p in hPa).
double water_vapor_mixing_ratio(const Atmosphere& atm);

/// The two water lines near 10.835 and 12.664 1/cm. Zero for dry air.
double absorption_lines(double carrier_hz, const Atmosphere& atm);

/// Frequency-only polynomial background term; f in Hz.
double absorption_background(double carrier_hz);

/// Medium absorption coefficient kappa in 1/m. Valid only inside the THz fit window.
double absorption_coefficient(double carrier_hz, const Atmosphere& atm);

double free_space_loss_db(double distance_m, double carrier_hz);

ThzPathLoss path_loss_thz(const Geometry& geom, const Atmosphere& atm, double carrier_hz);

/// Breakpoint distances r1 and r2 of the piecewise LoS model.
struct LosBreakpoints
{
    double r1;
    double r2;
};

LosBreakpoints los_breakpoints(double uav_height_m);

double los_probability(double uav_height_m, double horizontal_m);

} // namespace uavmec::channel

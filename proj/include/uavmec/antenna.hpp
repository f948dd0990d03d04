#pragma once

// BS antenna: 3GPP element pattern, M x N planar array factor, array gain
// normalised over the sphere, and Gaussian beam-pointing mismatch.
//
// Angles at this interface are in degrees. The BS local frame has z at the
// zenith; theta is measured from z and phi = 0 points at the UAV azimuth, so
// the element pattern peaks toward the horizon in the UAV's direction.

#include <cstdint>
#include <memory>
#include <vector>

namespace uavmec::antenna {

inline constexpr double element_beamwidth_deg = 65.0; // theta_3dB = phi_3dB
inline constexpr double element_floor_db = 30.0;      // SLA_v = A_m

struct ArrayConfig
{
    int m_elems = 8;
    int n_elems = 8;
    double spacing_x = 0.5; // wavelengths
    double spacing_y = 0.5;
    double max_element_gain_dbi = 8.0;
    double mismatch_sigma_deg = 0.0;

    void validate() const;
};

/// Progressive phase shifts (radians) between neighbouring elements.
struct Steering
{
    double beta_x = 0.0;
    double beta_y = 0.0;
};

struct Mismatch
{
    double theta_deg = 0.0;
    double phi_deg = 0.0;
};

struct SteeredGain
{
    double gain_db;
    double gain_linear;
    double theta_off_deg;
    double phi_off_deg;
};

/// Phases that put the main lobe at (theta, phi).
Steering steer_toward(double theta_deg, double phi_deg, const ArrayConfig& cfg);

double element_gain_db(double theta_deg, double phi_deg, double max_gain_dbi);

/// |AF| in [0, 1].
double array_factor(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg);

/// Sphere average of |AF|^2 for the given steering on the 721 x 1441 midpoint
/// grid. One refinement step is evaluated as a convergence check; a change of
/// more than 0.01 dB raises IntegrationNotConverged. Results are memoised per
/// (geometry, steering) behind an internally synchronised cache.
double mean_pattern_power(const Steering& steering, const ArrayConfig& cfg);

/// Array gain at the steered direction, -10 log10(mean |AF|^2).
double array_gain_db(const Steering& steering, const ArrayConfig& cfg);

/// Array gain pattern toward (theta, phi).
double array_gain_db(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg);

/// Element plus array gain toward (theta, phi).
double total_gain_db(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg);

/// Deterministic N(0, sigma^2) pair for (seed, index); sigma = 0 gives (0, 0).
Mismatch sample_mismatch(std::uint64_t seed, double sigma_deg, std::uint64_t index = 0);

std::vector<Mismatch> sample_mismatches(std::uint64_t seed, double sigma_deg, int count);

/// An array whose beam always lies in the phi = 0 half-plane, with the
/// mean-power denominator tabulated over |beta_x| so that per-distance
/// evaluations stay cheap.
class SteeredArray
{
  public:
    static constexpr int table_nodes = 65;

    explicit SteeredArray(const ArrayConfig& cfg);

    const ArrayConfig& config() const noexcept { return cfg_; }

    /// Interpolated sphere mean of |AF|^2 when steering toward polar angle theta0.
    double mean_power(double theta0_deg) const;

    /// Gain toward a UAV at polar angle theta0 with the beam off by `offset`.
    /// The element pattern is evaluated at the true direction.
    SteeredGain gain_toward(double theta0_deg, const Mismatch& offset) const;

    /// Geometry-only part, shared between arrays with equal element layout.
    struct Table;

  private:
    ArrayConfig cfg_;
    std::shared_ptr<const Table> table_;
};

/// SteeredArray for `cfg`; the tabulated denominator is built once per element
/// layout and shared through an internally synchronised cache.
std::shared_ptr<const SteeredArray> steered_array(const ArrayConfig& cfg);

} // namespace uavmec::antenna

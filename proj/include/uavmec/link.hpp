#pragma once

#include "uavmec/antenna.hpp"
#include "uavmec/channel.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace uavmec::link {

/// Everything about the propagation medium that is not UAV/BS placement.
struct Environment
{
    channel::UrbanProfile urban;
    channel::Atmosphere atmosphere;
    channel::ModelOptions options;
};

/// UAV transmitter and BS receiver. The UAV antenna is isotropic with a fixed gain.
struct RadioConfig
{
    double tx_power_w = 0.19952623149688797; // 23 dBm
    channel::Band band;
    antenna::ArrayConfig array;
    double uav_gain_dbi = 0.0;
    int mc_samples = 64;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

enum class Condition
{
    LoS,
    NLoS
};

/// Full Planck form BW h f / (exp(h f / k T) - 1), in watts.
double johnson_nyquist_noise(const channel::Band& band, double temperature_k);

/// Re-emitted absorbed power (P_tx G / L_P)(1 - 1/L_A); all arguments linear.
double molecular_noise(double tx_power_w, double gain_linear, double propagation_loss_linear,
                       double absorption_loss_linear);

struct LinkBudget
{
    double snr_los = 0.0;  // sample mean, linear
    double snr_nlos = 0.0; // sample mean, linear
    double n_jn = 0.0;     // W
    double n_m = 0.0;      // W, sample mean (LoS, THz only)
    double r_cm = 0.0;     // bit/s
    double r_cm_stderr = 0.0;
    double pr_los = 0.0;
    double boresight_gain_db = 0.0; // BS + UAV gain with perfect pointing
};

/// Link evaluator for fixed heights, medium and radio. Mismatch samples are
/// drawn once from (rng_seed, sample index) and reused at every distance, so
/// the expected throughput is a deterministic, smooth function of range.
class LinkModel
{
  public:
    LinkModel(const Environment& env, const RadioConfig& radio, double uav_height_m, double bs_height_m);

    const RadioConfig& radio() const noexcept { return radio_; }
    const std::vector<antenna::Mismatch>& mismatches() const noexcept { return mismatches_; }
    double jn_noise() const noexcept { return n_jn_; }

    /// Polar angle of the UAV seen from the BS, degrees from zenith.
    double polar_angle_deg(double horizontal_m) const;

    double snr(double horizontal_m, Condition condition, const antenna::Mismatch& offset) const;

    LinkBudget budget(double horizontal_m) const;

    /// Per-sample log2(1 + SNR) for both conditions, in sample order.
    void spectral_efficiencies(double horizontal_m, std::span<double> los, std::span<double> nlos) const;

    double rate(double horizontal_m) const { return budget(horizontal_m).r_cm; }

  private:
    struct Loss
    {
        double los_db;
        double nlos_db;
        bool has_nlos;
        double propagation_db; // THz free-space part
        double absorption_db;  // THz absorption part
    };

    channel::Geometry geometry(double horizontal_m) const;
    Loss loss(double horizontal_m) const;
    double snr_from(const Loss& l, Condition c, double gain_linear) const;
    double noise_m(const Loss& l, double gain_linear) const;

    Environment env_;
    RadioConfig radio_;
    double uav_height_m_;
    double bs_height_m_;
    double n_jn_;
    double uav_gain_linear_;
    antenna::SteeredArray array_;
    std::vector<antenna::Mismatch> mismatches_;
};

/// SNR for one condition and one pointing offset.
double snr(const channel::Geometry& geom,
           const Environment& env,
           const RadioConfig& radio,
           Condition condition,
           const antenna::Mismatch& offset);

/// BW (E[log2(1+SNR_LoS)] Pr_LoS + E[log2(1+SNR_NLoS)] Pr_NLoS) over seeded mismatch draws.
LinkBudget expected_throughput(const channel::Geometry& geom, const Environment& env, const RadioConfig& radio);

} // namespace uavmec::link

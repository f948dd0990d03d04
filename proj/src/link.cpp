#include "uavmec/link.hpp"

#include "uavmec/errors.hpp"
#include "uavmec/units.hpp"

#include <algorithm>
#include <cmath>

namespace uavmec::link {

void RadioConfig::validate() const
{
    if (!(tx_power_w > 0.0))
        throw ValidationError("radio: transmit power must be > 0");
    if (mc_samples < 1)
        throw ValidationError("radio: mc_samples must be >= 1");
    band.validate();
    array.validate();
}

double johnson_nyquist_noise(const channel::Band& band, double temperature_k)
{
    const double x = units::planck * band.carrier_hz / (units::boltzmann * temperature_k);
    return band.bandwidth_hz * units::planck * band.carrier_hz / std::expm1(x);
}

double molecular_noise(double tx_power_w, double gain_linear, double propagation_loss_linear,
                       double absorption_loss_linear)
{
    return tx_power_w * gain_linear / propagation_loss_linear * (1.0 - 1.0 / absorption_loss_linear);
}

LinkModel::LinkModel(const Environment& env, const RadioConfig& radio, double uav_height_m, double bs_height_m)
    : env_(env),
      radio_(radio),
      uav_height_m_(uav_height_m),
      bs_height_m_(bs_height_m),
      n_jn_(0.0),
      uav_gain_linear_(units::db_to_linear(radio.uav_gain_dbi)),
      array_(radio.array)
{
    radio_.validate();
    env_.atmosphere.validate();
    if (radio_.band.kind == channel::BandKind::MmWave)
        env_.urban.validate();
    n_jn_ = johnson_nyquist_noise(radio_.band, env_.atmosphere.temperature_k);
    if (radio_.array.mismatch_sigma_deg > 0.0)
        mismatches_ = antenna::sample_mismatches(radio_.rng_seed, radio_.array.mismatch_sigma_deg,
                                                 radio_.mc_samples);
    else
        mismatches_.assign(1, antenna::Mismatch{});
}

channel::Geometry LinkModel::geometry(double horizontal_m) const
{
    channel::Geometry g{uav_height_m_, bs_height_m_, horizontal_m};
    g.validate();
    return g;
}

double LinkModel::polar_angle_deg(double horizontal_m) const
{
    return units::rad_to_deg(std::atan2(horizontal_m, uav_height_m_ - bs_height_m_));
}

LinkModel::Loss LinkModel::loss(double horizontal_m) const
{
    const auto geom = geometry(horizontal_m);
    const auto& band = radio_.band;
    switch (band.kind)
    {
    case channel::BandKind::Sub6: {
        const auto pl = channel::path_loss_sub6(geom, band.carrier_hz, env_.options);
        return {pl.los_db, pl.nlos_db, true, 0.0, 0.0};
    }
    case channel::BandKind::MmWave: {
        const auto pl = channel::path_loss_mmwave(geom, env_.urban, band.carrier_hz, env_.options);
        return {pl.los_db, pl.nlos_db, true, 0.0, 0.0};
    }
    case channel::BandKind::Thz: {
        const auto pl = channel::path_loss_thz(geom, env_.atmosphere, band.carrier_hz);
        return {pl.los_db, 0.0, false, pl.propagation_db, pl.absorption_db};
    }
    }
    throw ValidationError("unknown band");
}

double LinkModel::noise_m(const Loss& l, double gain_linear) const
{
    if (radio_.band.kind != channel::BandKind::Thz)
        return 0.0;
    return molecular_noise(radio_.tx_power_w, gain_linear, units::db_to_linear(l.propagation_db),
                           units::db_to_linear(l.absorption_db));
}

double LinkModel::snr_from(const Loss& l, Condition c, double gain_linear) const
{
    if (c == Condition::NLoS && !l.has_nlos)
        return 0.0;
    const double pl_db = c == Condition::LoS ? l.los_db : l.nlos_db;
    const double received = radio_.tx_power_w * gain_linear / units::db_to_linear(pl_db);
    const double nm = c == Condition::LoS ? noise_m(l, gain_linear) : 0.0;
    return received / (n_jn_ + nm);
}

double LinkModel::snr(double horizontal_m, Condition condition, const antenna::Mismatch& offset) const
{
    const Loss l = loss(horizontal_m);
    const double g = array_.gain_toward(polar_angle_deg(horizontal_m), offset).gain_linear * uav_gain_linear_;
    return snr_from(l, condition, g);
}

void LinkModel::spectral_efficiencies(double horizontal_m, std::span<double> los, std::span<double> nlos) const
{
    const Loss l = loss(horizontal_m);
    const double theta0 = polar_angle_deg(horizontal_m);
    for (std::size_t k = 0; k < mismatches_.size(); ++k)
    {
        const double g = array_.gain_toward(theta0, mismatches_[k]).gain_linear * uav_gain_linear_;
        los[k] = std::log2(1.0 + snr_from(l, Condition::LoS, g));
        nlos[k] = std::log2(1.0 + snr_from(l, Condition::NLoS, g));
    }
}

LinkBudget LinkModel::budget(double horizontal_m) const
{
    const Loss l = loss(horizontal_m);
    const double theta0 = polar_angle_deg(horizontal_m);
    const double p_los = channel::los_probability(uav_height_m_, horizontal_m);
    const double bw = radio_.band.bandwidth_hz;

    LinkBudget b;
    b.n_jn = n_jn_;
    b.pr_los = p_los;
    b.boresight_gain_db = array_.gain_toward(theta0, {}).gain_db + radio_.uav_gain_dbi;

    const double count = static_cast<double>(mismatches_.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& offset : mismatches_)
    {
        const double g = array_.gain_toward(theta0, offset).gain_linear * uav_gain_linear_;
        const double s_los = snr_from(l, Condition::LoS, g);
        const double s_nlos = snr_from(l, Condition::NLoS, g);
        b.snr_los += s_los;
        b.snr_nlos += s_nlos;
        b.n_m += noise_m(l, g);
        const double x = std::log2(1.0 + s_los) * p_los + std::log2(1.0 + s_nlos) * (1.0 - p_los);
        sum += x;
        sum_sq += x * x;
    }
    b.snr_los /= count;
    b.snr_nlos /= count;
    b.n_m /= count;
    const double mean = sum / count;
    b.r_cm = bw * mean;
    if (mismatches_.size() > 1)
    {
        const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
        b.r_cm_stderr = bw * std::sqrt(var / count);
    }
    return b;
}

double snr(const channel::Geometry& geom,
           const Environment& env,
           const RadioConfig& radio,
           Condition condition,
           const antenna::Mismatch& offset)
{
    return LinkModel(env, radio, geom.uav_height_m, geom.bs_height_m).snr(geom.horizontal_m, condition, offset);
}

LinkBudget expected_throughput(const channel::Geometry& geom, const Environment& env, const RadioConfig& radio)
{
    return LinkModel(env, radio, geom.uav_height_m, geom.bs_height_m).budget(geom.horizontal_m);
}

} // namespace uavmec::link

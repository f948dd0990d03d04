#include "uavmec/antenna.hpp"

#include "uavmec/errors.hpp"
#include "uavmec/kernels.hpp"
#include "uavmec/units.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <tuple>

namespace uavmec::antenna {

namespace {

constexpr double convergence_tol_db = 0.01;

kernels::PlanarArray planar(const ArrayConfig& cfg, const Steering& s)
{
    return {cfg.m_elems,
            cfg.n_elems,
            2.0 * units::pi * cfg.spacing_x,
            2.0 * units::pi * cfg.spacing_y,
            s.beta_x,
            s.beta_y};
}

bool single_element(const ArrayConfig& cfg)
{
    return cfg.m_elems == 1 && cfg.n_elems == 1;
}

double converged_mean_power(const kernels::PlanarArray& arr)
{
    const kernels::SphereGrid grid;
    const double coarse = kernels::mean_pattern_power(arr, grid);
    const double fine = kernels::mean_pattern_power(arr, grid.refined());
    const double delta_db = std::abs(10.0 * std::log10(coarse / fine));
    if (!(delta_db <= convergence_tol_db))
        throw IntegrationNotConverged("array-gain quadrature moved by " + std::to_string(delta_db) +
                                      " dB under refinement");
    return coarse;
}

double wrap_azimuth(double phi_deg)
{
    double p = std::fmod(phi_deg + 180.0, 360.0);
    if (p < 0.0)
        p += 360.0;
    return p - 180.0;
}

using GeometryKey = std::tuple<int, int, double, double>;

GeometryKey geometry_key(const ArrayConfig& cfg)
{
    return {cfg.m_elems, cfg.n_elems, cfg.spacing_x, cfg.spacing_y};
}

} // namespace

void ArrayConfig::validate() const
{
    if (m_elems < 1 || n_elems < 1)
        throw ValidationError("antenna: element counts must be >= 1");
    if (!(spacing_x > 0.0 && spacing_y > 0.0))
        throw ValidationError("antenna: element spacing must be > 0");
    if (!(mismatch_sigma_deg >= 0.0))
        throw ValidationError("antenna: mismatch sigma must be >= 0");
}

Steering steer_toward(double theta_deg, double phi_deg, const ArrayConfig& cfg)
{
    const double st = std::sin(units::deg_to_rad(theta_deg));
    const double ph = units::deg_to_rad(phi_deg);
    return {-2.0 * units::pi * cfg.spacing_x * st * std::cos(ph),
            -2.0 * units::pi * cfg.spacing_y * st * std::sin(ph)};
}

double element_gain_db(double theta_deg, double phi_deg, double max_gain_dbi)
{
    const double v = (theta_deg - 90.0) / element_beamwidth_deg;
    const double h = wrap_azimuth(phi_deg) / element_beamwidth_deg;
    const double vertical = -std::min(12.0 * v * v, element_floor_db);
    const double horizontal = -std::min(12.0 * h * h, element_floor_db);
    return max_gain_dbi - std::min(-(vertical + horizontal), element_floor_db);
}

double array_factor(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg)
{
    const double th = units::deg_to_rad(theta_deg);
    const double ph = units::deg_to_rad(phi_deg);
    const double psi_x = 2.0 * units::pi * cfg.spacing_x * std::sin(th) * std::cos(ph) + steering.beta_x;
    const double psi_y = 2.0 * units::pi * cfg.spacing_y * std::sin(th) * std::sin(ph) + steering.beta_y;
    const double p = kernels::reference::dirichlet_power(cfg.m_elems, psi_x) *
                     kernels::reference::dirichlet_power(cfg.n_elems, psi_y);
    return std::min(std::sqrt(p), 1.0);
}

double mean_pattern_power(const Steering& steering, const ArrayConfig& cfg)
{
    cfg.validate();
    if (single_element(cfg))
        return 1.0;

    using Key = std::tuple<int, int, double, double, double, double>;
    static std::shared_mutex mutex;
    static std::map<Key, double> cache;

    const Key key{cfg.m_elems, cfg.n_elems, cfg.spacing_x, cfg.spacing_y, steering.beta_x, steering.beta_y};
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    const double value = converged_mean_power(planar(cfg, steering));
    std::unique_lock lock(mutex);
    cache.emplace(key, value);
    return value;
}

double array_gain_db(const Steering& steering, const ArrayConfig& cfg)
{
    return 10.0 * std::log10(1.0 / mean_pattern_power(steering, cfg));
}

double array_gain_db(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg)
{
    const double af = array_factor(theta_deg, phi_deg, steering, cfg);
    return 10.0 * std::log10(af * af / mean_pattern_power(steering, cfg));
}

double total_gain_db(double theta_deg, double phi_deg, const Steering& steering, const ArrayConfig& cfg)
{
    return element_gain_db(theta_deg, phi_deg, cfg.max_element_gain_dbi) +
           array_gain_db(theta_deg, phi_deg, steering, cfg);
}

Mismatch sample_mismatch(std::uint64_t seed, double sigma_deg, std::uint64_t index)
{
    if (!(sigma_deg >= 0.0))
        throw ValidationError("mismatch sigma must be >= 0");
    if (sigma_deg == 0.0)
        return {};
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      0x6d69736du};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal(0.0, sigma_deg);
    const double dtheta = normal(engine);
    const double dphi = normal(engine);
    return {dtheta, dphi};
}

std::vector<Mismatch> sample_mismatches(std::uint64_t seed, double sigma_deg, int count)
{
    std::vector<Mismatch> out(static_cast<std::size_t>(std::max(count, 0)));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = sample_mismatch(seed, sigma_deg, k);
    return out;
}

struct SteeredArray::Table
{
    double kd_x;
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
};

namespace {

std::shared_ptr<const SteeredArray::Table> build_table(const ArrayConfig& cfg)
{
    const double kd_x = 2.0 * units::pi * cfg.spacing_x;
    const double step = kd_x / (SteeredArray::table_nodes - 1);
    const kernels::SphereGrid grid;
    std::vector<double> values(SteeredArray::table_nodes);
    for (int j = 0; j < SteeredArray::table_nodes; ++j)
    {
        auto arr = planar(cfg, {-j * step, 0.0});
        const bool check = j == 0 || j == SteeredArray::table_nodes / 2 || j == SteeredArray::table_nodes - 1;
        values[j] = check ? converged_mean_power(arr) : kernels::mean_pattern_power(arr, grid);
    }
    // The mean power is even in beta, so the slope at beta = 0 vanishes.
    return std::make_shared<const SteeredArray::Table>(
        SteeredArray::Table{kd_x,
                            boost::math::interpolators::cardinal_cubic_b_spline<double>(
                                values.begin(), values.end(), 0.0, step, 0.0)});
}

std::shared_ptr<const SteeredArray::Table> shared_table(const ArrayConfig& cfg)
{
    static std::mutex mutex;
    static std::map<GeometryKey, std::shared_ptr<const SteeredArray::Table>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[geometry_key(cfg)];
    if (!slot)
        slot = build_table(cfg);
    return slot;
}

} // namespace

SteeredArray::SteeredArray(const ArrayConfig& cfg) : cfg_(cfg)
{
    cfg_.validate();
    if (!single_element(cfg_))
        table_ = shared_table(cfg_);
}

double SteeredArray::mean_power(double theta0_deg) const
{
    if (!table_)
        return 1.0;
    const double beta = std::min(table_->kd_x * std::abs(std::sin(units::deg_to_rad(theta0_deg))), table_->kd_x);
    return table_->spline(beta);
}

SteeredGain SteeredArray::gain_toward(double theta0_deg, const Mismatch& offset) const
{
    const double element_db = element_gain_db(theta0_deg, 0.0, cfg_.max_element_gain_dbi);
    double array_lin = 1.0;
    if (table_)
    {
        const Steering steering = steer_toward(theta0_deg, 0.0, cfg_);
        const double af = array_factor(theta0_deg + offset.theta_deg, offset.phi_deg, steering, cfg_);
        array_lin = af * af / mean_power(theta0_deg);
    }
    const double lin = units::db_to_linear(element_db) * array_lin;
    return {10.0 * std::log10(lin), lin, offset.theta_deg, offset.phi_deg};
}

std::shared_ptr<const SteeredArray> steered_array(const ArrayConfig& cfg)
{
    return std::make_shared<const SteeredArray>(cfg);
}

} // namespace uavmec::antenna

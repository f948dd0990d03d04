#pragma once

// Independent reference computations used only by the tests. Each one is
// written from the model formulas directly and shares no code with the
// library beyond plain math.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c0 = 299792458.0;

inline double sinc(double x)
{
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

/// Gain of an isotropic-element M x N array in its steered direction.
/// The sphere mean of |sum_i exp(j(k r_i.u + b_i))|^2 is
/// sum_ij cos(b_i - b_j) sin(k|r_i - r_j|)/(k|r_i - r_j|), so the gain is
/// (MN)^2 over that double sum, grouped by element offset (p, q).
inline double array_gain_closed_form(int m, int n, double dx_wl, double dy_wl, double beta_x, double beta_y)
{
    double sum = 0.0;
    for (int p = -(m - 1); p <= m - 1; ++p)
        for (int q = -(n - 1); q <= n - 1; ++q) {
            const double mult = double(m - std::abs(p)) * double(n - std::abs(q));
            const double dist = 2.0 * pi * std::hypot(p * dx_wl, q * dy_wl);
            sum += mult * std::cos(p * beta_x + q * beta_y) * sinc(dist);
        }
    const double mn = double(m) * double(n);
    return mn * mn / sum;
}

/// |AF| by explicit summation of element phasors, normalised to 1 at the peak.
inline double array_factor_direct(double theta_deg, double phi_deg, int m, int n, double dx_wl, double dy_wl,
                                  double beta_x, double beta_y)
{
    const double th = theta_deg * pi / 180.0;
    const double ph = phi_deg * pi / 180.0;
    const double ux = std::sin(th) * std::cos(ph);
    const double uy = std::sin(th) * std::sin(ph);
    std::complex<double> acc = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) {
            const double phase = a * (2.0 * pi * dx_wl * ux + beta_x) + b * (2.0 * pi * dy_wl * uy + beta_y);
            acc += std::polar(1.0, phase);
        }
    return std::abs(acc) / (double(m) * double(n));
}

struct Kappa
{
    double mu;
    double k1;
    double k2;
    double k3;
    double total() const { return k1 + k2 + k3; }
};

/// Absorption coefficient term by term: Buck saturation pressure, mixing
/// ratio, two water lines and the background polynomial (f in Hz).
inline Kappa kappa_terms(double f_hz, double t_kelvin, double p_pa, double humidity_pct)
{
    const double t_c = t_kelvin - 273.15;
    const double p_hpa = p_pa / 100.0;
    const double p_star = 6.1121 * (1.0007 + 3.46e-6 * p_hpa) * std::exp(17.502 * t_c / (240.94 + t_c));
    const double mu = humidity_pct * p_star / (100.0 * p_hpa);
    const double nu = f_hz / (100.0 * c0);
    Kappa k{};
    k.mu = mu;
    const double a1 = 0.4093 * mu + 0.0925;
    const double a2 = 0.537 * mu + 0.0956;
    k.k1 = 0.2205 * mu * (0.1303 * mu + 0.0294) / (a1 * a1 + (nu - 10.835) * (nu - 10.835));
    k.k2 = 2.014 * mu * (0.1702 * mu + 0.0303) / (a2 * a2 + (nu - 12.664) * (nu - 12.664));
    k.k3 = 5.54e-37 * f_hz * f_hz * f_hz - 3.94e-25 * f_hz * f_hz + 9.06e-14 * f_hz - 6.36e-3;
    return k;
}

/// Planck thermal noise power k T BW x / (e^x - 1) with x = h f / (k T).
inline double thermal_noise(double f_hz, double t_kelvin, double bw_hz)
{
    const double h = 6.62607015e-34;
    const double k = 1.380649e-23;
    const double x = h * f_hz / (k * t_kelvin);
    return k * t_kelvin * bw_hz * x / (std::exp(x) - 1.0);
}

struct SteppedMr
{
    double t_mr;      // 2 tau
    double t_reach;   // time at which R_min is reached, +inf if never
    bool reached;     // R_min reached before Q/2 was sent
};

/// Brute-force move-and-return time: step r(t) = R_0 - V t with midpoint
/// rate samples of width dt until Q/2 bits are delivered. Once R_min is
/// reached the rate is constant and the remainder is closed exactly.
inline SteppedMr stepped_mr(const std::function<double(double)>& rate, double r0, double r_min, double v,
                            double q_bits, double dt = 1e-3)
{
    const double half = 0.5 * q_bits;
    const double t_reach = r0 > r_min ? (r0 - r_min) / v : 0.0;
    double sent = 0.0;
    double t = 0.0;
    while (t < t_reach) {
        const double step = std::min(dt, t_reach - t);
        const double r_mid = r0 - v * (t + 0.5 * step);
        const double chunk = rate(r_mid) * step;
        if (sent + chunk >= half) {
            const double frac = (half - sent) / chunk;
            return {2.0 * (t + frac * step), t_reach, false};
        }
        sent += chunk;
        t += step;
    }
    const double r_end = r0 > r_min ? r_min : r0;
    return {2.0 * (t_reach + (half - sent) / rate(r_end)), t_reach, true};
}

} // namespace oracle

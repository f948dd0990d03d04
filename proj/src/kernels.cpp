#include "uavmec/kernels.hpp"

#include "uavmec/units.hpp"

#include <cmath>
#include <vector>

namespace uavmec::kernels {

namespace {

struct PhiTable
{
    std::vector<double> cos_phi;
    std::vector<double> sin_phi;
};

PhiTable make_phi_table(int cells)
{
    PhiTable t;
    t.cos_phi.resize(cells);
    t.sin_phi.resize(cells);
    const double h = 2.0 * units::pi / cells;
    for (int j = 0; j < cells; ++j)
    {
        const double phi = (j + 0.5) * h;
        t.cos_phi[j] = std::cos(phi);
        t.sin_phi[j] = std::sin(phi);
    }
    return t;
}

} // namespace

double mean_pattern_power(const PlanarArray& array, const SphereGrid& grid)
{
    const int n_theta = grid.theta_cells;
    const int n_phi = grid.phi_cells;
    const double h_theta = units::pi / n_theta;
    const PhiTable phi = make_phi_table(n_phi);

    // Rows 0..half-1 stand in for their mirror rows; an odd count leaves a middle row with weight 1.
    const int half = n_theta / 2;
    const int rows = half + (n_theta % 2);
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> row_weight(rows, 0.0);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i)
    {
        const double theta = (i + 0.5) * h_theta;
        const double s = std::sin(theta);
        double acc = 0.0;
        for (int j = 0; j < n_phi; ++j)
        {
            const double psi_x = array.kd_x * s * phi.cos_phi[j] + array.beta_x;
            const double psi_y = array.kd_y * s * phi.sin_phi[j] + array.beta_y;
            acc += dirichlet_power(array.m_elems, psi_x) * dirichlet_power(array.n_elems, psi_y);
        }
        const double fold = (i < half) ? 2.0 : 1.0;
        row_sum[i] = fold * s * acc;
        row_weight[i] = fold * s * n_phi;
    }

    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < rows; ++i)
    {
        num += row_sum[i];
        den += row_weight[i];
    }
    return num / den;
}

namespace reference {

double dirichlet_power(int m, double psi)
{
    const double s = std::sin(0.5 * psi);
    if (std::abs(s) < 1e-12)
        return 1.0;
    const double r = std::sin(0.5 * m * psi) / (m * s);
    return r * r;
}

double mean_pattern_power(const PlanarArray& array, const SphereGrid& grid)
{
    const double h_theta = units::pi / grid.theta_cells;
    const double h_phi = 2.0 * units::pi / grid.phi_cells;
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < grid.theta_cells; ++i)
    {
        const double theta = (i + 0.5) * h_theta;
        const double s = std::sin(theta);
        for (int j = 0; j < grid.phi_cells; ++j)
        {
            const double phi = (j + 0.5) * h_phi;
            const double psi_x = array.kd_x * s * std::cos(phi) + array.beta_x;
            const double psi_y = array.kd_y * s * std::sin(phi) + array.beta_y;
            num += dirichlet_power(array.m_elems, psi_x) * dirichlet_power(array.n_elems, psi_y) * s;
            den += s;
        }
    }
    return num / den;
}

} // namespace reference

} // namespace uavmec::kernels

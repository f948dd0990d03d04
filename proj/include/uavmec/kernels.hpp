#pragma once

// Data-parallel kernels. Each kernel has a plain serial twin in
// `kernels::reference` that the tests and the benchmark compare against.

#include <cmath>

namespace uavmec::kernels {

/// Midpoint grid over theta in [0, pi] and phi in [0, 2 pi].
struct SphereGrid
{
    int theta_cells = 721;
    int phi_cells = 1441;

    /// One refinement step: every cell is split so the old midpoints are kept as cell edges.
    SphereGrid refined() const { return {2 * theta_cells - 1, 2 * phi_cells - 1}; }
};

/// M x N planar array with spacings expressed as electrical lengths k*d and
/// progressive phase shifts in radians.
struct PlanarArray
{
    int m_elems = 1;
    int n_elems = 1;
    double kd_x = 3.141592653589793;
    double kd_y = 3.141592653589793;
    double beta_x = 0.0;
    double beta_y = 0.0;
};

/// |sin(M psi/2) / (M sin(psi/2))|^2 through the Chebyshev identity
/// sin(M x)/sin(x) = U_{M-1}(cos x), which has no removable singularity.
inline double dirichlet_power(int m, double psi)
{
    const double c = std::cos(0.5 * psi);
    double u_prev = 1.0; // U_0
    if (m == 1)
        return 1.0;
    double u = 2.0 * c; // U_1
    for (int k = 2; k < m; ++k)
    {
        const double next = 2.0 * c * u - u_prev;
        u_prev = u;
        u = next;
    }
    const double r = u / m;
    return r * r;
}

/// Sphere average of |AF|^2 weighted by sin(theta): sum(|AF|^2 w) / sum(w).
/// Rows are evaluated in parallel and reduced in row order, so the result is
/// bit-identical for any thread count. The theta -> pi - theta symmetry of the
/// planar array factor is used to halve the work.
double mean_pattern_power(const PlanarArray& array, const SphereGrid& grid);

namespace reference {

/// Textbook ratio form with the psi -> 0 limit handled explicitly.
double dirichlet_power(int m, double psi);

/// Full-grid, single-threaded evaluation of the same quadrature.
double mean_pattern_power(const PlanarArray& array, const SphereGrid& grid);

} // namespace reference

} // namespace uavmec::kernels

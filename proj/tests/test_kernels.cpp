#include "oracles.hpp"

#include "uavmec/kernels.hpp"

#include <catch_amalgamated.hpp>

#include <omp.h>

#include <cmath>

using namespace uavmec::kernels;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Dirichlet power agrees with the ratio form")
{
    for (int m : {1, 2, 3, 8, 16})
        for (double psi = -7.0; psi <= 7.0; psi += 0.013) {
            CHECK_THAT(dirichlet_power(m, psi), WithinAbs(reference::dirichlet_power(m, psi), 1e-12));
        }
    CHECK(dirichlet_power(8, 0.0) == 1.0);
    CHECK(reference::dirichlet_power(8, 0.0) == 1.0);
    CHECK_THAT(dirichlet_power(8, 2.0 * oracle::pi), WithinAbs(1.0, 1e-12));
}

TEST_CASE("mean pattern power: parallel kernel matches the serial reference")
{
    const SphereGrid grid{181, 361};
    for (int n : {1, 4, 8}) {
        for (double beta : {0.0, -1.1, -oracle::pi}) {
            const PlanarArray a{n, n, oracle::pi, oracle::pi, beta, 0.0};
            CHECK_THAT(mean_pattern_power(a, grid), WithinRel(reference::mean_pattern_power(a, grid), 1e-12));
        }
    }
}

TEST_CASE("mean pattern power is bit-identical for any thread count")
{
    const PlanarArray a{8, 8, oracle::pi, oracle::pi, -0.9, 0.2};
    const SphereGrid grid{241, 481};
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = mean_pattern_power(a, grid);
    omp_set_num_threads(4);
    const double four = mean_pattern_power(a, grid);
    omp_set_num_threads(saved);
    CHECK(one == four);
}

TEST_CASE("mean pattern power of one element is one")
{
    CHECK_THAT(mean_pattern_power({1, 1, 1.0, 1.0, 0.0, 0.0}, {}), WithinAbs(1.0, 1e-12));
}

TEST_CASE("mean pattern power against the closed-form sphere mean")
{
    for (int n : {2, 8}) {
        const PlanarArray a{n, n, oracle::pi, oracle::pi, 0.0, 0.0};
        const double expected = 1.0 / oracle::array_gain_closed_form(n, n, 0.5, 0.5, 0.0, 0.0);
        CHECK_THAT(mean_pattern_power(a, {}), WithinRel(expected, 1e-3));
    }
}

TEST_CASE("refined grid keeps the old midpoints as edges")
{
    const SphereGrid g{721, 1441};
    CHECK(g.refined().theta_cells == 1441);
    CHECK(g.refined().phi_cells == 2881);
}

#include "doctest.h"

#include "aggstat/errors.hpp"
#include "aggstat/potential.hpp"
#include "aggstat/radial_grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace aggstat;

namespace {

RadialProfile sampled(const RadialGrid& grid, double (*f)(double))
{
    RadialProfile p{grid, Eigen::VectorXd(grid.size())};
    for (int i = 0; i < grid.size(); ++i)
        p.values[i] = f(grid.nodes[i]);
    return p;
}

} // namespace

TEST_SUITE("radial_grid")
{
    TEST_CASE("volume weights reproduce ball volumes")
    {
        CHECK(make_grid(1, 1.0, 64).volume_weights.sum() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(make_grid(3, 1.0, 128).volume_weights.sum()
              == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
        CHECK(make_grid(2, 2.0, 64).volume_weights.sum()
              == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
    }

    TEST_CASE("grid structure: endpoints, ascending nodes, positive weights")
    {
        RadialGrid grid = make_grid(2, 1.5, 65);
        CHECK(grid.nodes[0] == 0.0);
        CHECK(grid.nodes[64] == 1.5);
        for (int i = 1; i < 65; ++i) {
            CHECK(grid.nodes[i] > grid.nodes[i - 1]);
            CHECK(grid.quad_weights[i] > 0.0);
        }
        CHECK(grid.volume_weights[0] == 0.0); // r^{N-1} kills the origin for N >= 2
        CHECK_THROWS_AS(make_grid(2, 1.0, 7), BadResolution);
    }

    TEST_CASE("mass of simple profiles")
    {
        RadialGrid grid = make_grid(3, 2.0, 96);
        RadialProfile c{grid, Eigen::VectorXd::Constant(96, 0.7)};
        CHECK(mass(c) == doctest::Approx(0.7 * ball_volume(3, 2.0)).epsilon(1e-12));
        CHECK(mass(zero_profile(grid)) == 0.0);

        RadialGrid line = make_grid(1, 8.0, 129);
        RadialProfile gauss = sampled(line, +[](double r) {
            return std::exp(-0.5 * r * r) / std::sqrt(2.0 * std::numbers::pi);
        });
        CHECK(mass(gauss) == doctest::Approx(1.0).epsilon(1e-6));
    }

    TEST_CASE("lm norms")
    {
        RadialGrid grid = make_grid(2, 1.0, 64);
        RadialProfile c{grid, Eigen::VectorXd::Constant(64, 2.0)};
        CHECK(lm_norm_m(c, 3.0) == doctest::Approx(8.0 * ball_volume(2, 1.0)).epsilon(1e-12));

        const double indicator = 1.0 / ball_volume(2, 1.0);
        RadialProfile ind{grid, Eigen::VectorXd::Constant(64, indicator)};
        CHECK(mass(ind) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(lm_norm_m(ind, 2.0) == doctest::Approx(indicator).epsilon(1e-12));
    }

    TEST_CASE("lm norm against a dense trapezoid oracle")
    {
        const int n_oracle = 1000001;
        const double R = 3.0, m = 2.5;
        const int N = 2;
        double oracle = 0.0;
        const double h = R / (n_oracle - 1);
        for (int i = 0; i < n_oracle; ++i) {
            const double r = i * h;
            const double f = std::pow(std::exp(-r * r), m) * r; // r^{N-1}, N=2
            oracle += (i == 0 || i == n_oracle - 1) ? 0.5 * f : f;
        }
        oracle *= h * unit_sphere_area(N);

        RadialProfile p = sampled(make_grid(N, R, 128), +[](double r) { return std::exp(-r * r); });
        CHECK(lm_norm_m(p, m) == doctest::Approx(oracle).epsilon(1e-8));
    }

    TEST_CASE("normalize_mass")
    {
        RadialGrid grid = make_grid(2, 1.0, 64);
        RadialProfile p = sampled(grid, +[](double r) { return 1.0 + std::cos(3.0 * r); });
        RadialProfile unit = normalize_mass(p);
        CHECK(mass(unit) == doctest::Approx(1.0).epsilon(1e-12));

        RadialProfile scaled{grid, 7.0 * p.values};
        RadialProfile unit2 = normalize_mass(scaled);
        CHECK((unit2.values - unit.values).cwiseAbs().maxCoeff() < 1e-14);

        RadialProfile ones{grid, Eigen::VectorXd::Ones(64)};
        RadialProfile flat = normalize_mass(ones);
        CHECK(flat.values[10] == doctest::Approx(1.0 / ball_volume(2, 1.0)).epsilon(1e-12));

        CHECK_THROWS_AS(normalize_mass(zero_profile(grid)), ZeroMass);
    }

    TEST_CASE("positive homogeneity of mass and lm norm")
    {
        RadialGrid grid = make_grid(3, 1.7, 96);
        RadialProfile p = sampled(grid, +[](double r) { return std::exp(-r) * (2.0 + r); });
        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> unif(1e-3, 10.0);
        for (int trial = 0; trial < 8; ++trial) {
            const double c = unif(rng);
            RadialProfile q{grid, c * p.values};
            CHECK(mass(q) == doctest::Approx(c * mass(p)).epsilon(1e-13));
            CHECK(lm_norm_m(q, 2.3)
                  == doctest::Approx(std::pow(c, 2.3) * lm_norm_m(p, 2.3)).epsilon(1e-12));
        }
    }

    TEST_CASE("quadrature accuracy improves by at least 4x under refinement")
    {
        auto wiggly = +[](double r) { return std::exp(-r * r) * std::cos(6.0 * r) + 1.0; };
        const double R = 2.0;
        double exact = 0.0;
        {
            RadialProfile fine = sampled(make_grid(1, R, 2049), wiggly);
            exact = mass(fine);
        }
        const double err_coarse = std::abs(mass(sampled(make_grid(1, R, 9), wiggly)) - exact);
        const double err_fine = std::abs(mass(sampled(make_grid(1, R, 17), wiggly)) - exact);
        CHECK(err_fine * 4.0 <= err_coarse);
    }

    TEST_CASE("resample")
    {
        RadialGrid grid = make_grid(2, 2.0, 65);
        RadialProfile p = sampled(grid, +[](double r) { return std::exp(-r * r); });

        RadialProfile same = resample(p, grid);
        CHECK((same.values - p.values).cwiseAbs().maxCoeff() == 0.0);

        RadialGrid fine = make_grid(2, 2.0, 129);
        RadialProfile round = resample(resample(p, fine), grid);
        CHECK((round.values - p.values).cwiseAbs().maxCoeff() < 1e-5);
        const double drift = std::abs(mass(resample(p, fine)) - mass(p)) / mass(p);
        CHECK(drift < 1e-4);

        RadialGrid wider = make_grid(2, 4.0, 129);
        RadialProfile ext = resample(p, wider);
        for (int i = 0; i < wider.size(); ++i)
            if (wider.nodes[i] > 2.0)
                CHECK(ext.values[i] == 0.0);

        RadialGrid other_dim = make_grid(3, 2.0, 65);
        CHECK_THROWS_AS(resample(p, other_dim), DimensionMismatch);
    }

    TEST_CASE("support radius and monotonicity helpers")
    {
        RadialGrid grid = make_grid(1, 1.0, 33);
        RadialProfile p = zero_profile(grid);
        CHECK(support_radius(p) == 0.0);
        p.values[0] = 1.0;
        p.values[1] = 0.5;
        p.values[2] = 0.25;
        CHECK(support_radius(p) == doctest::Approx(grid.nodes[2]));
        CHECK(is_non_increasing(p));
        p.values[20] = 2.0;
        CHECK_FALSE(is_non_increasing(p));
    }
}

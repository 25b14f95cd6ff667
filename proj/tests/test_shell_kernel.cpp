#include "doctest.h"

#include "aggstat/errors.hpp"
#include "aggstat/shell_kernel.hpp"

#include <cmath>
#include <numbers>

using namespace aggstat;

namespace {

constexpr double kPi = std::numbers::pi;

RadialProfile narrow_bump(const RadialGrid& grid, double width)
{
    RadialProfile p = zero_profile(grid);
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        if (r < width)
            p.values[i] = 1.0 + std::cos(kPi * r / width);
    }
    return normalize_mass(p);
}

double weighted_symmetry_defect(const ShellKernels& ker, const Eigen::MatrixXd& M)
{
    const int n = ker.grid.size();
    const int N = ker.grid.dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double lhs = std::pow(ker.grid.nodes[i], N - 1.0) * M(i, j);
            const double rhs = std::pow(ker.grid.nodes[j], N - 1.0) * M(j, i);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst / M.cwiseAbs().maxCoeff();
}

} // namespace

TEST_SUITE("shell_kernel")
{
    TEST_CASE("one-dimensional kernels are the exact two-point shell")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        RadialGrid grid = make_grid(1, 1.0, 65);
        ShellKernels ker = assemble_kernels(pot, grid, 16);
        for (int i = 0; i < grid.size(); ++i)
            for (int j = 0; j < grid.size(); ++j) {
                const double r = grid.nodes[i], s = grid.nodes[j];
                CHECK(std::abs(ker.K(i, j) - (pot.g(std::abs(r - s)) + pot.g(r + s))) <= 1e-14);
                CHECK(std::abs(ker.H(i, j) - (pot.g(std::abs(r - s)) - pot.g(r + s))) <= 1e-14);
            }
        // H(1,1) = g(0) - g(2) = (1 - e^{-2})/sqrt(2 pi).
        const int last = grid.size() - 1;
        CHECK(ker.H(last, last)
              == doctest::Approx((1.0 - std::exp(-2.0)) / std::sqrt(2.0 * kPi)).epsilon(1e-14));
    }

    TEST_CASE("H vanishes at r = 0 and the r = 0 row of K is the exact shell value")
    {
        for (int N : {1, 2, 3}) {
            RadialPotential pot = RadialPotential::gaussian(1.0, N);
            RadialGrid grid = make_grid(N, 1.5, 48);
            ShellKernels ker = assemble_kernels(pot, grid, 32);
            for (int j = 0; j < grid.size(); ++j) {
                CHECK(ker.H(0, j) == 0.0);
                const double s = grid.nodes[j];
                CHECK(ker.K(0, j)
                      == doctest::Approx(unit_sphere_area(N) * std::pow(s, N - 1.0) * pot.g(s))
                             .epsilon(1e-12));
            }
        }
        // In three dimensions the shell area is 4 pi s^2.
        RadialPotential pot3 = RadialPotential::gaussian(1.0, 3);
        RadialGrid grid3 = make_grid(3, 2.0, 48);
        ShellKernels ker3 = assemble_kernels(pot3, grid3, 32);
        for (int j : {5, 20, 40}) {
            const double s = grid3.nodes[j];
            CHECK(ker3.K(0, j) == doctest::Approx(4.0 * kPi * s * s * pot3.g(s)).epsilon(1e-12));
        }
    }

    TEST_CASE("weighted symmetry r^{N-1} K(r,s) = s^{N-1} K(s,r) and the H analogue")
    {
        for (int N : {1, 2, 3}) {
            RadialPotential pot = RadialPotential::gaussian(1.0, N);
            ShellKernels ker = assemble_kernels(pot, make_grid(N, 2.0, 64), 32);
            CHECK(weighted_symmetry_defect(ker, ker.K) <= 1e-8);
            CHECK(weighted_symmetry_defect(ker, ker.H) <= 1e-8);
            CHECK(ker.K.minCoeff() >= 0.0);
            CHECK(ker.H.minCoeff() >= -1e-15 * ker.H.maxCoeff());
        }
    }

    TEST_CASE("under-resolved angular quadrature is reported")
    {
        RadialPotential sharp = RadialPotential::inverse_multiquadric(0.02, 2.0, 2);
        RadialGrid grid = make_grid(2, 2.0, 32);
        AssemblyOptions opts;
        opts.max_angular_n = 16;
        CHECK_THROWS_AS(assemble_kernels(sharp, grid, 16, opts), QuadratureUnderResolved);
    }

    TEST_CASE("dimension mismatch is rejected")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 2);
        CHECK_THROWS_AS(assemble_kernels(pot, make_grid(3, 1.0, 32), 32), DimensionMismatch);
    }

    TEST_CASE("convolution of a narrowing bump approaches g(r)")
    {
        for (int N : {1, 2, 3}) {
            RadialPotential pot = RadialPotential::gaussian(1.0, N);
            RadialGrid grid = make_grid(N, 1.5, 257);
            ShellKernels ker = assemble_kernels(pot, grid, 48);
            const int probe = 200; // some radius well outside the bumps
            const double r = grid.nodes[probe];

            double prev_err = 1e99;
            double vals[3];
            int k = 0;
            for (double width : {0.2, 0.1, 0.05}) {
                RadialProfile bump = narrow_bump(grid, width);
                vals[k++] = convolve(ker, bump).values[probe];
                const double err = std::abs(vals[k - 1] - pot.g(r));
                CHECK(err < prev_err); // second-order shrinkage with the width
                prev_err = err;
            }
            const double extrapolated = (4.0 * vals[2] - vals[1]) / 3.0;
            CHECK(extrapolated == doctest::Approx(pot.g(r)).epsilon(1e-5));
        }
    }

    TEST_CASE("full-mass limit: constant profile on a huge interval")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        RadialGrid grid = make_grid(1, 40.0, 257);
        ShellKernels ker = assemble_kernels(pot, grid, 16);
        RadialProfile c{grid, Eigen::VectorXd::Constant(257, 0.3)};
        CHECK(convolve(ker, c).values[0] == doctest::Approx(0.3).epsilon(1e-10));
    }

    TEST_CASE("convolution invariants: zero input, g(0) bound, monotonicity")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 2);
        RadialGrid grid = make_grid(2, 2.0, 129);
        ShellKernels ker = assemble_kernels(pot, grid, 48);

        CHECK(convolve(ker, zero_profile(grid)).values.cwiseAbs().maxCoeff() == 0.0);

        RadialProfile bump = narrow_bump(grid, 2.0);
        const Eigen::VectorXd conv = convolve(ker, bump).values;
        CHECK(conv.minCoeff() > 0.0);
        CHECK(conv.maxCoeff() <= pot.g(0.0) * mass(bump) * (1.0 + 1e-12));
        for (int i = 1; i < grid.size(); ++i)
            CHECK(conv[i] <= conv[i - 1] + 1e-12 * conv[0]);
    }

    TEST_CASE("boundary convolution")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 2);
        RadialGrid grid = make_grid(2, 2.0, 65);
        ShellKernels ker = assemble_kernels(pot, grid, 48);
        RadialProfile bump = narrow_bump(grid, 2.0);
        const double at_R = boundary_convolution(ker, bump);
        CHECK(at_R == convolve(ker, bump).values[grid.size() - 1]);
        CHECK(at_R > 0.0);

        // Same profile shape inside a bigger ball: the boundary value drops.
        RadialGrid wider = make_grid(2, 3.0, 97);
        ShellKernels ker2 = assemble_kernels(pot, wider, 48);
        RadialProfile ext = normalize_mass(resample(bump, wider));
        CHECK(boundary_convolution(ker2, ext) < at_R);
    }

    TEST_CASE("H operator: positivity and the 1-D closed-form value")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        RadialGrid grid = make_grid(1, 1.0, 129);
        ShellKernels ker = assemble_kernels(pot, grid, 16);

        CHECK(apply_H(ker, zero_profile(grid)).values.cwiseAbs().maxCoeff() == 0.0);

        RadialProfile ones{grid, Eigen::VectorXd::Ones(129)};
        const Eigen::VectorXd hu = apply_H(ker, ones).values;
        CHECK(hu[0] == 0.0);
        for (int i = 1; i < grid.size(); ++i)
            CHECK(hu[i] > 0.0);

        // (H 1)(1) = int_0^1 g(1-s) - g(1+s) ds via the gaussian antiderivative.
        auto Phi = [](double z) { return 0.5 * std::erf(z / std::sqrt(2.0)); };
        const double exact = 2.0 * Phi(1.0) - Phi(0.0) - Phi(2.0);
        CHECK(hu[grid.size() - 1] == doctest::Approx(exact).epsilon(1e-12));
    }

    TEST_CASE("grid mismatch is rejected")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 2);
        ShellKernels ker = assemble_kernels(pot, make_grid(2, 2.0, 64), 32);
        RadialProfile other = zero_profile(make_grid(2, 1.0, 64));
        CHECK_THROWS_AS(convolve(ker, other), GridMismatch);
        CHECK_THROWS_AS(apply_H(ker, other), GridMismatch);
        CHECK_THROWS_AS(boundary_convolution(ker, other), GridMismatch);
    }
}

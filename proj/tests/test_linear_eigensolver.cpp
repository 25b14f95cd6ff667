#include "doctest.h"

#include "aggstat/errors.hpp"
#include "aggstat/linear_eigensolver.hpp"
#include "aggstat/oracle.hpp"

#include <cmath>

using namespace aggstat;

TEST_SUITE("linear_eigensolver")
{
    TEST_CASE("power iteration on a 2x2 matrix with a known eigenpair")
    {
        Eigen::MatrixXd A(2, 2);
        A << 2.0, 1.0, 1.0, 2.0;
        PowerIterationResult res = power_iteration(A);
        CHECK(res.eigenvalue == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(res.vector[0] == doctest::Approx(res.vector[1]).epsilon(1e-10));
        CHECK(res.residual <= 1e-10);
    }

    TEST_CASE("power iteration respects the iteration cap")
    {
        Eigen::MatrixXd A(2, 2);
        A << 2.0, 1.0, 0.0, 1.0; // start vector is not the eigenvector here
        PowerIterationOptions opts;
        opts.max_iter = 2;
        CHECK_THROWS_AS(power_iteration(A, opts), NoConvergence);
    }

    TEST_CASE("principal eigenpair: nonnegative eigenfunction vanishing at zero")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        ShellKernels ker = assemble_kernels(pot, make_grid(1, 1.0, 129), 16);
        auto [eps, u] = principal_eigenpair(ker);
        CHECK(eps > 0.0);
        CHECK(eps < 1.0);
        CHECK(u.values[0] == 0.0);
        CHECK(u.values.minCoeff() >= 0.0);
        CHECK(u.values.maxCoeff() == doctest::Approx(1.0));
    }

    TEST_CASE("power iteration agrees with the dense oracle on the same matrix")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        for (double R : {0.5, 1.0, 2.0}) {
            DenseEigResult dense = dense_eig_1d(pot, R, 129);
            PowerIterationResult power = power_iteration(dense.matrix);
            CHECK(std::abs(power.eigenvalue - dense.eigenvalue_magnitudes[0]) <= 1e-10);
            CHECK(dense.spectral_gap > 0.0);
        }
    }

    TEST_CASE("density reconstruction from the eigenfunction")
    {
        RadialGrid grid = make_grid(1, 2.0, 65);
        RadialProfile ones{grid, Eigen::VectorXd::Ones(65)};
        RadialProfile ramp = integrate_tail(ones);
        for (int i = 0; i < grid.size(); ++i)
            CHECK(ramp.values[i] == doctest::Approx(2.0 - grid.nodes[i]).epsilon(1e-13));

        RadialProfile rho = reconstruct_density(ones);
        CHECK(mass(rho) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.values[grid.size() - 1] == doctest::Approx(0.0));

        CHECK_THROWS_AS(reconstruct_density(zero_profile(grid)), ZeroMass);
    }

    TEST_CASE("scale invariance: reconstruction ignores the eigenvector scale")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        EigenSolveOptions opts;
        opts.n = 65;
        opts.angular_n = 16;
        EigenResult res = solve_eigen(pot, 1.0, opts);
        RadialProfile scaled{res.u.grid, 7.5 * res.u.values};
        RadialProfile rho2 = reconstruct_density(scaled);
        CHECK((rho2.values - res.rho.values).cwiseAbs().maxCoeff() < 1e-13);
    }

    TEST_CASE("solved stationary state satisfies the fixed-point identity")
    {
        for (int N : {1, 2}) {
            RadialPotential pot = RadialPotential::gaussian(1.0, N);
            const double R = 1.5;
            EigenSolveOptions opts;
            opts.n = 257;
            opts.angular_n = 48;
            EigenResult res = solve_eigen(pot, R, opts);
            CHECK(res.residual <= 1e-8);
            CHECK(res.epsilon > 0.0);
            CHECK(res.epsilon < 1.0);
            CHECK(is_non_increasing(res.rho));
            CHECK(res.rho.values[res.rho.grid.size() - 1] == doctest::Approx(0.0).epsilon(1e-12));

            ShellKernels ker = assemble_kernels(pot, res.rho.grid, opts.angular_n);
            const Eigen::VectorXd conv = convolve(ker, res.rho).values;
            const double at_R = conv[ker.grid.size() - 1];
            double defect = 0.0;
            for (int i = 0; i < ker.grid.size(); ++i)
                defect = std::max(defect,
                                  std::abs(res.epsilon * res.rho.values[i] - conv[i] + at_R));
            CHECK(defect / (res.epsilon * res.rho.values.maxCoeff()) <= 1e-6);
        }
    }

    TEST_CASE("grid convergence of the eigenvalue")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 2);
        EigenSolveOptions coarse;
        coarse.n = 257;
        coarse.angular_n = 48;
        EigenSolveOptions fine = coarse;
        fine.n = 513;
        const double e1 = solve_eigen(pot, 2.0, coarse).epsilon;
        const double e2 = solve_eigen(pot, 2.0, fine).epsilon;
        CHECK(std::abs(e1 - e2) <= 1e-6);
    }

    TEST_CASE("eps(R) curve: strictly increasing inside (0,1), small at small R")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        EigenSolveOptions opts;
        opts.n = 129;
        opts.angular_n = 16;
        std::vector<CurvePoint> curve =
            epsilon_of_R_curve(pot, {0.5, 1.0, 2.0, 4.0, 8.0}, opts);
        REQUIRE(curve.size() == 5);
        for (const CurvePoint& pt : curve) {
            CHECK(pt.ok);
            CHECK(pt.epsilon > 0.0);
            CHECK(pt.epsilon < 1.0);
        }
        CHECK(epsilons_strictly_increasing(curve));

        std::vector<CurvePoint> tiny = epsilon_of_R_curve(pot, {0.01}, opts);
        CHECK(tiny[0].epsilon < 0.05);
    }

    TEST_CASE("radius inversion: round trip, ordering, bracket failure")
    {
        RadialPotential pot = RadialPotential::gaussian(1.0, 1);
        RadiusSearchOptions opts;
        opts.solve.n = 129;
        opts.solve.angular_n = 16;

        const double eps_ref = solve_eigen(pot, 1.3, opts.solve).epsilon;
        EigenResult round = solve_R_for_epsilon(pot, eps_ref, 1e-10, opts);
        CHECK(std::abs(round.epsilon - eps_ref) <= 1e-10);
        CHECK(round.R == doctest::Approx(1.3).epsilon(1e-6));

        EigenResult lo = solve_R_for_epsilon(pot, 0.3, 1e-8, opts);
        EigenResult hi = solve_R_for_epsilon(pot, 0.6, 1e-8, opts);
        CHECK(lo.R < hi.R);

        RadiusSearchOptions capped = opts;
        capped.R_max = 4.0;
        CHECK_THROWS_AS(solve_R_for_epsilon(pot, 0.999999, 1e-8, capped), BracketFailure);
    }
}

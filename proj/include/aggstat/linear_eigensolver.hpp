#ifndef AGGSTAT_LINEAR_EIGENSOLVER_HPP
#define AGGSTAT_LINEAR_EIGENSOLVER_HPP

#include "aggstat/shell_kernel.hpp"

#include <Eigen/Core>
#include <string>
#include <vector>

namespace aggstat {

/*
 * Quadratic diffusion (m = 2). A compactly supported stationary density with
 * support B_R(0) is recovered from the principal eigenpair of the positive
 * compact operator u -> int_0^R H(.,s) u(s) ds acting on u = -rho', via
 *
 *   eps u = H_R[u],   rho(r) = int_r^R u(s) ds,   mass-normalized,
 *
 * and eps(R) is simple and dominant, sits in (0,1), and increases strictly
 * with R. Power iteration from a positive start vector therefore converges
 * to the right pair; the dense eigensolve in the oracle module cross-checks
 * it on the identical collocation matrix.
 */

struct PowerIterationOptions {
    double rq_tol = 1e-13;       // successive Rayleigh-quotient change
    double residual_tol = 1e-10; // ||A x - lambda x||_inf with ||x||_inf = 1
    int max_iter = 100000;
};

struct PowerIterationResult {
    double eigenvalue = 0.0;
    Eigen::VectorXd vector; // sup-normalized, nonnegative for nonneg A
    int iterations = 0;
    double residual = 0.0;
};

/// Dominant eigenpair of an arbitrary square matrix by power iteration from
/// a strictly positive start vector. Throws NoConvergence at the cap.
PowerIterationResult power_iteration(const Eigen::MatrixXd& A,
                                     const PowerIterationOptions& opts = {});

/// Principal eigenpair of the H_R collocation matrix; u(0) = 0 by H(0,.) = 0.
std::pair<double, RadialProfile> principal_eigenpair(const ShellKernels& ker,
                                                     const PowerIterationOptions& opts = {});

/// rho(r_i) = int_{r_i}^R u ds, by exact integration of the Chebyshev
/// interpolant on the Clenshaw-Curtis grid. Not normalized.
RadialProfile integrate_tail(const RadialProfile& u);

/// integrate_tail followed by mass normalization; throws ZeroMass for u == 0.
RadialProfile reconstruct_density(const RadialProfile& u);

struct EigenResult {
    double R = 0.0;
    double epsilon = 0.0;
    RadialProfile u;   // eigenfunction, u = -rho' >= 0
    RadialProfile rho; // reconstructed density, mass 1
    int iterations = 0;
    double residual = 0.0;
};

struct EigenSolveOptions {
    int n = 257;
    int angular_n = 64;
    PowerIterationOptions power;
    AssemblyOptions assembly;
};

/// Assemble kernels on B_R and solve for (eps(R), u, rho).
EigenResult solve_eigen(const RadialPotential& pot, double R, const EigenSolveOptions& opts = {});

struct CurvePoint {
    double R = 0.0;
    double epsilon = 0.0;
    double energy = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool ok = false;
    std::string message;
};

/// One independent eigensolve per radius; energy evaluated at eps = eps(R).
std::vector<CurvePoint> epsilon_of_R_curve(const RadialPotential& pot,
                                           const std::vector<double>& R_list,
                                           const EigenSolveOptions& opts = {}, int jobs = 1);

bool epsilons_strictly_increasing(const std::vector<CurvePoint>& points);

struct RadiusSearchOptions {
    EigenSolveOptions solve;
    double R_init = 1.0;
    double R_max = 1024.0; // bracket-expansion cap
    int max_bisections = 200;
};

/// Invert the strictly increasing map R -> eps(R) by bracketed bisection;
/// returns the solve at the final radius with |eps(R) - eps_target| <= tol.
/// Throws BracketFailure when eps(R_max) still falls short of the target.
EigenResult solve_R_for_epsilon(const RadialPotential& pot, double eps_target, double tol,
                                const RadiusSearchOptions& opts = {});

} // namespace aggstat

#endif

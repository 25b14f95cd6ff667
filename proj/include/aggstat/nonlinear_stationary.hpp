#ifndef AGGSTAT_NONLINEAR_STATIONARY_HPP
#define AGGSTAT_NONLINEAR_STATIONARY_HPP

#include "aggstat/linear_eigensolver.hpp"
#include "aggstat/shell_kernel.hpp"

#include <optional>
#include <vector>

namespace aggstat {

/*
 * General diffusion exponent m > 1. A compact stationary density with
 * support B_R(0) solves
 *
 *   eps rho^{m-1}(x) = (G*rho)(x) - (G*rho)(R)   on B_R(0),  mass(rho) = 1,
 *
 * and the pair (eps, rho) is computed by damped fixed-point iteration:
 * from rho_k build w = G*rho_k - (G*rho_k)(R), invert the nonlinearity
 * rho_hat = max(w,0)^{1/(m-1)}, and read eps off the mass normalization,
 * eps_k = mass(rho_hat)^{m-1}. For m = 2 this is power iteration on the
 * kernel K(r,s) - K(R,s) and reproduces the linear eigensolver.
 */

struct StationaryResult {
    double m = 0.0;
    double R = 0.0;
    double epsilon = 0.0;
    RadialProfile rho; // mass 1, non-increasing, rho(R) = 0
    double residual = 0.0;
    double energy = 0.0;
    double compactness_margin = 0.0; // 2E - eps (2/m - 1) ||rho||_m^m = -(G*rho)(R)
    int iterations = 0;
};

struct StationaryOptions {
    int n = 257;
    int angular_n = 64;
    double damping = 0.0;       // 0 = auto: 0.5 for m < 2, 1.0 otherwise
    int max_iter = 50000;
    double tol = 1e-13;         // L^1 distance between successive iterates
    double residual_tol = 1e-6; // acceptance bound on the stationarity residual
    std::optional<RadialProfile> init; // must live on the solve grid if set
    AssemblyOptions assembly;
};

/// Throws NoConvergence past max_iter and DegenerateProfile if the iterate
/// collapses to zero mass.
StationaryResult solve_stationary(const RadialPotential& pot, double m, double R,
                                  const StationaryOptions& opts = {});

/// max over nodes with rho > 1e-12 of |eps rho^{m-1} - G*rho - C|, C =
/// -(G*rho)(R), normalized by g(0).
double residual_el(const StationaryResult& res, const ShellKernels& ker);

/// Relative errors of the structural identities a converged compact
/// stationary state satisfies, plus the sign of its energy.
struct IdentityReport {
    double lm_identity_error = 0.0;      // eps ||rho||_m^m vs int (G*rho) rho - (G*rho)(R)
    double energy_identity_error_a = 0.0; // E vs eps (1/m - 1/2)||rho||_m^m - (G*rho)(R)/2
    double energy_identity_error_b = 0.0; // E vs (1/m - 1/2) int (G*rho) rho - (G*rho)(R)/m
    double energy = 0.0;
    bool negative_energy_required = false; // m >= 2
    bool energy_negative = false;
    bool identities_ok = false; // all three errors within tol
    double tol = 1e-6;
};

IdentityReport energy_identities_check(const StationaryResult& res, const ShellKernels& ker);

/// Lower bound eps^{1/(m-2)} on |B_R(0)| for m > 2; throws NotApplicable
/// otherwise.
struct SupportBound {
    double bound = 0.0;
    bool satisfied = false;
};

SupportBound support_bound_check(const StationaryResult& res);

/// Independent solves per radius. For m != 2 monotonicity of eps(R) is an
/// observation, not a theorem; the caller decides what to assert.
std::vector<CurvePoint> epsilon_of_R_curve_nonlinear(const RadialPotential& pot, double m,
                                                     const std::vector<double>& R_list,
                                                     const StationaryOptions& opts = {},
                                                     int jobs = 1);

} // namespace aggstat

#endif

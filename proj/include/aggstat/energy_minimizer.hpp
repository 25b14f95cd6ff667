#ifndef AGGSTAT_ENERGY_MINIMIZER_HPP
#define AGGSTAT_ENERGY_MINIMIZER_HPP

#include "aggstat/shell_kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aggstat {

/*
 * Constrained minimization of
 *
 *   E[rho] = (eps/m) int rho^m - (1/2) int (G*rho) rho
 *
 * over nonnegative unit-mass radial profiles supported in a ball. Descent
 * steps use the mass-preserving multiplicative direction -rho (v - vbar)
 * built from the first variation v = eps rho^{m-1} - G*rho, with vbar the
 * rho-weighted mean of v; after clipping at zero the profile is
 * renormalized, and steps are accepted under Armijo backtracking so the
 * energy never increases. At a constrained minimum v is constant where
 * rho > 0 and no smaller elsewhere, which is what kkt_residual measures.
 */

double energy(const RadialProfile& p, double m, double epsilon, const ShellKernels& ker);

/// v(r) = eps rho^{m-1}(r) - (G*rho)(r).
RadialProfile first_variation(const RadialProfile& p, double m, double epsilon,
                              const ShellKernels& ker);

enum class MinimizeStatus { Converged, NoConvergence, NoMinimizer, UnboundedSupport };

std::string to_string(MinimizeStatus status);

struct MinimizeResult {
    double epsilon = 0.0;
    double m = 0.0;
    double R_box = 0.0;
    RadialProfile rho;
    double energy = 0.0;
    double support_radius = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    MinimizeStatus status = MinimizeStatus::NoConvergence;
    std::string detail;
};

struct MinimizeOptions {
    int n = 193;
    int angular_n = 64;
    double kkt_tol = 1e-7;  // relative to g(0)
    int max_iter = 40000;
    double R0 = 1.0;        // first box radius for the global search
    double R_cap = 128.0;   // box doubling cap
    std::optional<RadialProfile> init; // used when it lives on the box grid
    AssemblyOptions assembly;
};

/// Minimize within the fixed box B_R_box. Always returns the best iterate;
/// status Converged requires kkt_residual <= kkt_tol.
MinimizeResult minimize_in_ball(const RadialPotential& pot, double m, double epsilon,
                                double R_box, const MinimizeOptions& opts = {});

/// Repeat minimize_in_ball on doubling boxes until the support radius
/// stabilizes (change below the grid spacing across one doubling). Failure
/// classification: for m = 2 and eps >= 1 no minimizer exists (sharp
/// threshold), so escape to the cap reports NoMinimizer; for 1 < m < 2 an
/// escape reports UnboundedSupport (the above-threshold regime).
MinimizeResult minimize_global(const RadialPotential& pot, double m, double epsilon,
                               const MinimizeOptions& opts = {});

/// Scale-free interaction quotient (m/2) int (G*rho) rho / ||rho||_m^m,
/// evaluated on the mass-normalized input (exactly invariant under
/// rho -> c rho).
double rayleigh_quotient(const RadialProfile& p, double m, const ShellKernels& ker);

struct Epsilon0Result {
    double epsilon0 = 0.0;       // saturated supremum estimate of the quotient
    double upper_bound = 0.0;    // (m/2) ||G||_{L^{1/(m-1)}}
    RadialProfile maximizer;
    double support_radius = 0.0;
};

struct ThresholdOptions {
    int n = 161;
    int angular_n = 48;
    double ascent_tol = 1e-10; // relative quotient gain per sweep
    int max_iter = 20000;
    double R0 = 2.0;
    double R_cap = 64.0;
    AssemblyOptions assembly;
};

/// Maximize the quotient over balls of doubling radius with three restarts
/// (cosine bump, uniform, two-scale bump); 1 < m < 2 only.
Epsilon0Result estimate_epsilon0(const RadialPotential& pot, double m,
                                 const ThresholdOptions& opts = {});

struct Epsilon1Point {
    double R = 0.0;
    double epsilon = 0.0;
    bool ok = false;
};

struct Epsilon1Result {
    double epsilon1_empirical = 0.0; // largest stationary eps attained on the sweep
    double ceiling = 0.0;            // (2/m) epsilon0
    double epsilon0 = 0.0;
    std::vector<Epsilon1Point> sweep;
    bool all_below_ceiling = false;
    bool at_least_epsilon0 = false;  // observation, not asserted
};

/// Sweep the stationary solver over a radius grid and report the attained
/// eps range against the ceiling (2/m) epsilon0. epsilon0 <= 0 recomputes it.
Epsilon1Result estimate_epsilon1(const RadialPotential& pot, double m,
                                 const std::vector<double>& R_sweep, double epsilon0 = 0.0,
                                 const ThresholdOptions& opts = {});

} // namespace aggstat

#endif

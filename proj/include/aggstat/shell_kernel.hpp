#ifndef AGGSTAT_SHELL_KERNEL_HPP
#define AGGSTAT_SHELL_KERNEL_HPP

#include "aggstat/potential.hpp"
#include "aggstat/radial_grid.hpp"

#include <Eigen/Core>

#include <string>

namespace aggstat {

/*
 * Spherical-shell reductions of the interaction potential. For radial G and
 * rho, the N-dimensional convolution collapses to one radial variable:
 *
 *   (G*rho)(r) = int_0^R K(r,s) rho(s) ds,   K(r,s) = int_{dB_s(0)} G(r e1 - y) dsigma(y)
 *
 * and the derivative kernel carries the axial cosine:
 *
 *   H(r,s) = int_{dB_s(0)} G(r e1 - y) (y.e1/|y|) dsigma(y).
 *
 * In spherical coordinates around e1 the shell integral of any F(|r e1 - y|)
 * reduces to a single polar angle,
 *
 *   int_{dB_s} F dsigma = omega_{N-1} s^{N-1} int_0^pi F(sqrt(r^2+s^2-2rs cos t)) (sin t)^{N-2} dt,
 *
 * (the H integrand gains a cos t factor), which is what gets quadratured
 * here. For N = 1 the shell is the two points {-s, s} and both kernels are
 * exact: K = g(|r-s|) + g(r+s), H = g(|r-s|) - g(r+s).
 *
 * Both kernels satisfy the weight symmetry r^{N-1} K(r,s) = s^{N-1} K(s,r)
 * (likewise H), H >= 0, and H(0,s) = 0.
 */
struct ShellKernels {
    RadialGrid grid;
    Eigen::MatrixXd K;
    Eigen::MatrixXd H;
    int angular_nodes_used = 0;
    double g_at_origin = 0.0; // g(0), the natural residual scale (G <= g(0))
};

struct AssemblyOptions {
    int max_angular_n = 4096;  // doubling cap
    double refine_tol = 1e-8;  // stop doubling below this relative change
    double accept_tol = 1e-6;  // above this at the cap: QuadratureUnderResolved
    int jobs = 0;              // row-parallel assembly, 0 = hardware
    std::string cache_dir;     // binary kernel cache location; empty = off
};

/// Gauss-Legendre in the polar angle, doubled from angular_n until the
/// entrywise change drops below refine_tol (relative to the largest entry).
/// The r = 0 row uses the exact constant-shell values K(0,s) =
/// omega_N s^{N-1} g(s), H(0,s) = 0.
ShellKernels assemble_kernels(const RadialPotential& pot, const RadialGrid& grid, int angular_n,
                              const AssemblyOptions& opts = {});

/// Radial representative of G*rho on the grid nodes.
RadialProfile convolve(const ShellKernels& ker, const RadialProfile& p);

/// (G*rho)(R), the convolution at the boundary node.
double boundary_convolution(const ShellKernels& ker, const RadialProfile& p);

/// The positive operator u -> int_0^R H(.,s) u(s) ds; zero at r = 0 and
/// strictly positive on (0,R] for nonnegative nonzero u.
RadialProfile apply_H(const ShellKernels& ker, const RadialProfile& u);

/// Collocation matrix A_ij = w_j H(r_i, s_j) of the operator above.
Eigen::MatrixXd h_collocation_matrix(const ShellKernels& ker);

/// Content key of a cache entry: hash of (family, params, N, R, n, angular_n).
std::string kernel_cache_key(const RadialPotential& pot, int n, double R, int angular_n);

/// Best-effort binary cache used when AssemblyOptions::cache_dir is set.
bool load_kernels_cache(const std::string& dir, const std::string& key, ShellKernels& out);
void save_kernels_cache(const std::string& dir, const std::string& key, const ShellKernels& ker);

} // namespace aggstat

#endif

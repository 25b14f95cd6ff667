#ifndef AGGSTAT_ORACLE_HPP
#define AGGSTAT_ORACLE_HPP

#include "aggstat/potential.hpp"
#include "aggstat/radial_grid.hpp"

#include <Eigen/Core>
#include <vector>

namespace aggstat {

/*
 * Brute-force Cartesian implementations used exclusively to validate the
 * radial fast path: direct double-sum convolution and energy on tensor
 * grids (N <= 2), and a dense eigendecomposition of the 1-D collocation
 * matrix. Deliberately slow and simple.
 */

/// Values on a cell-centered tensor grid over [-extent, extent]^N,
/// row-major for N = 2 (index i * cells + j <-> (x_i, y_j)).
struct CartesianField {
    int dim = 0;
    double extent = 0.0;
    int cells = 0; // per axis; hard cap 256
    Eigen::VectorXd values;

    double cell_width() const { return 2.0 * extent / cells; }
    double coord(int i) const { return -extent + (i + 0.5) * cell_width(); }
};

CartesianField make_field(int dim, double extent, int cells);

/// Sample a radial profile onto a Cartesian grid (monotone interpolation of
/// the radial values; a 1e-3-class error source at oracle resolutions).
CartesianField radialize(const RadialProfile& p, double extent, int cells);

/// Direct O(cells^{2N}) quadrature of (G*f)(x) at every cell center.
CartesianField full_convolution(const RadialPotential& pot, const CartesianField& f);

/// Direct Cartesian evaluation of (eps/m) int f^m - (1/2) int (G*f) f.
double full_energy(const RadialPotential& pot, const CartesianField& f, double m, double epsilon);

struct DenseEigResult {
    std::vector<double> eigenvalue_magnitudes; // sorted descending
    Eigen::VectorXd principal_u;               // sup-normalized, nonnegative
    Eigen::MatrixXd matrix;                    // the collocation matrix itself
    double spectral_gap = 0.0;                 // |lambda_1| - |lambda_2|
};

/// Assemble the same N = 1 collocation matrix the power iteration uses
/// (kernel g(|x-y|) - g(x+y) with the grid quadrature weights) and run a
/// full dense eigendecomposition.
DenseEigResult dense_eig_1d(const RadialPotential& pot, double L, int n);

} // namespace aggstat

#endif

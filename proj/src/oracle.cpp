#include "aggstat/oracle.hpp"

#include "aggstat/errors.hpp"
#include "aggstat/parallel.hpp"
#include "aggstat/quadrature.hpp"
#include "aggstat/shell_kernel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace aggstat {

namespace {

constexpr int kCellCap = 256;

void check_field(const CartesianField& f)
{
    if (f.dim < 1 || f.dim > 2)
        throw std::invalid_argument("oracle fields support N in {1,2}");
    if (f.cells > kCellCap)
        throw ResolutionTooLarge("oracle field above the 256 cells-per-axis cap");
}

} // namespace

CartesianField make_field(int dim, double extent, int cells)
{
    CartesianField f;
    f.dim = dim;
    f.extent = extent;
    f.cells = cells;
    check_field(f);
    f.values = Eigen::VectorXd::Zero(dim == 1 ? cells : cells * cells);
    return f;
}

CartesianField radialize(const RadialProfile& p, double extent, int cells)
{
    CartesianField f = make_field(p.grid.dim, extent, cells);
    PchipInterpolant interp(p.grid.nodes, p.values);
    const double R = p.grid.radius;
    auto sample = [&](double r) { return r > R ? 0.0 : std::max(interp(r), 0.0); };
    if (f.dim == 1) {
        for (int i = 0; i < cells; ++i)
            f.values[i] = sample(std::abs(f.coord(i)));
    } else {
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j)
                f.values[i * cells + j] = sample(std::hypot(f.coord(i), f.coord(j)));
    }
    return f;
}

CartesianField full_convolution(const RadialPotential& pot, const CartesianField& f)
{
    check_field(f);
    if (pot.dimension() != f.dim)
        throw DimensionMismatch("full_convolution: potential/field dimension mismatch");
    CartesianField out = make_field(f.dim, f.extent, f.cells);
    const int nc = f.cells;
    const double cell_measure = std::pow(f.cell_width(), double(f.dim));
    if (f.dim == 1) {
        parallel_for(0, nc, [&](int i) {
            double sum = 0.0;
            for (int j = 0; j < nc; ++j)
                sum += pot.g(std::abs(f.coord(i) - f.coord(j))) * f.values[j];
            out.values[i] = sum * cell_measure;
        });
    } else {
        parallel_for(0, nc, [&](int ix) {
            for (int iy = 0; iy < nc; ++iy) {
                double sum = 0.0;
                for (int jx = 0; jx < nc; ++jx) {
                    const double dx = f.coord(ix) - f.coord(jx);
                    for (int jy = 0; jy < nc; ++jy) {
                        const double v = f.values[jx * nc + jy];
                        if (v != 0.0)
                            sum += pot.g(std::hypot(dx, f.coord(iy) - f.coord(jy))) * v;
                    }
                }
                out.values[ix * nc + iy] = sum * cell_measure;
            }
        });
    }
    return out;
}

double full_energy(const RadialPotential& pot, const CartesianField& f, double m, double epsilon)
{
    const CartesianField conv = full_convolution(pot, f);
    const double cell_measure = std::pow(f.cell_width(), double(f.dim));
    double lm = 0.0, interaction = 0.0;
    for (int i = 0; i < f.values.size(); ++i) {
        lm += std::pow(f.values[i], m);
        interaction += f.values[i] * conv.values[i];
    }
    return (epsilon / m) * lm * cell_measure - 0.5 * interaction * cell_measure;
}

DenseEigResult dense_eig_1d(const RadialPotential& pot, double L, int n)
{
    if (pot.dimension() != 1)
        throw DimensionMismatch("dense_eig_1d: one-dimensional potentials only");
    const RadialGrid grid = make_grid(1, L, n);
    const ShellKernels ker = assemble_kernels(pot, grid, 16);
    DenseEigResult out;
    out.matrix = h_collocation_matrix(ker);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(out.matrix);
    const auto& vals = solver.eigenvalues();
    out.eigenvalue_magnitudes.resize(vals.size());
    int top = 0;
    for (int i = 0; i < vals.size(); ++i) {
        out.eigenvalue_magnitudes[i] = std::abs(vals[i]);
        if (out.eigenvalue_magnitudes[i] > out.eigenvalue_magnitudes[top])
            top = i;
    }
    Eigen::VectorXd u = solver.eigenvectors().col(top).real();
    if (u.sum() < 0.0)
        u = -u;
    out.principal_u = u / u.cwiseAbs().maxCoeff();
    std::sort(out.eigenvalue_magnitudes.begin(), out.eigenvalue_magnitudes.end(),
              std::greater<double>());
    out.spectral_gap = out.eigenvalue_magnitudes[0] - out.eigenvalue_magnitudes[1];
    return out;
}

} // namespace aggstat

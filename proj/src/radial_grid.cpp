#include "aggstat/radial_grid.hpp"

#include "aggstat/errors.hpp"
#include "aggstat/potential.hpp"
#include "aggstat/quadrature.hpp"

#include <cmath>

namespace aggstat {

bool RadialGrid::same_as(const RadialGrid& other) const
{
    return dim == other.dim && radius == other.radius && nodes.size() == other.nodes.size();
}

RadialGrid make_grid(int dim, double radius, int n)
{
    if (n < 8)
        throw BadResolution("make_grid: need at least 8 nodes");
    if (dim < 1 || !(radius > 0.0))
        throw std::invalid_argument("make_grid: dim >= 1 and radius > 0 required");
    RadialGrid grid;
    grid.dim = dim;
    grid.radius = radius;
    QuadratureRule rule = clenshaw_curtis(n, 0.0, radius);
    grid.nodes = std::move(rule.nodes);
    grid.quad_weights = std::move(rule.weights);
    const double omega = unit_sphere_area(dim);
    grid.volume_weights.resize(n);
    for (int i = 0; i < n; ++i)
        grid.volume_weights[i] =
            grid.quad_weights[i] * omega * std::pow(grid.nodes[i], dim - 1.0);
    return grid;
}

RadialProfile zero_profile(const RadialGrid& grid)
{
    return {grid, Eigen::VectorXd::Zero(grid.size())};
}

double mass(const RadialProfile& p)
{
    return p.grid.volume_weights.dot(p.values);
}

double lm_norm_m(const RadialProfile& p, double m)
{
    if (!(m > 1.0))
        throw std::invalid_argument("lm_norm_m: m must be > 1");
    double sum = 0.0;
    for (int i = 0; i < p.grid.size(); ++i)
        sum += p.grid.volume_weights[i] * std::pow(p.values[i], m);
    return sum;
}

double weighted_integral(const RadialProfile& p, const Eigen::VectorXd& f)
{
    return (p.grid.volume_weights.array() * p.values.array() * f.array()).sum();
}

RadialProfile normalize_mass(const RadialProfile& p)
{
    const double total = mass(p);
    if (!(total > 0.0))
        throw ZeroMass("normalize_mass: profile has zero mass");
    return {p.grid, p.values / total};
}

RadialProfile resample(const RadialProfile& p, const RadialGrid& target)
{
    if (p.grid.dim != target.dim)
        throw DimensionMismatch("resample: grids have different dimension");
    if (target.same_as(p.grid) && target.nodes == p.grid.nodes)
        return {target, p.values};
    PchipInterpolant interp(p.grid.nodes, p.values);
    RadialProfile out{target, Eigen::VectorXd(target.size())};
    for (int i = 0; i < target.size(); ++i) {
        const double r = target.nodes[i];
        out.values[i] = r > p.grid.radius ? 0.0 : std::max(interp(r), 0.0);
    }
    return out;
}

double support_radius(const RadialProfile& p, double threshold)
{
    const double peak = p.values.maxCoeff();
    if (!(peak > 0.0))
        return 0.0;
    for (int i = p.grid.size() - 1; i >= 0; --i)
        if (p.values[i] > threshold * peak)
            return p.grid.nodes[i];
    return 0.0;
}

bool is_non_increasing(const RadialProfile& p, double slack)
{
    const double tol = slack * std::max(p.values.maxCoeff(), 0.0);
    for (int i = 1; i < p.grid.size(); ++i)
        if (p.values[i] > p.values[i - 1] + tol)
            return false;
    return true;
}

} // namespace aggstat

#ifndef AGGSTAT_RADIAL_GRID_HPP
#define AGGSTAT_RADIAL_GRID_HPP

#include <Eigen/Core>

namespace aggstat {

/// Radial discretization of the ball B_R(0) in R^N: a Clenshaw-Curtis grid on
/// [0,R] with both endpoints included. quad_weights are the plain 1-D weights
/// on [0,R]; volume_weights fold in the spherical factor omega_N r^{N-1}, so
/// sum_i volume_weights[i] f(r_i) approximates the volume integral of a
/// radial function f over B_R(0).
///
/// Grids are immutable values; safe to share across threads.
struct RadialGrid {
    int dim = 0;
    double radius = 0.0;
    Eigen::VectorXd nodes;          // ascending, nodes[0] = 0, nodes[n-1] = R
    Eigen::VectorXd quad_weights;   // positive
    Eigen::VectorXd volume_weights; // quad_weights * omega_N * nodes^{N-1}

    int size() const { return int(nodes.size()); }
    bool same_as(const RadialGrid& other) const;
};

/// Throws BadResolution if n < 8.
RadialGrid make_grid(int dim, double radius, int n);

/// A nonnegative radial density sampled on a grid: rho(x) = values(|x|).
struct RadialProfile {
    RadialGrid grid;
    Eigen::VectorXd values;
};

RadialProfile zero_profile(const RadialGrid& grid);

/// int_{B_R} rho = omega_N sum w_i r_i^{N-1} values_i.
double mass(const RadialProfile& p);

/// omega_N sum w_i r_i^{N-1} values_i^m  (the L^m norm to the m-th power).
double lm_norm_m(const RadialProfile& p, double m);

/// Volume-weighted integral of an arbitrary nodal function against rho,
/// int rho f = sum_i volume_weights_i values_i f_i.
double weighted_integral(const RadialProfile& p, const Eigen::VectorXd& f);

/// Rescale to unit mass; throws ZeroMass when mass(p) vanishes.
RadialProfile normalize_mass(const RadialProfile& p);

/// Monotone cubic re-interpolation onto another grid of the same dimension.
/// Values beyond the source radius are zero; output clamped at 0.
RadialProfile resample(const RadialProfile& p, const RadialGrid& target);

/// Largest node radius with values > threshold * max(values); 0 if empty.
double support_radius(const RadialProfile& p, double threshold = 1e-10);

/// True if values are non-increasing up to slack * max(values).
bool is_non_increasing(const RadialProfile& p, double slack = 1e-10);

} // namespace aggstat

#endif

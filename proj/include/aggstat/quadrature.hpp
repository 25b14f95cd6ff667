#ifndef AGGSTAT_QUADRATURE_HPP
#define AGGSTAT_QUADRATURE_HPP

#include <Eigen/Core>
#include <functional>

namespace aggstat {

/// A 1-D quadrature rule: nodes and positive weights on some interval.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Legendre rule with n nodes on [-1,1], nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Clenshaw-Curtis rule with n >= 2 points on [a,b]; includes both endpoints,
/// nodes ascending, all weights positive. Exact for polynomials of degree n-1
/// and spectrally accurate for analytic integrands.
QuadratureRule clenshaw_curtis(int n, double a, double b);

/// Adaptive Gauss-Legendre integration of f on [a,b] by interval bisection.
/// Stops when the local 15- vs 31-node difference is below
/// rel_tol * |whole| + abs_tol on every subinterval.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-300,
                          int max_depth = 48);

/// Chebyshev interpolation coefficients d_m (f ~ sum d_m T_m) from samples on
/// the Chebyshev-Lobatto points x_k = cos(pi k / K), k = 0..K, in that order.
Eigen::VectorXd chebyshev_coefficients(const Eigen::VectorXd& values_at_lobatto);

/// Given samples f_k of a function on the ascending Clenshaw-Curtis grid
/// r_k = R (1 - cos(pi k/K))/2 on [0,R], returns F_k = integral of f from r_k
/// to R, computed by integrating the Chebyshev interpolant exactly.
Eigen::VectorXd integrate_to_right_endpoint(const Eigen::VectorXd& values, double R);

/// Monotone (Fritsch-Carlson) piecewise-cubic Hermite interpolant.
/// Does not overshoot: output stays within the local data range, so
/// nonnegative data yields a nonnegative interpolant.
class PchipInterpolant {
public:
    PchipInterpolant(Eigen::VectorXd x, Eigen::VectorXd y);
    /// Evaluate at t; constant extrapolation outside [x_front, x_back].
    double operator()(double t) const;

private:
    Eigen::VectorXd x_, y_, slope_;
};

} // namespace aggstat

#endif

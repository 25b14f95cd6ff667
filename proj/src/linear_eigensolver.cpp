#include "aggstat/linear_eigensolver.hpp"

#include "aggstat/energy_minimizer.hpp"
#include "aggstat/errors.hpp"
#include "aggstat/parallel.hpp"
#include "aggstat/quadrature.hpp"

#include <cmath>

namespace aggstat {

PowerIterationResult power_iteration(const Eigen::MatrixXd& A, const PowerIterationOptions& opts)
{
    const int n = int(A.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd y = A * x;
    double lambda_prev = 0.0;
    for (int k = 1; k <= opts.max_iter; ++k) {
        const double lambda = x.dot(y) / x.dot(x);
        const double residual = (y - lambda * x).cwiseAbs().maxCoeff() / x.cwiseAbs().maxCoeff();
        if (k > 1 && residual <= opts.residual_tol
            && std::abs(lambda - lambda_prev) <= opts.rq_tol * std::max(1.0, std::abs(lambda)))
            return {lambda, x / x.cwiseAbs().maxCoeff(), k, residual};
        lambda_prev = lambda;
        const double ynorm = y.cwiseAbs().maxCoeff();
        if (!(ynorm > 0.0))
            throw NoConvergence("power_iteration: iterate vanished", k);
        x = y / ynorm;
        y = A * x;
    }
    throw NoConvergence("power_iteration: no convergence within max_iter", opts.max_iter);
}

std::pair<double, RadialProfile> principal_eigenpair(const ShellKernels& ker,
                                                     const PowerIterationOptions& opts)
{
    PowerIterationResult res = power_iteration(h_collocation_matrix(ker), opts);
    // Positive operator: orient the eigenvector to the nonnegative cone.
    if (res.vector.sum() < 0.0)
        res.vector = -res.vector;
    return {res.eigenvalue, RadialProfile{ker.grid, std::move(res.vector)}};
}

RadialProfile integrate_tail(const RadialProfile& u)
{
    return {u.grid, integrate_to_right_endpoint(u.values, u.grid.radius)};
}

RadialProfile reconstruct_density(const RadialProfile& u)
{
    return normalize_mass(integrate_tail(u));
}

EigenResult solve_eigen(const RadialPotential& pot, double R, const EigenSolveOptions& opts)
{
    const RadialGrid grid = make_grid(pot.dimension(), R, opts.n);
    const ShellKernels ker = assemble_kernels(pot, grid, opts.angular_n, opts.assembly);
    PowerIterationResult pw = power_iteration(h_collocation_matrix(ker), opts.power);
    if (pw.vector.sum() < 0.0)
        pw.vector = -pw.vector;
    EigenResult out;
    out.R = R;
    out.epsilon = pw.eigenvalue;
    out.u = RadialProfile{grid, std::move(pw.vector)};
    out.rho = reconstruct_density(out.u);
    out.iterations = pw.iterations;
    out.residual = pw.residual;
    return out;
}

std::vector<CurvePoint> epsilon_of_R_curve(const RadialPotential& pot,
                                           const std::vector<double>& R_list,
                                           const EigenSolveOptions& opts, int jobs)
{
    std::vector<CurvePoint> points(R_list.size());
    parallel_for(0, int(R_list.size()), [&](int i) {
        CurvePoint& pt = points[i];
        pt.R = R_list[i];
        try {
            const RadialGrid grid = make_grid(pot.dimension(), R_list[i], opts.n);
            const ShellKernels ker = assemble_kernels(pot, grid, opts.angular_n, opts.assembly);
            PowerIterationResult pw = power_iteration(h_collocation_matrix(ker), opts.power);
            if (pw.vector.sum() < 0.0)
                pw.vector = -pw.vector;
            RadialProfile u{grid, std::move(pw.vector)};
            RadialProfile rho = reconstruct_density(u);
            pt.epsilon = pw.eigenvalue;
            pt.energy = energy(rho, 2.0, pw.eigenvalue, ker);
            pt.residual = pw.residual;
            pt.iterations = pw.iterations;
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.message = e.what();
        }
    }, jobs);
    return points;
}

bool epsilons_strictly_increasing(const std::vector<CurvePoint>& points)
{
    for (size_t i = 1; i < points.size(); ++i) {
        if (!points[i].ok || !points[i - 1].ok)
            return false;
        if (!(points[i].epsilon > points[i - 1].epsilon))
            return false;
    }
    return !points.empty();
}

EigenResult solve_R_for_epsilon(const RadialPotential& pot, double eps_target, double tol,
                                const RadiusSearchOptions& opts)
{
    if (!(eps_target > 0.0) || !(eps_target < 1.0))
        throw std::invalid_argument("solve_R_for_epsilon: target must lie in (0,1)");
    auto eps_at = [&](double R) { return solve_eigen(pot, R, opts.solve); };

    // Bracket using strict monotonicity of eps(R).
    double lo = opts.R_init, hi = opts.R_init;
    EigenResult at = eps_at(opts.R_init);
    if (at.epsilon < eps_target) {
        while (at.epsilon < eps_target) {
            lo = hi;
            hi *= 2.0;
            if (hi > opts.R_max)
                throw BracketFailure("solve_R_for_epsilon: eps(R) below target up to R_max");
            at = eps_at(hi);
        }
    } else {
        while (at.epsilon > eps_target) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-8)
                break; // eps(R) -> 0 as R -> 0; lo is now a valid lower end
            at = eps_at(lo);
        }
    }
    for (int it = 0; it < opts.max_bisections; ++it) {
        if (std::abs(at.epsilon - eps_target) <= tol)
            return at;
        const double mid = 0.5 * (lo + hi);
        at = eps_at(mid);
        (at.epsilon < eps_target ? lo : hi) = mid;
    }
    if (std::abs(at.epsilon - eps_target) <= tol)
        return at;
    throw NoConvergence("solve_R_for_epsilon: bisection stalled", opts.max_bisections);
}

} // namespace aggstat

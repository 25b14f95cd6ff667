#include "aggstat/nonlinear_stationary.hpp"

#include "aggstat/energy_minimizer.hpp"
#include "aggstat/errors.hpp"
#include "aggstat/parallel.hpp"

#include <cmath>
#include <numbers>

namespace aggstat {

namespace {

RadialProfile cosine_bump(const RadialGrid& grid)
{
    RadialProfile p{grid, Eigen::VectorXd(grid.size())};
    for (int i = 0; i < grid.size(); ++i)
        p.values[i] = 1.0 + std::cos(std::numbers::pi * grid.nodes[i] / grid.radius);
    return normalize_mass(p);
}

} // namespace

StationaryResult solve_stationary(const RadialPotential& pot, double m, double R,
                                  const StationaryOptions& opts)
{
    if (!(m > 1.0))
        throw std::invalid_argument("solve_stationary: m must be > 1");
    const RadialGrid grid = make_grid(pot.dimension(), R, opts.n);
    const ShellKernels ker = assemble_kernels(pot, grid, opts.angular_n, opts.assembly);
    const double lam = opts.damping > 0.0 ? opts.damping : (m < 2.0 ? 0.5 : 1.0);
    const double inv_exp = 1.0 / (m - 1.0);
    const int last = grid.size() - 1;

    if (opts.init && !opts.init->grid.same_as(grid))
        throw GridMismatch("solve_stationary: init profile grid does not match solve grid");
    RadialProfile rho = opts.init ? normalize_mass(*opts.init) : cosine_bump(grid);

    int iterations = 0;
    bool converged = false;
    Eigen::VectorXd rho_hat(grid.size());
    for (int k = 1; k <= opts.max_iter; ++k) {
        const Eigen::VectorXd conv = convolve(ker, rho).values;
        const double boundary = conv[last];
        for (int i = 0; i < grid.size(); ++i) {
            const double w = conv[i] - boundary;
            rho_hat[i] = w > 0.0 ? std::pow(w, inv_exp) : 0.0;
        }
        const double mu = grid.volume_weights.dot(rho_hat);
        if (!(mu > 1e-300))
            throw DegenerateProfile("solve_stationary: iterate lost all mass");
        Eigen::VectorXd next = (1.0 - lam) * rho.values + (lam / mu) * rho_hat;
        const double diff = grid.volume_weights.dot((next - rho.values).cwiseAbs());
        rho.values.swap(next);
        iterations = k;
        if (diff <= opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("solve_stationary: fixed point not reached", iterations);

    StationaryResult out;
    out.m = m;
    out.R = R;
    out.rho = normalize_mass(rho);
    // Re-read eps from the final profile so (eps, rho) are mutually consistent.
    {
        const Eigen::VectorXd conv = convolve(ker, out.rho).values;
        const double boundary = conv[last];
        for (int i = 0; i < grid.size(); ++i) {
            const double w = conv[i] - boundary;
            rho_hat[i] = w > 0.0 ? std::pow(w, inv_exp) : 0.0;
        }
        const double mu = grid.volume_weights.dot(rho_hat);
        out.epsilon = std::pow(mu, m - 1.0);
    }
    out.iterations = iterations;
    out.residual = residual_el(out, ker);
    if (out.residual > opts.residual_tol)
        throw NoConvergence("solve_stationary: residual above acceptance tolerance", iterations);
    out.energy = energy(out.rho, m, out.epsilon, ker);
    out.compactness_margin = 2.0 * out.energy
        - out.epsilon * (2.0 / m - 1.0) * lm_norm_m(out.rho, m);
    return out;
}

double residual_el(const StationaryResult& res, const ShellKernels& ker)
{
    if (!res.rho.grid.same_as(ker.grid))
        throw GridMismatch("residual_el: result and kernels on different grids");
    const Eigen::VectorXd conv = convolve(ker, res.rho).values;
    const double boundary = conv[ker.grid.size() - 1];
    double sup = 0.0;
    for (int i = 0; i < ker.grid.size(); ++i) {
        if (res.rho.values[i] <= 1e-12)
            continue;
        const double lhs = res.epsilon * std::pow(res.rho.values[i], res.m - 1.0);
        sup = std::max(sup, std::abs(lhs - conv[i] + boundary));
    }
    return sup / ker.g_at_origin;
}

IdentityReport energy_identities_check(const StationaryResult& res, const ShellKernels& ker)
{
    if (!res.rho.grid.same_as(ker.grid))
        throw GridMismatch("energy_identities_check: grids differ");
    IdentityReport rep;
    const Eigen::VectorXd conv = convolve(ker, res.rho).values;
    const double boundary = conv[ker.grid.size() - 1];
    const double interaction = weighted_integral(res.rho, conv);
    const double lm = lm_norm_m(res.rho, res.m);
    const double e_direct = (res.epsilon / res.m) * lm - 0.5 * interaction;

    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    rep.lm_identity_error = rel(res.epsilon * lm, interaction - boundary);
    rep.energy_identity_error_a =
        rel(e_direct, res.epsilon * (1.0 / res.m - 0.5) * lm - 0.5 * boundary);
    rep.energy_identity_error_b =
        rel(e_direct, (1.0 / res.m - 0.5) * interaction - boundary / res.m);
    rep.energy = e_direct;
    rep.negative_energy_required = res.m >= 2.0;
    rep.energy_negative = e_direct < 0.0;
    rep.identities_ok = rep.lm_identity_error <= rep.tol
        && rep.energy_identity_error_a <= rep.tol && rep.energy_identity_error_b <= rep.tol;
    return rep;
}

SupportBound support_bound_check(const StationaryResult& res)
{
    if (!(res.m > 2.0))
        throw NotApplicable("support_bound_check: defined only for m > 2");
    SupportBound out;
    out.bound = std::pow(res.epsilon, 1.0 / (res.m - 2.0));
    out.satisfied = ball_volume(res.rho.grid.dim, res.R) > out.bound;
    return out;
}

std::vector<CurvePoint> epsilon_of_R_curve_nonlinear(const RadialPotential& pot, double m,
                                                     const std::vector<double>& R_list,
                                                     const StationaryOptions& opts, int jobs)
{
    std::vector<CurvePoint> points(R_list.size());
    parallel_for(0, int(R_list.size()), [&](int i) {
        CurvePoint& pt = points[i];
        pt.R = R_list[i];
        try {
            const StationaryResult res = solve_stationary(pot, m, R_list[i], opts);
            pt.epsilon = res.epsilon;
            pt.energy = res.energy;
            pt.residual = res.residual;
            pt.iterations = res.iterations;
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.message = e.what();
        }
    }, jobs);
    return points;
}

} // namespace aggstat

#include "aggstat/energy_minimizer.hpp"

#include "aggstat/errors.hpp"
#include "aggstat/nonlinear_stationary.hpp"

#include <cmath>
#include <numbers>

namespace aggstat {

namespace {

RadialProfile bump_profile(const RadialGrid& grid, double width_fraction)
{
    RadialProfile p{grid, Eigen::VectorXd::Zero(grid.size())};
    const double w = width_fraction * grid.radius;
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        if (r < w)
            p.values[i] = 1.0 + std::cos(std::numbers::pi * r / w);
    }
    // Strictly positive floor: multiplicative steps can then move the free
    // boundary outward as well as inward.
    p.values.array() += 1e-10;
    return normalize_mass(p);
}

RadialProfile uniform_profile(const RadialGrid& grid)
{
    RadialProfile p{grid, Eigen::VectorXd::Ones(grid.size())};
    return normalize_mass(p);
}

// Per-step cap on the multiplicative factor |tau (v - vbar)|: no node is
// annihilated in one step, so the support edge can recover.
constexpr double kFactorCap = 0.25;

RadialProfile two_scale_bump(const RadialGrid& grid)
{
    RadialProfile broad = bump_profile(grid, 1.0);
    RadialProfile narrow = bump_profile(grid, 0.25);
    RadialProfile p{grid, 0.7 * broad.values + 0.3 * narrow.values};
    return normalize_mass(p);
}

double kkt_residual_of(const RadialProfile& rho, const Eigen::VectorXd& v, double g0)
{
    const double peak = rho.values.maxCoeff();
    const double support_cut = 1e-10 * peak;
    double vbar = weighted_integral(rho, v) / mass(rho);
    double worst = 0.0;
    for (int i = 0; i < rho.grid.size(); ++i) {
        if (rho.values[i] > support_cut)
            worst = std::max(worst, std::abs(v[i] - vbar));
        else
            worst = std::max(worst, std::max(0.0, vbar - v[i]));
    }
    return worst / g0;
}

struct DescentOutcome {
    RadialProfile rho;
    double energy = 0.0;
    double kkt = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Armijo-backtracked multiplicative descent at fixed box and kernels.
DescentOutcome descend(const ShellKernels& ker, double m, double epsilon, RadialProfile rho,
                       double kkt_tol, int max_iter)
{
    const RadialGrid& grid = ker.grid;
    const double g0 = ker.g_at_origin;
    double e_cur = energy(rho, m, epsilon, ker);
    double tau = 0.0;
    DescentOutcome out;
    int k = 0;
    for (; k < max_iter; ++k) {
        const Eigen::VectorXd conv = convolve(ker, rho).values;
        Eigen::VectorXd v(grid.size());
        for (int i = 0; i < grid.size(); ++i)
            v[i] = epsilon * std::pow(rho.values[i], m - 1.0) - conv[i];
        const double vbar = weighted_integral(rho, v);
        Eigen::VectorXd dir = -(rho.values.array() * (v.array() - vbar)).matrix();
        const double decrease = (grid.volume_weights.array() * rho.values.array()
                                 * (v.array() - vbar).square())
                                    .sum();
        out.kkt = kkt_residual_of(rho, v, g0);
        if (out.kkt <= kkt_tol) {
            out.converged = true;
            break;
        }
        const double vspread = (v.array() - vbar).abs().maxCoeff();
        if (!(vspread > 0.0) || !(decrease > 0.0))
            break; // flat variation; nothing to descend along
        if (tau <= 0.0)
            tau = kFactorCap / vspread;
        bool accepted = false;
        double tau_try = std::min(tau, kFactorCap / vspread);
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd cand = (rho.values + tau_try * dir).cwiseMax(0.0);
            RadialProfile cand_p{grid, std::move(cand)};
            const double cand_mass = mass(cand_p);
            if (cand_mass > 0.0) {
                cand_p.values /= cand_mass;
                const double e_new = energy(cand_p, m, epsilon, ker);
                if (e_new <= e_cur - 1e-4 * tau_try * decrease) {
                    rho = std::move(cand_p);
                    e_cur = e_new;
                    tau = tau_try * 1.3;
                    accepted = true;
                    break;
                }
            }
            tau_try *= 0.5;
        }
        if (!accepted)
            break; // line search exhausted at this resolution
    }
    out.rho = std::move(rho);
    out.energy = e_cur;
    out.iterations = k;
    return out;
}

// Boundary polish at fixed eps: resolve the multiplier exactly each sweep.
// With phi = G*rho, the constrained optimality system is
//   eps rho^{m-1} = (phi - c)_+  on the support,  mass(rho) = 1,
// and c -> mass(((phi - c)_+/eps)^{1/(m-1)}) is strictly decreasing, so c
// comes from bisection; the damped substitution then contracts like the
// stationary fixed point and moves the free boundary in both directions,
// which the multiplicative descent cannot do once nodes sit at zero.
DescentOutcome polish_kkt(const ShellKernels& ker, double m, double epsilon, RadialProfile rho,
                          int max_iter)
{
    const RadialGrid& grid = ker.grid;
    const double lam = m < 2.0 ? 0.5 : 1.0;
    const double inv_exp = 1.0 / (m - 1.0);
    Eigen::VectorXd cand(grid.size());
    auto mass_at = [&](const Eigen::VectorXd& phi, double c) {
        double total = 0.0;
        for (int i = 0; i < grid.size(); ++i) {
            const double w = phi[i] - c;
            if (w > 0.0)
                total += grid.volume_weights[i] * std::pow(w / epsilon, inv_exp);
        }
        return total;
    };
    DescentOutcome out;
    int k = 0;
    for (; k < max_iter; ++k) {
        const Eigen::VectorXd phi = convolve(ker, rho).values;
        double hi = phi.maxCoeff();
        double lo = hi - epsilon * std::pow(2.0 * rho.values.maxCoeff() + 1.0, m - 1.0) - 1.0;
        while (mass_at(phi, lo) < 1.0)
            lo -= std::max(1.0, hi - lo);
        for (int bt = 0; bt < 200; ++bt) {
            const double mid = 0.5 * (lo + hi);
            (mass_at(phi, mid) >= 1.0 ? lo : hi) = mid;
            if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi)))
                break;
        }
        const double c = 0.5 * (lo + hi);
        for (int i = 0; i < grid.size(); ++i) {
            const double w = phi[i] - c;
            cand[i] = w > 0.0 ? std::pow(w / epsilon, inv_exp) : 0.0;
        }
        RadialProfile next{grid, (1.0 - lam) * rho.values + lam * cand};
        next = normalize_mass(next);
        const double diff = grid.volume_weights.dot((next.values - rho.values).cwiseAbs());
        rho = std::move(next);
        if (diff <= 1e-14)
            break;
    }
    const Eigen::VectorXd conv = convolve(ker, rho).values;
    Eigen::VectorXd v(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        v[i] = epsilon * std::pow(rho.values[i], m - 1.0) - conv[i];
    out.kkt = kkt_residual_of(rho, v, ker.g_at_origin);
    out.energy = energy(rho, m, epsilon, ker);
    out.rho = std::move(rho);
    out.iterations = k;
    return out;
}

} // namespace

double energy(const RadialProfile& p, double m, double epsilon, const ShellKernels& ker)
{
    if (!p.grid.same_as(ker.grid))
        throw GridMismatch("energy: profile and kernels on different grids");
    const Eigen::VectorXd conv = convolve(ker, p).values;
    return (epsilon / m) * lm_norm_m(p, m) - 0.5 * weighted_integral(p, conv);
}

RadialProfile first_variation(const RadialProfile& p, double m, double epsilon,
                              const ShellKernels& ker)
{
    if (!p.grid.same_as(ker.grid))
        throw GridMismatch("first_variation: profile and kernels on different grids");
    const Eigen::VectorXd conv = convolve(ker, p).values;
    RadialProfile v{p.grid, Eigen::VectorXd(p.grid.size())};
    for (int i = 0; i < p.grid.size(); ++i)
        v.values[i] = epsilon * std::pow(p.values[i], m - 1.0) - conv[i];
    return v;
}

std::string to_string(MinimizeStatus status)
{
    switch (status) {
    case MinimizeStatus::Converged:
        return "converged";
    case MinimizeStatus::NoConvergence:
        return "no_convergence";
    case MinimizeStatus::NoMinimizer:
        return "no_minimizer";
    case MinimizeStatus::UnboundedSupport:
        return "unbounded_support";
    }
    return "unknown";
}

MinimizeResult minimize_in_ball(const RadialPotential& pot, double m, double epsilon,
                                double R_box, const MinimizeOptions& opts)
{
    if (!(m > 1.0) || !(epsilon > 0.0))
        throw std::invalid_argument("minimize_in_ball: need m > 1 and epsilon > 0");
    const RadialGrid grid = make_grid(pot.dimension(), R_box, opts.n);
    const ShellKernels ker = assemble_kernels(pot, grid, opts.angular_n, opts.assembly);
    RadialProfile start = opts.init && opts.init->grid.same_as(grid) ? normalize_mass(*opts.init)
                                                                     : bump_profile(grid, 1.0);
    // The descent finds the basin and keeps the energy monotone; the bulk of
    // the boundary refinement is cheaper in the polish phase.
    DescentOutcome run = descend(ker, m, epsilon, std::move(start), opts.kkt_tol,
                                 std::min(opts.max_iter, 1500));
    if (run.kkt > opts.kkt_tol) {
        DescentOutcome polished = polish_kkt(ker, m, epsilon, run.rho, opts.max_iter);
        if (polished.energy <= run.energy + 1e-13 * std::abs(run.energy)
            && polished.kkt < run.kkt) {
            polished.iterations += run.iterations;
            polished.converged = polished.kkt <= opts.kkt_tol;
            run = std::move(polished);
        }
    }
    MinimizeResult out;
    out.epsilon = epsilon;
    out.m = m;
    out.R_box = R_box;
    out.rho = std::move(run.rho);
    out.energy = run.energy;
    out.support_radius = support_radius(out.rho);
    out.kkt_residual = run.kkt;
    out.iterations = run.iterations;
    const bool at_box = out.support_radius > 0.999 * R_box;
    if (m <= 2.0 && out.energy >= -1e-12 * ker.g_at_origin && at_box) {
        // Spread against the box at nonnegative energy is the
        // no-global-minimizer signature for 1 < m <= 2.
        out.status = MinimizeStatus::NoMinimizer;
        out.detail = "energy stalled at a nonnegative value with the profile spread "
                     "against the box";
    } else {
        out.status = run.converged ? MinimizeStatus::Converged : MinimizeStatus::NoConvergence;
    }
    return out;
}

MinimizeResult minimize_global(const RadialPotential& pot, double m, double epsilon,
                               const MinimizeOptions& opts)
{
    // Regimes where no global minimizer exists by theory: the sharp m = 2
    // threshold eps >= 1, and for 1 < m <= 2 the norm bound
    // eps > (m/2) ||G||_{1/(m-1)}. Only there may the box walk stop early.
    const bool certified_no_global = (m == 2.0 && epsilon >= 1.0)
        || (m <= 2.0 && epsilon > 0.5 * m * lp_norm_of_G(pot, 1.0 / (m - 1.0)));
    auto classify_escape = [&](MinimizeResult res, bool energy_went_negative) {
        if (m == 2.0 && epsilon >= 1.0) {
            res.status = MinimizeStatus::NoMinimizer;
            res.detail = "no global minimizer for m = 2 with eps >= 1 (sharp threshold); "
                         "support escaped with the box";
        } else {
            res.status = MinimizeStatus::UnboundedSupport;
            if (certified_no_global)
                res.detail = "support escaped with the box; eps exceeds the "
                             "(m/2)||G||_{1/(m-1)} non-existence bound";
            else if (m < 2.0 && !energy_went_negative)
                res.detail = "support escaped with the box at nonnegative energy "
                             "(above-threshold regime)";
            else
                res.detail = "support escaped to the box cap; raise R_cap";
        }
        return res;
    };

    MinimizeResult prev;
    bool have_prev = false;
    bool energy_went_negative = false;
    for (double R_box = opts.R0; R_box <= opts.R_cap; R_box *= 2.0) {
        MinimizeResult cur = minimize_in_ball(pot, m, epsilon, R_box, opts);
        energy_went_negative = energy_went_negative || cur.energy < -1e-12;
        const double grid_h = cur.rho.grid.radius / (cur.rho.grid.size() - 1);
        const bool interior = cur.support_radius < 0.99 * R_box;
        if (certified_no_global && have_prev && cur.status == MinimizeStatus::NoMinimizer
            && prev.status == MinimizeStatus::NoMinimizer)
            return classify_escape(std::move(cur), energy_went_negative);
        if (have_prev && interior
            && std::abs(cur.support_radius - prev.support_radius) <= grid_h) {
            // Saturated: re-solve once on a snug box so the free boundary
            // sits in the well-resolved part of the grid.
            MinimizeOptions refine = opts;
            const double R_snug = 1.3 * cur.support_radius;
            refine.init = resample(cur.rho, make_grid(pot.dimension(), R_snug, opts.n));
            MinimizeResult fin = minimize_in_ball(pot, m, epsilon, R_snug, refine);
            return fin.energy <= cur.energy + 1e-12 ? fin : cur;
        }
        prev = std::move(cur);
        have_prev = true;
    }
    if (prev.support_radius < 0.99 * prev.R_box)
        return prev; // interior but never saturated: keep the in-ball status
    return classify_escape(std::move(prev), energy_went_negative);
}

double rayleigh_quotient(const RadialProfile& p, double m, const ShellKernels& ker)
{
    const RadialProfile unit = normalize_mass(p);
    const Eigen::VectorXd conv = convolve(ker, unit).values;
    return 0.5 * m * weighted_integral(unit, conv) / lm_norm_m(unit, m);
}

namespace {

// Multiplicative ascent on the interaction quotient at fixed box.
struct AscentOutcome {
    RadialProfile rho;
    double quotient = 0.0;
    int iterations = 0;
};

AscentOutcome ascend_quotient(const ShellKernels& ker, double m, RadialProfile rho,
                              double rel_tol, int max_iter)
{
    const RadialGrid& grid = ker.grid;
    double q_cur = rayleigh_quotient(rho, m, ker);
    rho = normalize_mass(rho);
    double tau = 0.0;
    int k = 0;
    for (; k < max_iter; ++k) {
        const Eigen::VectorXd conv = convolve(ker, rho).values;
        const double interaction = weighted_integral(rho, conv);
        const double lm = lm_norm_m(rho, m);
        // d/drho of log Q = 2 (G*rho)/I - m rho^{m-1}/||rho||_m^m.
        Eigen::VectorXd phi(grid.size());
        for (int i = 0; i < grid.size(); ++i)
            phi[i] = 2.0 * conv[i] / interaction
                - m * std::pow(rho.values[i], m - 1.0) / lm;
        const double phibar = weighted_integral(rho, phi);
        const double spread = (phi.array() - phibar).abs().maxCoeff();
        if (!(spread > 0.0))
            break;
        if (tau <= 0.0)
            tau = kFactorCap / spread;
        double tau_try = std::min(tau, kFactorCap / spread);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd cand =
                (rho.values.array() * (1.0 + tau_try * (phi.array() - phibar))).cwiseMax(0.0);
            RadialProfile cand_p{grid, std::move(cand)};
            if (mass(cand_p) > 0.0) {
                cand_p = normalize_mass(cand_p);
                const double q_new = rayleigh_quotient(cand_p, m, ker);
                if (q_new > q_cur) {
                    const double gain = (q_new - q_cur) / q_cur;
                    rho = std::move(cand_p);
                    q_cur = q_new;
                    tau = tau_try * 1.3;
                    accepted = true;
                    if (gain < rel_tol)
                        k = max_iter; // converged; exit outer loop
                    break;
                }
            }
            tau_try *= 0.5;
        }
        if (!accepted)
            break;
    }
    return {std::move(rho), q_cur, k};
}

} // namespace

Epsilon0Result estimate_epsilon0(const RadialPotential& pot, double m,
                                 const ThresholdOptions& opts)
{
    if (!(m > 1.0) || !(m < 2.0))
        throw NotApplicable("estimate_epsilon0: defined for 1 < m < 2");
    Epsilon0Result best;
    best.upper_bound = 0.5 * m * lp_norm_of_G(pot, 1.0 / (m - 1.0));
    double prev_q = 0.0;
    for (double R_box = opts.R0; R_box <= opts.R_cap; R_box *= 2.0) {
        const RadialGrid grid = make_grid(pot.dimension(), R_box, opts.n);
        const ShellKernels ker = assemble_kernels(pot, grid, opts.angular_n, opts.assembly);
        AscentOutcome box_best;
        for (int init = 0; init < 3; ++init) {
            RadialProfile start = init == 0 ? bump_profile(grid, 1.0)
                : init == 1                 ? uniform_profile(grid)
                                            : two_scale_bump(grid);
            AscentOutcome run = ascend_quotient(ker, m, std::move(start), opts.ascent_tol,
                                                opts.max_iter);
            if (run.quotient > box_best.quotient)
                box_best = std::move(run);
        }
        const double grid_h = grid.radius / (grid.size() - 1);
        const double supp = support_radius(box_best.rho);
        const bool interior = supp < R_box - 4.0 * grid_h * std::numbers::pi;
        if (box_best.quotient > best.epsilon0) {
            best.epsilon0 = box_best.quotient;
            best.maximizer = std::move(box_best.rho);
            best.support_radius = supp;
        }
        if (prev_q > 0.0 && interior
            && std::abs(best.epsilon0 - prev_q) <= 1e-8 * std::max(1.0, prev_q))
            return best;
        prev_q = best.epsilon0;
    }
    // Saturation not reached before the cap; attainment theory says this is a
    // resolution failure rather than a genuine escape.
    throw QuadratureUnderResolved(
        "estimate_epsilon0: quotient maximizer did not saturate below the box cap");
}

Epsilon1Result estimate_epsilon1(const RadialPotential& pot, double m,
                                 const std::vector<double>& R_sweep, double epsilon0,
                                 const ThresholdOptions& opts)
{
    if (!(m > 1.0) || !(m < 2.0))
        throw NotApplicable("estimate_epsilon1: defined for 1 < m < 2");
    if (R_sweep.empty())
        throw std::invalid_argument("estimate_epsilon1: empty radius sweep");
    Epsilon1Result out;
    out.epsilon0 = epsilon0 > 0.0 ? epsilon0 : estimate_epsilon0(pot, m, opts).epsilon0;
    out.ceiling = (2.0 / m) * out.epsilon0;
    StationaryOptions sopts;
    sopts.n = opts.n;
    sopts.angular_n = opts.angular_n;
    sopts.assembly = opts.assembly;
    for (double R : R_sweep) {
        Epsilon1Point pt;
        pt.R = R;
        try {
            pt.epsilon = solve_stationary(pot, m, R, sopts).epsilon;
            pt.ok = true;
            out.epsilon1_empirical = std::max(out.epsilon1_empirical, pt.epsilon);
        } catch (const std::exception&) {
            pt.ok = false;
        }
        out.sweep.push_back(pt);
    }
    out.all_below_ceiling = out.epsilon1_empirical < out.ceiling;
    out.at_least_epsilon0 = out.epsilon1_empirical >= out.epsilon0;
    return out;
}

} // namespace aggstat

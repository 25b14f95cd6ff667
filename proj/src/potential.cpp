#include "aggstat/potential.hpp"

#include "aggstat/errors.hpp"
#include "aggstat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace aggstat {

namespace {

constexpr double kPi = std::numbers::pi;

// Tail of the inverse-multiquadric radial moment,
//   int_R^inf (1 + (r/a)^2)^{-P} r^{N-1} dr
//     = (a^N/2) int_0^x t^{P-N/2-1} (1-t)^{N/2-1} dt,   x = a^2/(a^2+R^2),
// expanded as the binomial series
//   (a^N/2) x^alpha sum_k C(N/2-1, k) (-x)^k / (k+alpha),  alpha = P - N/2,
// which converges for x < 1 and handles arbitrarily slow algebraic decay.
double imq_tail_moment(double a, double P, int N, double R)
{
    const double alpha = P - 0.5 * N;
    const double x = a * a / (a * a + R * R);
    const double beta = 0.5 * N;
    double coeff = 1.0; // C(beta-1, k) (-x)^k, k = 0
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double term = coeff / (k + alpha);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2)
            break;
        coeff *= -(beta - 1.0 - k) * x / (k + 1.0);
    }
    return 0.5 * std::pow(a, double(N)) * std::pow(x, alpha) * sum;
}

} // namespace

double unit_sphere_area(int dim)
{
    if (dim < 1)
        throw std::invalid_argument("unit_sphere_area: dimension must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ball_volume(int dim, double radius)
{
    return unit_sphere_area(dim) * std::pow(radius, double(dim)) / dim;
}

std::string family_name(PotentialFamily family)
{
    switch (family) {
    case PotentialFamily::Gaussian:
        return "gaussian";
    case PotentialFamily::InverseMultiquadric:
        return "inverse_multiquadric";
    }
    return "unknown";
}

PotentialFamily family_from_name(const std::string& name)
{
    if (name == "gaussian")
        return PotentialFamily::Gaussian;
    if (name == "inverse_multiquadric" || name == "imq")
        return PotentialFamily::InverseMultiquadric;
    throw InadmissibleParams("unknown potential family: " + name);
}

RadialPotential::RadialPotential(PotentialFamily family, std::vector<double> params, int dim)
    : family_(family), params_(std::move(params)), dim_(dim)
{
    if (dim_ < 1)
        throw InadmissibleParams("potential dimension must be >= 1");
    switch (family_) {
    case PotentialFamily::Gaussian: {
        const double sigma = params_.at(0);
        if (!(sigma > 0.0))
            throw InadmissibleParams("gaussian width sigma must be positive");
        norm_const_ = std::pow(2.0 * kPi * sigma * sigma, -0.5 * dim_);
        break;
    }
    case PotentialFamily::InverseMultiquadric: {
        const double a = params_.at(0);
        const double p = params_.at(1);
        if (!(a > 0.0))
            throw InadmissibleParams("inverse multiquadric scale a must be positive");
        if (!(p > 0.5 * dim_))
            throw InadmissibleParams("inverse multiquadric exponent must satisfy p > N/2");
        norm_const_ = std::exp(std::lgamma(p) - std::lgamma(p - 0.5 * dim_))
            / (std::pow(kPi, 0.5 * dim_) * std::pow(a, double(dim_)));
        break;
    }
    }
}

RadialPotential RadialPotential::gaussian(double sigma, int dim)
{
    return RadialPotential(PotentialFamily::Gaussian, {sigma}, dim);
}

RadialPotential RadialPotential::inverse_multiquadric(double a, double p, int dim)
{
    return RadialPotential(PotentialFamily::InverseMultiquadric, {a, p}, dim);
}

RadialPotential make_potential(PotentialFamily family, const std::vector<double>& params, int dim)
{
    switch (family) {
    case PotentialFamily::Gaussian:
        if (params.size() != 1)
            throw InadmissibleParams("gaussian potential takes one parameter (sigma)");
        return RadialPotential::gaussian(params[0], dim);
    case PotentialFamily::InverseMultiquadric:
        if (params.size() != 2)
            throw InadmissibleParams("inverse multiquadric takes two parameters (a, p)");
        return RadialPotential::inverse_multiquadric(params[0], params[1], dim);
    }
    throw InadmissibleParams("unknown potential family");
}

double RadialPotential::g(double r) const
{
    switch (family_) {
    case PotentialFamily::Gaussian: {
        const double sigma = params_[0];
        return amplitude_ * norm_const_ * std::exp(-0.5 * r * r / (sigma * sigma));
    }
    case PotentialFamily::InverseMultiquadric: {
        const double a = params_[0], p = params_[1];
        return amplitude_ * norm_const_ * std::pow(1.0 + (r / a) * (r / a), -p);
    }
    }
    return 0.0;
}

double RadialPotential::g_prime(double r) const
{
    switch (family_) {
    case PotentialFamily::Gaussian: {
        const double sigma = params_[0];
        return -r / (sigma * sigma) * g(r);
    }
    case PotentialFamily::InverseMultiquadric: {
        const double a = params_[0], p = params_[1];
        return -2.0 * p * r / (a * a) / (1.0 + (r / a) * (r / a)) * g(r);
    }
    }
    return 0.0;
}

double RadialPotential::length_scale() const
{
    return params_[0];
}

RadialPotential RadialPotential::scaled_by(double c) const
{
    RadialPotential copy = *this;
    copy.amplitude_ *= c;
    return copy;
}

namespace {

// omega_N int_0^inf g(r)^p r^{N-1} dr with a finite adaptive core and a
// family-specific analytic tail.
double radial_power_moment(const RadialPotential& pot, double p)
{
    const int N = pot.dimension();
    double core_end = 0.0, tail = 0.0;
    switch (pot.family()) {
    case PotentialFamily::Gaussian: {
        const double sigma = pot.params()[0];
        // g^p r^{N-1} < exp(-760) beyond this radius; tail below 1e-300.
        core_end = sigma * std::sqrt(1520.0 / p) + 10.0 * sigma;
        tail = 0.0;
        break;
    }
    case PotentialFamily::InverseMultiquadric: {
        const double a = pot.params()[0], q = pot.params()[1];
        if (!(p * q > 0.5 * N))
            throw DivergentIntegral("lp_norm_of_G: g^p r^{N-1} is not integrable (p*q <= N/2)");
        core_end = std::max(a, 1.0);
        const double gp0 = std::pow(pot.g(0.0), p); // amplitude^p * c^p
        tail = gp0 * imq_tail_moment(a, p * q, N, core_end);
        break;
    }
    }
    const double core = adaptive_integrate(
        [&](double r) { return std::pow(pot.g(r), p) * std::pow(r, N - 1.0); }, 0.0, core_end,
        1e-12);
    return unit_sphere_area(N) * (core + tail);
}

} // namespace

double lp_norm_of_G(const RadialPotential& pot, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm_of_G: p must be >= 1");
    return std::pow(radial_power_moment(pot, p), 1.0 / p);
}

double l1_normalization_residual(const RadialPotential& pot)
{
    return radial_power_moment(pot, 1.0) - 1.0;
}

namespace {

ValidationReport run_checks(const std::function<double(double)>& g,
                            const std::function<double(double)>& g_prime, double r_max,
                            int samples, double fd_step)
{
    ValidationReport rep;
    const double g0 = g(0.0);
    rep.min_g = g0;
    rep.max_g_prime = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= samples; ++j) {
        const double r = r_max * j / samples;
        rep.min_g = std::min(rep.min_g, g(r));
        if (j > 0)
            rep.max_g_prime = std::max(rep.max_g_prime, g_prime(r));
    }
    rep.positivity_ok = rep.min_g > 0.0;
    rep.monotonicity_ok = rep.max_g_prime < 0.0;

    rep.g_second_at_origin = (g(2.0 * fd_step) - 2.0 * g(fd_step) + g0) / (fd_step * fd_step);
    rep.curvature_ok = rep.g_second_at_origin < -1e-10;

    rep.decay_ratio = g(r_max) / g0;
    rep.decay_ok = rep.decay_ratio < 1e-3;
    rep.slow_decay = !rep.decay_ok && rep.decay_ratio < 0.5;
    return rep;
}

} // namespace

ValidationReport validate_assumptions(const RadialPotential& pot, double r_max, int samples)
{
    if (!(r_max > 0.0) || samples < 16)
        throw std::invalid_argument("validate_assumptions: r_max > 0 and samples >= 16 required");
    const double fd_step = 1e-4 * pot.length_scale();
    ValidationReport rep = run_checks([&](double r) { return pot.g(r); },
                                      [&](double r) { return pot.g_prime(r); }, r_max, samples,
                                      fd_step);
    rep.normalization_checked = true;
    rep.normalization_residual = l1_normalization_residual(pot);
    rep.normalization_ok = std::abs(rep.normalization_residual) <= 1e-8;
    rep.passed = rep.positivity_ok && rep.monotonicity_ok && rep.curvature_ok
        && rep.normalization_ok && (rep.decay_ok || rep.slow_decay);
    return rep;
}

ValidationReport validate_sampled(const std::function<double(double)>& g, double r_max,
                                  int samples, double fd_step)
{
    if (!(r_max > 0.0) || samples < 16)
        throw std::invalid_argument("validate_sampled: r_max > 0 and samples >= 16 required");
    auto fd_prime = [&](double r) { return (g(r + fd_step) - g(std::max(r - fd_step, 0.0)))
                                        / (fd_step + std::min(r, fd_step)); };
    ValidationReport rep = run_checks(g, fd_prime, r_max, samples, fd_step);
    rep.normalization_checked = false;
    rep.normalization_ok = true;
    rep.passed = rep.positivity_ok && rep.monotonicity_ok && rep.curvature_ok
        && (rep.decay_ok || rep.slow_decay);
    return rep;
}

} // namespace aggstat

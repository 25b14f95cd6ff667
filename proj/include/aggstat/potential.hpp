#ifndef AGGSTAT_POTENTIAL_HPP
#define AGGSTAT_POTENTIAL_HPP

#include <functional>
#include <string>
#include <vector>

namespace aggstat {

/// Surface area of the unit sphere in R^N, omega_N = 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dim);

/// Volume of the ball B_R(0) in R^N, omega_N R^N / N.
double ball_volume(int dim, double radius);

enum class PotentialFamily { Gaussian, InverseMultiquadric };

std::string family_name(PotentialFamily family);
PotentialFamily family_from_name(const std::string& name);

/// Radially symmetric interaction potential G(x) = g(|x|), normalized so that
/// the L^1 norm over R^N is 1. Both shipped families are strictly positive,
/// strictly decreasing in r > 0, C^2 with g''(0) < 0, and vanish at infinity:
///
///   Gaussian:             g(r) = c exp(-r^2 / (2 sigma^2)),
///                         c = (2 pi sigma^2)^{-N/2}
///   InverseMultiquadric:  g(r) = c (1 + (r/a)^2)^{-p},  p > N/2,
///                         c = Gamma(p) / (pi^{N/2} a^N Gamma(p - N/2))
///
/// Immutable after construction; all evaluation methods are pure.
class RadialPotential {
public:
    static RadialPotential gaussian(double sigma, int dim);
    static RadialPotential inverse_multiquadric(double a, double p, int dim);

    double g(double r) const;
    double g_prime(double r) const;

    PotentialFamily family() const { return family_; }
    int dimension() const { return dim_; }
    /// Family-specific positive parameters ({sigma} or {a, p}).
    const std::vector<double>& params() const { return params_; }
    double norm_const() const { return norm_const_; }
    /// Characteristic radial scale (sigma, resp. a); used for step sizes.
    double length_scale() const;

    /// Copy with the overall amplitude multiplied by c. Breaks the unit-L^1
    /// normalization on purpose; homogeneity test hook only.
    RadialPotential scaled_by(double c) const;

private:
    RadialPotential(PotentialFamily family, std::vector<double> params, int dim);

    PotentialFamily family_;
    std::vector<double> params_;
    int dim_;
    double norm_const_;
    double amplitude_ = 1.0;
};

/// Factory used by the CLI and bindings; params are positional per family.
RadialPotential make_potential(PotentialFamily family, const std::vector<double>& params, int dim);

/// (omega_N int_0^inf g(r)^p r^{N-1} dr)^{1/p} by adaptive quadrature on a
/// finite core interval plus a family-specific analytic tail.
/// Throws DivergentIntegral when g^p is not integrable against r^{N-1}.
double lp_norm_of_G(const RadialPotential& pot, double p);

/// omega_N int_0^inf g(r) r^{N-1} dr - 1, same quadrature machinery.
double l1_normalization_residual(const RadialPotential& pot);

/// Numerical check of the structural assumptions on a potential: positivity,
/// strict radial decrease, negative curvature at the origin, decay, and unit
/// L^1 mass. Failures are reported, never thrown.
struct ValidationReport {
    bool positivity_ok = false;
    double min_g = 0.0; // over sampled radii in [0, r_max]
    bool monotonicity_ok = false;
    double max_g_prime = 0.0; // over sampled radii in (0, r_max]
    bool curvature_ok = false;
    double g_second_at_origin = 0.0; // central finite difference
    bool decay_ok = false;
    double decay_ratio = 0.0; // g(r_max)/g(0), proxy threshold 1e-3
    bool slow_decay = false;  // clearly decreasing but proxy not yet met
    bool normalization_ok = false;
    bool normalization_checked = false;
    double normalization_residual = 0.0;
    bool passed = false;
};

ValidationReport validate_assumptions(const RadialPotential& pot, double r_max, int samples);

/// Same checks for an arbitrary sampled radial profile (derivatives by
/// central differences, no normalization check); used to vet injected
/// counterexamples in tests.
ValidationReport validate_sampled(const std::function<double(double)>& g, double r_max,
                                  int samples, double fd_step);

} // namespace aggstat

#endif

#include "aggstat/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace aggstat {

std::string format_g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_profile_csv(const std::filesystem::path& path, const RadialProfile& p)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << "r,rho\n";
    for (int i = 0; i < p.grid.size(); ++i)
        out << format_g17(p.grid.nodes[i]) << ',' << format_g17(p.values[i]) << '\n';
}

void write_curve_csv(const std::filesystem::path& path, const std::vector<CurvePoint>& points)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << "R,epsilon,energy,residual,iterations,status\n";
    for (const CurvePoint& pt : points) {
        out << format_g17(pt.R) << ',' << format_g17(pt.epsilon) << ','
            << format_g17(pt.energy) << ',' << format_g17(pt.residual) << ',' << pt.iterations
            << ',' << (pt.ok ? "ok" : "failed: " + pt.message) << '\n';
    }
}

void write_kernels_csv(const std::filesystem::path& path, const ShellKernels& ker)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << "i,j,r,s,K,H\n";
    const int n = ker.grid.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out << i << ',' << j << ',' << format_g17(ker.grid.nodes[i]) << ','
                << format_g17(ker.grid.nodes[j]) << ',' << format_g17(ker.K(i, j)) << ','
                << format_g17(ker.H(i, j)) << '\n';
}

nlohmann::json profile_json(const RadialProfile& p)
{
    nlohmann::json j;
    j["N"] = p.grid.dim;
    j["R"] = p.grid.radius;
    j["n"] = p.grid.size();
    j["r"] = std::vector<double>(p.grid.nodes.begin(), p.grid.nodes.end());
    j["rho"] = std::vector<double>(p.values.begin(), p.values.end());
    return j;
}

nlohmann::json validation_json(const ValidationReport& rep)
{
    nlohmann::json j;
    j["positivity_ok"] = rep.positivity_ok;
    j["min_g"] = rep.min_g;
    j["monotonicity_ok"] = rep.monotonicity_ok;
    j["max_g_prime"] = rep.max_g_prime;
    j["curvature_ok"] = rep.curvature_ok;
    j["g_second_at_origin"] = rep.g_second_at_origin;
    j["decay_ok"] = rep.decay_ok;
    j["decay_ratio"] = rep.decay_ratio;
    j["slow_decay"] = rep.slow_decay;
    j["normalization_ok"] = rep.normalization_ok;
    j["normalization_checked"] = rep.normalization_checked;
    j["normalization_residual"] = rep.normalization_residual;
    j["passed"] = rep.passed;
    return j;
}

nlohmann::json identity_json(const IdentityReport& rep)
{
    nlohmann::json j;
    j["lm_identity_error"] = rep.lm_identity_error;
    j["energy_identity_error_a"] = rep.energy_identity_error_a;
    j["energy_identity_error_b"] = rep.energy_identity_error_b;
    j["energy"] = rep.energy;
    j["negative_energy_required"] = rep.negative_energy_required;
    j["energy_negative"] = rep.energy_negative;
    j["identities_ok"] = rep.identities_ok;
    j["tol"] = rep.tol;
    return j;
}

nlohmann::json potential_json(const RadialPotential& pot)
{
    nlohmann::json j;
    j["family"] = family_name(pot.family());
    j["params"] = pot.params();
    j["dimension"] = pot.dimension();
    j["norm_const"] = pot.norm_const();
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace aggstat

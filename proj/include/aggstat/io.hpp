#ifndef AGGSTAT_IO_HPP
#define AGGSTAT_IO_HPP

#include "aggstat/linear_eigensolver.hpp"
#include "aggstat/nonlinear_stationary.hpp"
#include "aggstat/potential.hpp"
#include "aggstat/radial_grid.hpp"
#include "aggstat/shell_kernel.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace aggstat {

inline constexpr const char* kVersion = "0.1.0";

/// Fixed 17-significant-digit float formatting; all file output goes through
/// this so repeated runs diff byte-identically.
std::string format_g17(double x);

/// CSV with header "r,rho".
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& p);

/// CSV with header "R,epsilon,energy,residual,iterations,status"; failed rows
/// carry status "failed: <reason>".
void write_curve_csv(const std::filesystem::path& path, const std::vector<CurvePoint>& points);

/// Dump both kernels for inspection: columns i,j,r,s,K,H.
void write_kernels_csv(const std::filesystem::path& path, const ShellKernels& ker);

nlohmann::json profile_json(const RadialProfile& p);
nlohmann::json validation_json(const ValidationReport& rep);
nlohmann::json identity_json(const IdentityReport& rep);
nlohmann::json potential_json(const RadialPotential& pot);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace aggstat

#endif

// aggstat: stationary states and energy minimizers of the aggregation
// equation with degenerate diffusion, rho_t = div(rho grad(eps rho^{m-1} - G*rho)).
//
// Subcommands: validate, solve, curve, minimize, thresholds. A JSON config
// provides defaults; command-line flags override individual fields. Exit
// codes: 0 success, 1 numeric/mathematical failure, 2 usage/config error.

#include "aggstat/energy_minimizer.hpp"
#include "aggstat/errors.hpp"
#include "aggstat/io.hpp"
#include "aggstat/linear_eigensolver.hpp"
#include "aggstat/nonlinear_stationary.hpp"
#include "aggstat/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace aggstat;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string family = "gaussian";
    std::vector<double> params = {1.0};
    int dimension = 1;

    double m = 2.0;
    double epsilon = -1.0; // < 0: unset
    double R = -1.0;       // < 0: unset
    std::vector<double> R_list;

    int n = 257;
    int angular_n = 64;
    double tol = 1e-6; // residual acceptance (solve/curve), kkt tol (minimize)
    int max_iter = 50000;
    double damping = 0.0; // 0 = per-m default

    std::string output_dir = ".";
    int jobs = 1;
};

void apply_config_file(const std::string& path, RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file: " + path);
    json j = json::parse(in);
    if (j.contains("potential")) {
        const json& p = j["potential"];
        if (p.contains("family"))
            cfg.family = p["family"].get<std::string>();
        if (p.contains("params"))
            cfg.params = p["params"].get<std::vector<double>>();
        if (p.contains("dimension"))
            cfg.dimension = p["dimension"].get<int>();
    }
    if (j.contains("problem")) {
        const json& p = j["problem"];
        if (p.contains("m"))
            cfg.m = p["m"].get<double>();
        if (p.contains("epsilon"))
            cfg.epsilon = p["epsilon"].get<double>();
        if (p.contains("R"))
            cfg.R = p["R"].get<double>();
        if (p.contains("R_list"))
            cfg.R_list = p["R_list"].get<std::vector<double>>();
    }
    if (j.contains("numerics")) {
        const json& p = j["numerics"];
        if (p.contains("n"))
            cfg.n = p["n"].get<int>();
        if (p.contains("angular_n"))
            cfg.angular_n = p["angular_n"].get<int>();
        if (p.contains("tol"))
            cfg.tol = p["tol"].get<double>();
        if (p.contains("max_iter"))
            cfg.max_iter = p["max_iter"].get<int>();
        if (p.contains("damping"))
            cfg.damping = p["damping"].get<double>();
    }
    if (j.contains("output") && j["output"].contains("directory"))
        cfg.output_dir = j["output"]["directory"].get<std::string>();
}

json resolved_config_json(const RunConfig& cfg)
{
    json j;
    j["potential"] = {{"family", cfg.family}, {"params", cfg.params},
                      {"dimension", cfg.dimension}};
    j["problem"] = json::object();
    j["problem"]["m"] = cfg.m;
    if (cfg.epsilon >= 0.0)
        j["problem"]["epsilon"] = cfg.epsilon;
    if (cfg.R >= 0.0)
        j["problem"]["R"] = cfg.R;
    if (!cfg.R_list.empty())
        j["problem"]["R_list"] = cfg.R_list;
    j["numerics"] = {{"n", cfg.n},       {"angular_n", cfg.angular_n}, {"tol", cfg.tol},
                     {"max_iter", cfg.max_iter}, {"damping", cfg.damping}};
    j["output"] = {{"directory", cfg.output_dir}};
    return j;
}

json stamped(const RunConfig& cfg)
{
    json j;
    j["config"] = resolved_config_json(cfg);
    j["generator"] = "aggstat";
    j["version"] = kVersion;
    return j;
}

std::string cache_dir_from_env()
{
    const char* dir = std::getenv("AGGR_CACHE_DIR");
    return dir ? dir : "";
}

RadialPotential potential_from(const RunConfig& cfg)
{
    return make_potential(family_from_name(cfg.family), cfg.params, cfg.dimension);
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.output_dir);
    return std::filesystem::path(cfg.output_dir) / name;
}

int cmd_validate(const RunConfig& cfg)
{
    RadialPotential pot = potential_from(cfg);
    const double r_max = 10.0 * pot.length_scale();
    ValidationReport rep = validate_assumptions(pot, r_max, 256);
    json j = stamped(cfg);
    j["potential"] = potential_json(pot);
    j["report"] = validation_json(rep);
    write_json(out_path(cfg, "report.json"), j);
    std::cerr << "validate: " << (rep.passed ? "pass" : "FAIL")
              << (rep.slow_decay ? " (slow decay noted)" : "") << "\n";
    return rep.passed ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg)
{
    if (cfg.R <= 0.0)
        throw CLI::ValidationError("solve requires a positive R");
    RadialPotential pot = potential_from(cfg);
    StationaryOptions opts;
    opts.n = cfg.n;
    opts.angular_n = cfg.angular_n;
    opts.max_iter = cfg.max_iter;
    opts.damping = cfg.damping;
    opts.residual_tol = cfg.tol;
    opts.assembly.cache_dir = cache_dir_from_env();

    json j = stamped(cfg);
    try {
        StationaryResult res = solve_stationary(pot, cfg.m, cfg.R, opts);
        ShellKernels ker = assemble_kernels(pot, res.rho.grid, cfg.angular_n, opts.assembly);
        write_profile_csv(out_path(cfg, "rho.csv"), res.rho);
        j["epsilon"] = res.epsilon;
        j["R"] = res.R;
        j["m"] = res.m;
        j["energy"] = res.energy;
        j["residual"] = res.residual;
        j["compactness_margin"] = res.compactness_margin;
        j["iterations"] = res.iterations;
        j["support_radius"] = support_radius(res.rho);
        j["identities"] = identity_json(energy_identities_check(res, ker));
        if (cfg.m > 2.0) {
            SupportBound sb = support_bound_check(res);
            j["support_bound"] = {{"bound", sb.bound},
                                  {"ball_volume", ball_volume(cfg.dimension, cfg.R)},
                                  {"satisfied", sb.satisfied}};
        }
        write_json(out_path(cfg, "result.json"), j);
        return 0;
    } catch (const NoConvergence& e) {
        j["error"] = {{"type", "NoConvergence"}, {"what", e.what()},
                      {"iterations", e.iterations}};
        write_json(out_path(cfg, "result.json"), j);
        std::cerr << "solve: " << e.what() << "\n";
        return 1;
    }
}

int cmd_curve(const RunConfig& cfg)
{
    if (cfg.R_list.empty())
        throw CLI::ValidationError("curve requires a non-empty ascending R_list");
    for (size_t i = 1; i < cfg.R_list.size(); ++i)
        if (!(cfg.R_list[i] > cfg.R_list[i - 1]))
            throw CLI::ValidationError("curve R_list must be strictly ascending");

    RadialPotential pot = potential_from(cfg);
    std::vector<CurvePoint> points;
    if (cfg.m == 2.0) {
        EigenSolveOptions opts;
        opts.n = cfg.n;
        opts.angular_n = cfg.angular_n;
        opts.assembly.cache_dir = cache_dir_from_env();
        points = epsilon_of_R_curve(pot, cfg.R_list, opts, cfg.jobs);
    } else {
        StationaryOptions opts;
        opts.n = cfg.n;
        opts.angular_n = cfg.angular_n;
        opts.max_iter = cfg.max_iter;
        opts.damping = cfg.damping;
        opts.residual_tol = cfg.tol;
        opts.assembly.cache_dir = cache_dir_from_env();
        points = epsilon_of_R_curve_nonlinear(pot, cfg.m, cfg.R_list, opts, cfg.jobs);
    }
    write_curve_csv(out_path(cfg, "curve.csv"), points);

    bool all_ok = true;
    for (const CurvePoint& pt : points)
        all_ok = all_ok && pt.ok;
    const bool monotone = epsilons_strictly_increasing(points);
    if (cfg.m == 2.0) {
        std::cerr << "curve: eps(R) strictly increasing (asserted): "
                  << (monotone ? "yes" : "VIOLATED") << "\n";
        if (!monotone)
            return 1;
    } else {
        std::cerr << "curve: eps(R) strictly increasing (observed): "
                  << (monotone ? "yes" : "no") << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_minimize(const RunConfig& cfg)
{
    if (cfg.epsilon <= 0.0)
        throw CLI::ValidationError("minimize requires a positive epsilon");
    RadialPotential pot = potential_from(cfg);
    MinimizeOptions opts;
    opts.n = cfg.n;
    opts.angular_n = cfg.angular_n;
    opts.max_iter = cfg.max_iter;
    opts.kkt_tol = cfg.tol;
    opts.assembly.cache_dir = cache_dir_from_env();

    MinimizeResult res = minimize_global(pot, cfg.m, cfg.epsilon, opts);
    write_profile_csv(out_path(cfg, "rho.csv"), res.rho);
    json j = stamped(cfg);
    j["status"] = to_string(res.status);
    j["classification"] = res.detail;
    j["epsilon"] = res.epsilon;
    j["m"] = res.m;
    j["R_box"] = res.R_box;
    j["energy"] = res.energy;
    j["support_radius"] = res.support_radius;
    j["kkt_residual"] = res.kkt_residual;
    j["iterations"] = res.iterations;
    write_json(out_path(cfg, "result.json"), j);
    std::cerr << "minimize: " << to_string(res.status)
              << (res.detail.empty() ? "" : " - " + res.detail) << "\n";
    return res.status == MinimizeStatus::Converged ? 0 : 1;
}

int cmd_thresholds(const RunConfig& cfg)
{
    if (!(cfg.m > 1.0) || !(cfg.m < 2.0)) {
        std::cerr << "thresholds: m must lie in (1,2)\n";
        return 1;
    }
    RadialPotential pot = potential_from(cfg);
    ThresholdOptions opts;
    opts.n = cfg.n;
    opts.angular_n = cfg.angular_n;
    opts.max_iter = cfg.max_iter;
    opts.assembly.cache_dir = cache_dir_from_env();

    Epsilon0Result e0 = estimate_epsilon0(pot, cfg.m, opts);
    std::vector<double> sweep = cfg.R_list;
    if (sweep.empty())
        sweep = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    Epsilon1Result e1 = estimate_epsilon1(pot, cfg.m, sweep, e0.epsilon0, opts);

    json j = stamped(cfg);
    j["m"] = cfg.m;
    j["epsilon0"] = e0.epsilon0;
    j["epsilon0_upper_bound"] = e0.upper_bound;
    j["epsilon1_empirical"] = e1.epsilon1_empirical;
    j["epsilon1_ceiling"] = e1.ceiling;
    j["maximizer_support_radius"] = e0.support_radius;
    json sweep_json = json::array();
    for (const Epsilon1Point& pt : e1.sweep)
        sweep_json.push_back({{"R", pt.R}, {"epsilon", pt.epsilon}, {"ok", pt.ok}});
    j["sweep"] = sweep_json;
    write_profile_csv(out_path(cfg, "maximizer.csv"), e0.maximizer);
    write_json(out_path(cfg, "thresholds.json"), j);

    const bool ordering_ok = e0.epsilon0 <= e0.upper_bound + 1e-8 && e1.all_below_ceiling;
    std::cerr << "thresholds: eps0=" << e0.epsilon0 << " (bound " << e0.upper_bound
              << "), eps1=" << e1.epsilon1_empirical << " (ceiling " << e1.ceiling << ")"
              << (ordering_ok ? "" : "  ORDERING VIOLATED") << "\n";
    return ordering_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stationary states and energy minimizers of the aggregation equation "
                 "with degenerate diffusion"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON config file");
        sub->add_option("--family", cfg.family, "potential family")
            ->check(CLI::IsMember({"gaussian", "inverse_multiquadric"}));
        sub->add_option("--params", cfg.params, "potential parameters");
        sub->add_option("-N,--dimension", cfg.dimension, "space dimension");
        sub->add_option("--n", cfg.n, "radial grid nodes");
        sub->add_option("--angular-n", cfg.angular_n, "initial angular quadrature nodes");
        sub->add_option("--tol", cfg.tol, "acceptance tolerance");
        sub->add_option("--max-iter", cfg.max_iter, "iteration cap");
        sub->add_option("--damping", cfg.damping, "fixed-point damping (0 = per-m default)");
        sub->add_option("-o,--output-dir", cfg.output_dir, "output directory");
        sub->add_option("-j,--jobs", cfg.jobs, "worker pool size for sweeps");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the structural assumptions");
    add_common(validate);

    CLI::App* solve = app.add_subcommand("solve", "stationary state on B_R");
    add_common(solve);
    solve->add_option("--m", cfg.m, "diffusion exponent");
    solve->add_option("--R", cfg.R, "support radius");

    CLI::App* curve = app.add_subcommand("curve", "trace eps(R) over a radius list");
    add_common(curve);
    curve->add_option("--m", cfg.m, "diffusion exponent");
    curve->add_option("--R-list", cfg.R_list, "ascending radii");

    CLI::App* minimize = app.add_subcommand("minimize", "global energy minimizer");
    add_common(minimize);
    minimize->add_option("--m", cfg.m, "diffusion exponent");
    minimize->add_option("--epsilon", cfg.epsilon, "diffusion coefficient");

    CLI::App* thresholds =
        app.add_subcommand("thresholds", "estimate eps0 and eps1 for 1 < m < 2");
    add_common(thresholds);
    thresholds->add_option("--m", cfg.m, "diffusion exponent in (1,2)");
    thresholds->add_option("--R-list", cfg.R_list, "stationary sweep radii");

    // Config file first, then flags override: parse twice.
    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig from_file;
            apply_config_file(config_path, from_file);
            cfg = from_file;
            app.clear();
            app.parse(argc, argv); // flags win over file values
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed())
            return cmd_validate(cfg);
        if (solve->parsed())
            return cmd_solve(cfg);
        if (curve->parsed())
            return cmd_curve(cfg);
        if (minimize->parsed())
            return cmd_minimize(cfg);
        if (thresholds->parsed())
            return cmd_thresholds(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InadmissibleParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include "aggstat/energy_minimizer.hpp"
#include "aggstat/linear_eigensolver.hpp"
#include "aggstat/nonlinear_stationary.hpp"
#include "aggstat/oracle.hpp"
#include "aggstat/potential.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace aggstat;

namespace {

py::dict profile_dict(const RadialProfile& p)
{
    py::dict d;
    d["r"] = p.grid.nodes;
    d["rho"] = p.values;
    d["N"] = p.grid.dim;
    d["R"] = p.grid.radius;
    return d;
}

py::dict curve_point_dict(const CurvePoint& pt)
{
    py::dict d;
    d["R"] = pt.R;
    d["epsilon"] = pt.epsilon;
    d["energy"] = pt.energy;
    d["residual"] = pt.residual;
    d["iterations"] = pt.iterations;
    d["ok"] = pt.ok;
    if (!pt.ok)
        d["message"] = pt.message;
    return d;
}

RadialProfile profile_on(const RadialGrid& grid, const Eigen::VectorXd& values)
{
    if (values.size() != grid.size())
        throw std::invalid_argument("values length does not match the grid");
    return RadialProfile{grid, values};
}

} // namespace

PYBIND11_MODULE(_aggstat, m)
{
    m.doc() = "stationary states and energy minimizers of the aggregation equation "
              "with degenerate diffusion";
    m.attr("__version__") = "0.1.0";

    py::class_<RadialPotential>(m, "Potential")
        .def_static("gaussian", &RadialPotential::gaussian, py::arg("sigma"), py::arg("dim"))
        .def_static("inverse_multiquadric", &RadialPotential::inverse_multiquadric,
                    py::arg("a"), py::arg("p"), py::arg("dim"))
        .def("g", &RadialPotential::g, py::arg("r"))
        .def("g_prime", &RadialPotential::g_prime, py::arg("r"))
        .def_property_readonly("dimension", &RadialPotential::dimension)
        .def_property_readonly("params", &RadialPotential::params)
        .def_property_readonly("norm_const", &RadialPotential::norm_const)
        .def("__repr__", [](const RadialPotential& p) {
            std::string s = "Potential(" + family_name(p.family());
            for (double v : p.params())
                s += ", " + std::to_string(v);
            return s + ", dim=" + std::to_string(p.dimension()) + ")";
        });

    m.def("lp_norm", &lp_norm_of_G, py::arg("potential"), py::arg("p"),
          "(omega_N int g^p r^{N-1} dr)^{1/p}");

    m.def(
        "validate",
        [](const RadialPotential& pot, double r_max, int samples) {
            ValidationReport rep = validate_assumptions(pot, r_max, samples);
            py::dict d;
            d["positivity_ok"] = rep.positivity_ok;
            d["monotonicity_ok"] = rep.monotonicity_ok;
            d["curvature_ok"] = rep.curvature_ok;
            d["decay_ok"] = rep.decay_ok;
            d["slow_decay"] = rep.slow_decay;
            d["normalization_ok"] = rep.normalization_ok;
            d["normalization_residual"] = rep.normalization_residual;
            d["passed"] = rep.passed;
            return d;
        },
        py::arg("potential"), py::arg("r_max") = 10.0, py::arg("samples") = 256);

    py::class_<RadialGrid>(m, "Grid")
        .def_property_readonly("dim", [](const RadialGrid& g) { return g.dim; })
        .def_property_readonly("radius", [](const RadialGrid& g) { return g.radius; })
        .def_property_readonly("nodes", [](const RadialGrid& g) { return g.nodes; })
        .def_property_readonly("quad_weights", [](const RadialGrid& g) { return g.quad_weights; })
        .def_property_readonly("volume_weights",
                               [](const RadialGrid& g) { return g.volume_weights; })
        .def("__len__", &RadialGrid::size);

    m.def("make_grid", &make_grid, py::arg("dim"), py::arg("radius"), py::arg("n"));

    m.def(
        "mass",
        [](const RadialGrid& grid, const Eigen::VectorXd& values) {
            return mass(profile_on(grid, values));
        },
        py::arg("grid"), py::arg("values"));

    py::class_<ShellKernels>(m, "ShellKernels")
        .def_property_readonly("K", [](const ShellKernels& k) { return k.K; })
        .def_property_readonly("H", [](const ShellKernels& k) { return k.H; })
        .def_property_readonly("grid", [](const ShellKernels& k) { return k.grid; })
        .def_property_readonly("angular_nodes_used",
                               [](const ShellKernels& k) { return k.angular_nodes_used; });

    m.def(
        "assemble_kernels",
        [](const RadialPotential& pot, const RadialGrid& grid, int angular_n) {
            return assemble_kernels(pot, grid, angular_n);
        },
        py::arg("potential"), py::arg("grid"), py::arg("angular_n") = 64);

    m.def(
        "convolve",
        [](const ShellKernels& ker, const Eigen::VectorXd& values) {
            return convolve(ker, profile_on(ker.grid, values)).values;
        },
        py::arg("kernels"), py::arg("values"), "radial representative of G*rho");

    m.def(
        "energy",
        [](const ShellKernels& ker, const Eigen::VectorXd& values, double m_exp, double eps) {
            return energy(profile_on(ker.grid, values), m_exp, eps, ker);
        },
        py::arg("kernels"), py::arg("values"), py::arg("m"), py::arg("epsilon"));

    m.def(
        "solve_stationary",
        [](const RadialPotential& pot, double m_exp, double R, int n, int angular_n,
           double damping, int max_iter) {
            StationaryOptions opts;
            opts.n = n;
            opts.angular_n = angular_n;
            opts.damping = damping;
            opts.max_iter = max_iter;
            StationaryResult res = solve_stationary(pot, m_exp, R, opts);
            py::dict d = profile_dict(res.rho);
            d["m"] = res.m;
            d["epsilon"] = res.epsilon;
            d["energy"] = res.energy;
            d["residual"] = res.residual;
            d["compactness_margin"] = res.compactness_margin;
            d["iterations"] = res.iterations;
            return d;
        },
        py::arg("potential"), py::arg("m"), py::arg("R"), py::arg("n") = 257,
        py::arg("angular_n") = 64, py::arg("damping") = 0.0, py::arg("max_iter") = 50000);

    m.def(
        "solve_eigen",
        [](const RadialPotential& pot, double R, int n, int angular_n) {
            EigenSolveOptions opts;
            opts.n = n;
            opts.angular_n = angular_n;
            EigenResult res = solve_eigen(pot, R, opts);
            py::dict d = profile_dict(res.rho);
            d["epsilon"] = res.epsilon;
            d["u"] = res.u.values;
            d["iterations"] = res.iterations;
            d["residual"] = res.residual;
            return d;
        },
        py::arg("potential"), py::arg("R"), py::arg("n") = 257, py::arg("angular_n") = 64,
        "principal eigenpair of H_R with the reconstructed density (m = 2)");

    m.def(
        "solve_R_for_epsilon",
        [](const RadialPotential& pot, double eps, double tol, int n, int angular_n) {
            RadiusSearchOptions opts;
            opts.solve.n = n;
            opts.solve.angular_n = angular_n;
            EigenResult res = solve_R_for_epsilon(pot, eps, tol, opts);
            py::dict d = profile_dict(res.rho);
            d["epsilon"] = res.epsilon;
            d["R"] = res.R;
            return d;
        },
        py::arg("potential"), py::arg("epsilon"), py::arg("tol") = 1e-10, py::arg("n") = 257,
        py::arg("angular_n") = 64);

    m.def(
        "epsilon_of_R_curve",
        [](const RadialPotential& pot, double m_exp, const std::vector<double>& radii, int n,
           int angular_n, int jobs) {
            std::vector<CurvePoint> points;
            if (m_exp == 2.0) {
                EigenSolveOptions opts;
                opts.n = n;
                opts.angular_n = angular_n;
                points = epsilon_of_R_curve(pot, radii, opts, jobs);
            } else {
                StationaryOptions opts;
                opts.n = n;
                opts.angular_n = angular_n;
                points = epsilon_of_R_curve_nonlinear(pot, m_exp, radii, opts, jobs);
            }
            py::list out;
            for (const CurvePoint& pt : points)
                out.append(curve_point_dict(pt));
            return out;
        },
        py::arg("potential"), py::arg("m"), py::arg("radii"), py::arg("n") = 257,
        py::arg("angular_n") = 64, py::arg("jobs") = 1);

    m.def(
        "minimize_global",
        [](const RadialPotential& pot, double m_exp, double eps, int n, int angular_n,
           double R0, double R_cap) {
            MinimizeOptions opts;
            opts.n = n;
            opts.angular_n = angular_n;
            opts.R0 = R0;
            opts.R_cap = R_cap;
            MinimizeResult res = minimize_global(pot, m_exp, eps, opts);
            py::dict d = profile_dict(res.rho);
            d["status"] = to_string(res.status);
            d["classification"] = res.detail;
            d["energy"] = res.energy;
            d["support_radius"] = res.support_radius;
            d["kkt_residual"] = res.kkt_residual;
            d["R_box"] = res.R_box;
            d["iterations"] = res.iterations;
            return d;
        },
        py::arg("potential"), py::arg("m"), py::arg("epsilon"), py::arg("n") = 193,
        py::arg("angular_n") = 64, py::arg("R0") = 1.0, py::arg("R_cap") = 128.0);

    m.def(
        "estimate_thresholds",
        [](const RadialPotential& pot, double m_exp, const std::vector<double>& sweep, int n,
           int angular_n) {
            ThresholdOptions opts;
            opts.n = n;
            opts.angular_n = angular_n;
            Epsilon0Result e0 = estimate_epsilon0(pot, m_exp, opts);
            Epsilon1Result e1 = estimate_epsilon1(pot, m_exp, sweep, e0.epsilon0, opts);
            py::dict d;
            d["epsilon0"] = e0.epsilon0;
            d["epsilon0_upper_bound"] = e0.upper_bound;
            d["epsilon1_empirical"] = e1.epsilon1_empirical;
            d["epsilon1_ceiling"] = e1.ceiling;
            d["all_below_ceiling"] = e1.all_below_ceiling;
            d["maximizer"] = profile_dict(e0.maximizer);
            return d;
        },
        py::arg("potential"), py::arg("m"), py::arg("sweep"), py::arg("n") = 161,
        py::arg("angular_n") = 48, "eps0/eps1 thresholds for 1 < m < 2");

    m.def(
        "dense_eig_1d",
        [](const RadialPotential& pot, double L, int n) {
            DenseEigResult res = dense_eig_1d(pot, L, n);
            py::dict d;
            d["eigenvalue_magnitudes"] = res.eigenvalue_magnitudes;
            d["principal_u"] = res.principal_u;
            d["spectral_gap"] = res.spectral_gap;
            return d;
        },
        py::arg("potential"), py::arg("L"), py::arg("n") = 129);
}

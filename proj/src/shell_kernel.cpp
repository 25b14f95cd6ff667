#include "aggstat/shell_kernel.hpp"

#include "aggstat/errors.hpp"
#include "aggstat/parallel.hpp"
#include "aggstat/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace aggstat {

namespace {

void assemble_1d(const RadialPotential& pot, const RadialGrid& grid, Eigen::MatrixXd& K,
                 Eigen::MatrixXd& H)
{
    const int n = grid.size();
    for (int i = 0; i < n; ++i) {
        const double r = grid.nodes[i];
        for (int j = 0; j < n; ++j) {
            const double s = grid.nodes[j];
            const double near = pot.g(std::abs(r - s));
            const double far = pot.g(r + s);
            K(i, j) = near + far;
            H(i, j) = near - far;
        }
    }
}

// One angular resolution level for N >= 2. Rows are independent.
void assemble_nd(const RadialPotential& pot, const RadialGrid& grid, int angular_n, int jobs,
                 Eigen::MatrixXd& K, Eigen::MatrixXd& H)
{
    const int n = grid.size();
    const int N = grid.dim;
    const QuadratureRule angle = gauss_legendre(angular_n, 0.0, std::numbers::pi);
    Eigen::VectorXd cos_t(angular_n), sin_pow(angular_n);
    for (int q = 0; q < angular_n; ++q) {
        cos_t[q] = std::cos(angle.nodes[q]);
        sin_pow[q] = std::pow(std::sin(angle.nodes[q]), N - 2.0);
    }
    const double omega_prev = unit_sphere_area(N - 1); // counting measure 2 when N = 2
    const double omega = unit_sphere_area(N);

    parallel_for(0, n, [&](int i) {
        const double r = grid.nodes[i];
        if (i == 0) {
            // Exact constant-shell row: the integrand is g(s) on all of dB_s.
            for (int j = 0; j < n; ++j) {
                const double s = grid.nodes[j];
                K(0, j) = omega * std::pow(s, N - 1.0) * pot.g(s);
                H(0, j) = 0.0;
            }
            return;
        }
        for (int j = 0; j < n; ++j) {
            const double s = grid.nodes[j];
            double sum_k = 0.0, sum_h = 0.0;
            for (int q = 0; q < angular_n; ++q) {
                const double d = std::sqrt(r * r + s * s - 2.0 * r * s * cos_t[q]);
                const double base = angle.weights[q] * pot.g(d) * sin_pow[q];
                sum_k += base;
                sum_h += base * cos_t[q];
            }
            const double shell = omega_prev * std::pow(s, N - 1.0);
            K(i, j) = shell * sum_k;
            H(i, j) = shell * sum_h;
        }
    }, jobs);
}

} // namespace

ShellKernels assemble_kernels(const RadialPotential& pot, const RadialGrid& grid, int angular_n,
                              const AssemblyOptions& opts)
{
    if (pot.dimension() != grid.dim)
        throw DimensionMismatch("assemble_kernels: potential and grid dimension differ");
    const int n = grid.size();

    std::string cache_key;
    if (!opts.cache_dir.empty()) {
        cache_key = kernel_cache_key(pot, n, grid.radius, angular_n);
        ShellKernels cached;
        if (load_kernels_cache(opts.cache_dir, cache_key, cached)
            && cached.grid.same_as(grid))
            return cached;
    }

    ShellKernels ker{grid, Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), 0, pot.g(0.0)};

    if (grid.dim == 1) {
        assemble_1d(pot, grid, ker.K, ker.H);
        ker.angular_nodes_used = 0;
        if (!cache_key.empty())
            save_kernels_cache(opts.cache_dir, cache_key, ker);
        return ker;
    }

    if (angular_n < 16)
        throw std::invalid_argument("assemble_kernels: angular_n must be >= 16 for N >= 2");

    int an = angular_n;
    assemble_nd(pot, grid, an, opts.jobs, ker.K, ker.H);
    Eigen::MatrixXd K2(n, n), H2(n, n);
    while (true) {
        const int an2 = 2 * an;
        assemble_nd(pot, grid, an2, opts.jobs, K2, H2);
        const double scale_k = ker.K.cwiseAbs().maxCoeff();
        const double scale_h = ker.H.cwiseAbs().maxCoeff();
        const double change = std::max((K2 - ker.K).cwiseAbs().maxCoeff() / scale_k,
                                       (H2 - ker.H).cwiseAbs().maxCoeff() / scale_h);
        ker.K.swap(K2);
        ker.H.swap(H2);
        an = an2;
        if (change <= opts.refine_tol)
            break;
        if (an >= opts.max_angular_n) {
            if (change > opts.accept_tol)
                throw QuadratureUnderResolved(
                    "assemble_kernels: angular quadrature not converged at cap");
            break;
        }
    }
    ker.angular_nodes_used = an;
    if (!cache_key.empty())
        save_kernels_cache(opts.cache_dir, cache_key, ker);
    return ker;
}

RadialProfile convolve(const ShellKernels& ker, const RadialProfile& p)
{
    if (!ker.grid.same_as(p.grid))
        throw GridMismatch("convolve: profile lives on a different grid");
    RadialProfile out{ker.grid, ker.K * (ker.grid.quad_weights.array() * p.values.array()).matrix()};
    return out;
}

double boundary_convolution(const ShellKernels& ker, const RadialProfile& p)
{
    if (!ker.grid.same_as(p.grid))
        throw GridMismatch("boundary_convolution: profile lives on a different grid");
    return ker.K.row(ker.grid.size() - 1).dot(
        (ker.grid.quad_weights.array() * p.values.array()).matrix());
}

RadialProfile apply_H(const ShellKernels& ker, const RadialProfile& u)
{
    if (!ker.grid.same_as(u.grid))
        throw GridMismatch("apply_H: profile lives on a different grid");
    RadialProfile out{ker.grid, ker.H * (ker.grid.quad_weights.array() * u.values.array()).matrix()};
    return out;
}

Eigen::MatrixXd h_collocation_matrix(const ShellKernels& ker)
{
    return ker.H * ker.grid.quad_weights.asDiagonal();
}

namespace {

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

constexpr uint32_t kCacheMagic = 0x41474b52; // "AGKR"

} // namespace

std::string kernel_cache_key(const RadialPotential& pot, int n, double R, int angular_n)
{
    std::string desc = family_name(pot.family());
    for (double p : pot.params())
        desc += "|" + g17(p);
    desc += "|N" + std::to_string(pot.dimension());
    desc += "|R" + g17(R);
    desc += "|n" + std::to_string(n);
    desc += "|a" + std::to_string(angular_n);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(desc)));
    return std::string("kernels-") + buf;
}

bool load_kernels_cache(const std::string& dir, const std::string& key, ShellKernels& out)
{
    std::ifstream in(std::filesystem::path(dir) / (key + ".bin"), std::ios::binary);
    if (!in)
        return false;
    uint32_t magic = 0;
    int32_t dim = 0, n = 0, angular = 0;
    double R = 0.0, g0 = 0.0;
    in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&angular), sizeof(angular));
    in.read(reinterpret_cast<char*>(&R), sizeof(R));
    in.read(reinterpret_cast<char*>(&g0), sizeof(g0));
    if (!in || magic != kCacheMagic || n < 8 || dim < 1)
        return false;
    out.grid = make_grid(dim, R, n);
    out.angular_nodes_used = angular;
    out.g_at_origin = g0;
    out.K.resize(n, n);
    out.H.resize(n, n);
    in.read(reinterpret_cast<char*>(out.K.data()), sizeof(double) * n * n);
    in.read(reinterpret_cast<char*>(out.H.data()), sizeof(double) * n * n);
    return bool(in);
}

void save_kernels_cache(const std::string& dir, const std::string& key, const ShellKernels& ker)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(std::filesystem::path(dir) / (key + ".bin"), std::ios::binary);
    if (!out)
        return; // cache is best-effort
    const uint32_t magic = kCacheMagic;
    const int32_t dim = ker.grid.dim, n = ker.grid.size(), angular = ker.angular_nodes_used;
    const double R = ker.grid.radius, g0 = ker.g_at_origin;
    out.write(reinterpret_cast<const char*>(&magic), sizeof(magic));
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&angular), sizeof(angular));
    out.write(reinterpret_cast<const char*>(&R), sizeof(R));
    out.write(reinterpret_cast<const char*>(&g0), sizeof(g0));
    out.write(reinterpret_cast<const char*>(ker.K.data()), sizeof(double) * n * n);
    out.write(reinterpret_cast<const char*>(ker.H.data()), sizeof(double) * n * n);
}

} // namespace aggstat

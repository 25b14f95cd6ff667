#include "aggstat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace aggstat {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp)
{
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        legendre_pair(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -std::abs(x);
        rule.nodes[n - 1 - i] = std::abs(x);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[half - 1] = 0.0;
    }
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    QuadratureRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    rule.nodes = (rule.nodes.array() * hw + mid).matrix();
    rule.weights *= hw;
    return rule;
}

QuadratureRule clenshaw_curtis(int n, double a, double b)
{
    if (n < 2)
        throw std::invalid_argument("clenshaw_curtis: n must be >= 2");
    const int K = n - 1;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Weights on [-1,1] for nodes x_k = cos(pi k/K):
    //   w_k = (2 c_k / K) * sum''_{j even} c_j * 2/(1-j^2) * cos(j pi k / K)
    // with c_i = 1/2 at i in {0,K} and 1 otherwise.
    for (int k = 0; k <= K; ++k) {
        double sum = 0.0;
        for (int j = 0; j <= K; j += 2) {
            const double cj = (j == 0 || j == K) ? 0.5 : 1.0;
            sum += cj * (2.0 / (1.0 - double(j) * j)) * std::cos(j * kPi * k / K);
        }
        const double ck = (k == 0 || k == K) ? 0.5 : 1.0;
        const double w = 2.0 * ck / K * sum;
        // Ascending map: r = a + (b-a)(1 - cos(pi k/K))/2, so k=0 -> a, k=K -> b.
        const double r = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * k / K));
        rule.nodes[k] = r;
        rule.weights[k] = w * 0.5 * (b - a);
    }
    rule.nodes[0] = a;
    rule.nodes[K] = b;
    return rule;
}

namespace {

struct Panel {
    double a, b;
    int depth;
};

double panel_estimate(const std::function<double(double)>& f, double a, double b,
                      const QuadratureRule& lo, const QuadratureRule& hi, double& err)
{
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s_lo = 0.0, s_hi = 0.0;
    for (int i = 0; i < lo.nodes.size(); ++i)
        s_lo += lo.weights[i] * f(mid + hw * lo.nodes[i]);
    for (int i = 0; i < hi.nodes.size(); ++i)
        s_hi += hi.weights[i] * f(mid + hw * hi.nodes[i]);
    s_lo *= hw;
    s_hi *= hw;
    err = std::abs(s_hi - s_lo);
    return s_hi;
}

} // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth)
{
    if (a == b)
        return 0.0;
    static const QuadratureRule lo = gauss_legendre(15);
    static const QuadratureRule hi = gauss_legendre(31);

    double err0 = 0.0;
    double whole = panel_estimate(f, a, b, lo, hi, err0);
    double total = 0.0;
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double val = panel_estimate(f, p.a, p.b, lo, hi, err);
        const double tol = rel_tol * std::abs(whole) * (p.b - p.a) / (b - a) + abs_tol;
        if (err <= tol || p.depth >= max_depth) {
            total += val;
        } else {
            const double mid = 0.5 * (p.a + p.b);
            stack.push_back({p.a, mid, p.depth + 1});
            stack.push_back({mid, p.b, p.depth + 1});
        }
    }
    return total;
}

Eigen::VectorXd chebyshev_coefficients(const Eigen::VectorXd& values_at_lobatto)
{
    const int K = int(values_at_lobatto.size()) - 1;
    if (K < 1)
        throw std::invalid_argument("chebyshev_coefficients: need >= 2 samples");
    Eigen::VectorXd d(K + 1);
    for (int m = 0; m <= K; ++m) {
        double sum = 0.5 * values_at_lobatto[0];
        for (int k = 1; k < K; ++k)
            sum += values_at_lobatto[k] * std::cos(m * kPi * k / K);
        sum += 0.5 * values_at_lobatto[K] * std::cos(m * kPi);
        d[m] = 2.0 * sum / K;
    }
    d[0] *= 0.5;
    d[K] *= 0.5;
    return d;
}

Eigen::VectorXd integrate_to_right_endpoint(const Eigen::VectorXd& values, double R)
{
    const int n = int(values.size());
    const int K = n - 1;
    // Samples are on r_k = R(1 - cos(pi k/K))/2, i.e. x_k = cos(pi k/K) in the
    // standard Lobatto order after the substitution r = R(1-x)/2.
    const Eigen::VectorXd d = chebyshev_coefficients(values);
    // Antiderivative P = sum_m b_m T_m with P' = sum_m d_m T_m:
    //   b_1 = d_0 - d_2/2,  b_m = (d_{m-1} - d_{m+1})/(2m)  (m >= 2).
    Eigen::VectorXd b = Eigen::VectorXd::Zero(K + 2);
    auto dd = [&](int j) { return (j >= 0 && j <= K) ? d[j] : 0.0; };
    b[1] = dd(0) - 0.5 * dd(2);
    for (int m = 2; m <= K + 1; ++m)
        b[m] = (dd(m - 1) - dd(m + 1)) / (2.0 * m);
    // F(r_k) = (R/2) * (P(x_k) - P(-1)); evaluate T_m at x_k by cosines.
    double p_at_minus1 = 0.0;
    for (int m = 1; m <= K + 1; ++m)
        p_at_minus1 += b[m] * ((m % 2 == 0) ? 1.0 : -1.0);
    Eigen::VectorXd out(n);
    for (int k = 0; k <= K; ++k) {
        const double theta = kPi * k / K;
        double p = 0.0;
        for (int m = 1; m <= K + 1; ++m)
            p += b[m] * std::cos(m * theta);
        out[k] = 0.5 * R * (p - p_at_minus1);
    }
    return out;
}

PchipInterpolant::PchipInterpolant(Eigen::VectorXd x, Eigen::VectorXd y)
    : x_(std::move(x)), y_(std::move(y))
{
    const int n = int(x_.size());
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("PchipInterpolant: need >= 2 matching samples");
    slope_.resize(n);
    Eigen::VectorXd h(n - 1), delta(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        h[i] = x_[i + 1] - x_[i];
        if (h[i] <= 0.0)
            throw std::invalid_argument("PchipInterpolant: abscissae must ascend");
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
        return;
    }
    for (int i = 1; i < n - 1; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided three-point endpoint slopes, clamped to preserve monotonicity.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    slope_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double PchipInterpolant::operator()(double t) const
{
    const int n = int(x_.size());
    if (t <= x_[0])
        return y_[0];
    if (t >= x_[n - 1])
        return y_[n - 1];
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (x_[mid] <= t ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double u = (t - x_[lo]) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return h00 * y_[lo] + h10 * h * slope_[lo] + h01 * y_[lo + 1] + h11 * h * slope_[lo + 1];
}

} // namespace aggstat

#include "doctest.h"

#include "aggstat/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace aggstat;

TEST_SUITE("quadrature")
{
    TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly")
    {
        for (int n : {2, 5, 8, 16}) {
            QuadratureRule rule = gauss_legendre(n);
            for (int k = 0; k <= 2 * n - 1; ++k) {
                double sum = 0.0;
                for (int i = 0; i < n; ++i)
                    sum += rule.weights[i] * std::pow(rule.nodes[i], k);
                const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
                CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
            }
        }
    }

    TEST_CASE("gauss-legendre on [a,b]")
    {
        QuadratureRule rule = gauss_legendre(24, 0.0, 2.0);
        double sum = 0.0;
        for (int i = 0; i < 24; ++i)
            sum += rule.weights[i] * std::exp(rule.nodes[i]);
        CHECK(sum == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
    }

    TEST_CASE("clenshaw-curtis endpoints, positivity, polynomial exactness")
    {
        QuadratureRule rule = clenshaw_curtis(17, 0.0, 3.0);
        CHECK(rule.nodes[0] == 0.0);
        CHECK(rule.nodes[16] == 3.0);
        for (int i = 1; i < 17; ++i) {
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
            CHECK(rule.weights[i] > 0.0);
        }
        CHECK(rule.weights[0] > 0.0);
        for (int k = 0; k <= 16; ++k) {
            double sum = 0.0;
            for (int i = 0; i < 17; ++i)
                sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(sum == doctest::Approx(std::pow(3.0, k + 1.0) / (k + 1)).epsilon(1e-12));
        }
    }

    TEST_CASE("adaptive integrator reaches requested accuracy")
    {
        const double got = adaptive_integrate(
            [](double x) { return std::exp(-0.5 * x * x); }, 0.0, 40.0, 1e-13);
        CHECK(got == doctest::Approx(std::sqrt(0.5 * std::numbers::pi)).epsilon(1e-12));
        CHECK(adaptive_integrate([](double x) { return x; }, 1.0, 1.0) == 0.0);
    }

    TEST_CASE("tail integrals of chebyshev interpolants")
    {
        const double R = 2.5;
        const int n = 33;
        QuadratureRule rule = clenshaw_curtis(n, 0.0, R);

        Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
        Eigen::VectorXd tail = integrate_to_right_endpoint(ones, R);
        for (int k = 0; k < n; ++k)
            CHECK(tail[k] == doctest::Approx(R - rule.nodes[k]).epsilon(1e-13));

        Eigen::VectorXd lin = rule.nodes;
        tail = integrate_to_right_endpoint(lin, R);
        for (int k = 0; k < n; ++k)
            CHECK(tail[k]
                  == doctest::Approx(0.5 * (R * R - lin[k] * lin[k])).epsilon(1e-13));

        Eigen::VectorXd smooth(n);
        for (int k = 0; k < n; ++k)
            smooth[k] = std::cos(rule.nodes[k]);
        tail = integrate_to_right_endpoint(smooth, R);
        for (int k = 0; k < n; ++k)
            CHECK(tail[k] == doctest::Approx(std::sin(R) - std::sin(rule.nodes[k])).epsilon(1e-12));
    }

    TEST_CASE("pchip respects the data range and hits knots")
    {
        Eigen::VectorXd x(5), y(5);
        x << 0.0, 1.0, 2.0, 3.0, 4.0;
        y << 1.0, 0.8, 0.1, 0.05, 0.0;
        PchipInterpolant interp(x, y);
        for (int i = 0; i < 5; ++i)
            CHECK(interp(x[i]) == y[i]);
        double prev = interp(0.0);
        for (double t = 0.01; t <= 4.0; t += 0.01) {
            const double v = interp(t);
            CHECK(v >= 0.0);
            CHECK(v <= prev + 1e-14); // monotone data stays monotone
            prev = v;
        }
        CHECK(interp(-1.0) == y[0]);
        CHECK(interp(9.0) == y[4]);
    }
}

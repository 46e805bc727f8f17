#include <gtest/gtest.h>

#include "ruij/errors.hpp"
#include "ruij/quadrature.hpp"

using namespace ruij;

TEST(Quadrature, SchemeNames)
{
    for (Scheme s : {Scheme::AdaptiveGauss, Scheme::TanhSinh, Scheme::MonteCarlo, Scheme::Trapezoid})
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_THROW(parse_scheme("simpson"), Error);
}

TEST(Quadrature, SpecValidation)
{
    QuadratureSpec q;
    EXPECT_NO_THROW(q.check());
    q.tolerance = 0.0;
    EXPECT_THROW(q.check(), Error);
    q = {};
    q.max_nodes = 3;
    EXPECT_THROW(q.check(), Error);
}

TEST(Quadrature, TruncationRadius)
{
    const double r = truncation_radius(2.0, 1.0, 1e-10);
    EXPECT_NEAR(std::exp(-2.0 * r) / 2.0, 1e-11, 1e-13);
    EXPECT_THROW(truncation_radius(0.0, 1.0, 1e-10), Error);
}

// int exp(-pi x^2 + 2 pi i k x) dx = exp(-pi k^2)
TEST(Quadrature, GaussianFourierAllSchemes)
{
    const double k = 0.7;
    const Integrand1D f = [k](double x) { return std::exp(cplx(-pi * x * x, two_pi * k * x)); };
    const double exact = std::exp(-pi * k * k);
    for (Scheme s : {Scheme::AdaptiveGauss, Scheme::TanhSinh, Scheme::Trapezoid}) {
        QuadratureSpec q;
        q.scheme = s;
        q.tolerance = 1e-11;
        const IntegralResult r = integrate_1d(f, q, Envelope{3.0, 1.0, 0.0, k});
        EXPECT_NEAR(std::abs(r.value - exact), 0.0, 1e-10) << to_string(s);
        EXPECT_GT(r.nodes_used, 0);
    }
}

TEST(Quadrature, IntervalAndGradedRule)
{
    const auto r = integrate_interval([](double x) { return cplx(std::sqrt(x), 0.0); }, 0.0, 1.0, 1e-12, 100000);
    EXPECT_NEAR(r.value.real(), 2.0 / 3.0, 1e-11);

    const NodeRule rule = graded_rule(-3.0, 3.0, {0.0}, 1e-6, 0.5);
    double sum = 0.0, moment = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i];
        moment += rule.weights[i] * std::abs(rule.nodes[i]);
    }
    EXPECT_NEAR(sum, 6.0, 1e-12);
    EXPECT_NEAR(moment, 9.0, 1e-12);
}

TEST(Quadrature, MultiDimensional)
{
    QuadratureSpec q;
    q.tolerance = 1e-9;
    const auto r = integrate_nd(
        [](const std::vector<double>& x) { return cplx(std::exp(-pi * (x[0] * x[0] + x[1] * x[1])), 0.0); }, 2, q,
        Envelope{3.0, 1.0, 0.0, 0.0});
    EXPECT_NEAR(r.value.real(), 1.0, 1e-8);
    EXPECT_THROW(integrate_nd([](const std::vector<double>&) { return cplx(1.0); }, 9, q), Error);
}

TEST(Quadrature, TrapezoidErrorEstimate)
{
    const Envelope env{3.0, 1.0, 0.0, 0.0};
    const TrapezoidPlan plan = plan_trapezoid(0.5, env, 1e-12);
    const auto r = trapezoid_1d([](double x) { return cplx(1.0 / std::cosh(pi * x), 0.0); }, plan);
    EXPECT_NEAR(r.value.real(), 1.0, 1e-12);
    EXPECT_LT(r.error_estimate, 1e-10);
    // A cancelling integral is judged against the size of its terms.
    EXPECT_LE(trapezoid_error(1e-12, 2e-12, 1.0), 1e-11);
    EXPECT_THROW(plan_trapezoid(0.0, env, 1e-10), Error);
}

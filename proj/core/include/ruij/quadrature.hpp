#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ruij/types.hpp"

namespace ruij {

enum class Scheme { AdaptiveGauss, TanhSinh, MonteCarlo, Trapezoid };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct QuadratureSpec {
    Scheme scheme = Scheme::AdaptiveGauss;
    double tolerance = 1e-10;
    long max_nodes = 400000;
    std::optional<double> truncation_radius; // empty means auto
    std::uint64_t seed = 20240601;

    void check() const;
};

struct IntegralResult {
    cplx value;
    double error_estimate = 0.0;
    long nodes_used = 0;
    double truncation_radius_used = 0.0;
};

// Declared behaviour of an integrand on the real line: |f(x)| is at most
// amplitude * exp(-decay_rate * |x - center|), and it may carry an
// oscillating factor e^{2πi frequency x}.
struct Envelope {
    double decay_rate = 1.0;
    double amplitude = 1.0;
    double center = 0.0;
    double frequency = 0.0;
};

// R with amplitude * exp(-rate R) / rate <= tol / 10.
double truncation_radius(double decay_rate, double amplitude, double tol);

using Integrand1D = std::function<cplx(double)>;
using IntegrandND = std::function<cplx(const std::vector<double>&)>;

IntegralResult integrate_1d(const Integrand1D& f, const QuadratureSpec& spec, const Envelope& env = {});

// Finite interval [a, b] with the adaptive Gauss-Kronrod rule.
IntegralResult integrate_interval(const Integrand1D& f, double a, double b, double tol, long max_nodes,
                                  int initial_panels = 1);

IntegralResult integrate_nd(const IntegrandND& f, int dims, const QuadratureSpec& spec,
                            const Envelope& env = {});

// Step and radius for the trapezoid rule on the real line. The integrand is
// assumed analytic in |Im x| < strip_halfwidth; the step keeps the aliasing
// error of the oscillating factor below tol.
struct TrapezoidPlan {
    double h;
    double radius;
};

TrapezoidPlan plan_trapezoid(double strip_halfwidth, const Envelope& env, double tol);

// Trapezoid rule on the lattice {center + k h : |k h| <= radius}; the error
// estimate comes from comparing with the sub-lattice of step 2h.
IntegralResult trapezoid_1d(const Integrand1D& f, const TrapezoidPlan& plan, double center = 0.0);

// Fixed composite rule on [a, b] built from 15-point Kronrod panels no wider
// than max_panel, refined geometrically down to `finest` on both sides of every
// breakpoint. Used where a tensor product of one-dimensional rules is needed.
struct NodeRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

NodeRule graded_rule(double a, double b, std::vector<double> breakpoints, double finest, double max_panel);

// Combines the fine/coarse trapezoid sums into an error estimate.
double trapezoid_error(cplx fine, cplx coarse, double abs_sum);

} // namespace ruij

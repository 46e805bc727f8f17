#pragma once

#include <string>
#include <vector>

#include "ruij/kernels.hpp"
#include "ruij/quadrature.hpp"
#include "ruij/report.hpp"
#include "ruij/types.hpp"

namespace ruij {

// (1/d_n) e^{2 pi i (sum lambda - sum gamma) x} prod_{i,j} Khat(lambda_i - gamma_j)
// with |gamma| = n and |lambda| = n (J) or n + 1 (I).
cplx closed_form_J(const Tuple& gamma, const Tuple& lambda, cplx x, const KernelContext& ctx);
cplx closed_form_I(const Tuple& gamma, const Tuple& lambda, cplx x, const KernelContext& ctx);

// int e^{2 pi i lambda x} K(x) dx by quadrature, and its relative deviation
// from Khat(lambda) / d_1; needs |Im lambda| < nu_g / 2.
IntegralResult kernel_fourier(cplx lambda, const KernelContext& ctx, const QuadratureSpec& spec);
VerificationReport kernel_fourier_check(cplx lambda, const KernelContext& ctx, const QuadratureSpec& spec);

// Equal imaginary parts inside each tuple and |Im(lambda_i - gamma_j)| < nu_g/2;
// ConditionViolation otherwise.
void check_integral_conditions(const Tuple& gamma, const Tuple& lambda, const Params& p);

// int mu(x_n) Psi_gamma(-x_n) K(x, x_n) Psi_lambda(x_n) dx_n for n = 1, 2.
IntegralResult integral_J(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                          const QuadratureSpec& spec);

// int mu(x_n) Psi_gamma(-x_n) Psi_lambda(x_n, x) dx_n for n = 0, 1, 2 (|lambda| = n + 1).
IntegralResult integral_I(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                          const QuadratureSpec& spec);

// Numeric integral against its closed form; relative residual.
VerificationReport integral_J_check(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                    const QuadratureSpec& spec);
VerificationReport integral_I_check(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                    const QuadratureSpec& spec);

// I(gamma_n, lambda_{n+1}; x) = Khat(lambda_{n+1}, gamma_n) e^{2 pi i lambda_{n+1} x} J(gamma_n, lambda_n; x),
// both integrals numeric.
VerificationReport recurrence_check_I(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                      const QuadratureSpec& spec);

// J(gamma_n, lambda_n; x) = (d_{n-1}/d_n) Khat(lambda_n, gamma_n) e^{2 pi i lambda_n x}
//                           I(-lambda_{n-1}, -gamma_n; x), both integrals numeric.
VerificationReport recurrence_check_J(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                      const QuadratureSpec& spec);

// Regularised scalar product with the weight e^{2 pi (eps - ghat/2)(sum x_n - n x)}.
cplx closed_form_pairing(const Tuple& lambda_prime, const Tuple& lambda, double x, double eps,
                         const KernelContext& ctx);
// Numeric value by quadrature (n = 1).
IntegralResult regularized_pairing(const Tuple& lambda_prime, const Tuple& lambda, double x, double eps,
                                   const KernelContext& ctx, const QuadratureSpec& spec);

struct RegularizationSchedule {
    std::vector<double> x_values{10.0, 20.0, 40.0};
    std::vector<double> eps_values{1e-2, 1e-3, 1e-4};

    // ScheduleTooShort below three entries; ConditionViolation unless x increases,
    // eps decreases and every eps lies in (0, nu_g / 2).
    void check(const Params& p) const;
};

// Catalog of smooth, effectively compactly supported test functions on the
// real line; in n variables the product over coordinates is used, which is
// symmetric.
struct TestFunction {
    enum class Kind { Gaussian, CosineGaussian };
    Kind kind = Kind::Gaussian;
    double center = 0.0;
    double width = 0.3;
    double frequency = 0.0;

    cplx operator()(double t) const;
    cplx operator()(const Tuple& t) const;
    // Beyond this distance from the center |phi| < 1e-16.
    double support_radius() const;
    std::string name() const;

    static TestFunction gaussian(double center, double width);
    static TestFunction cosine_gaussian(double center, double width, double frequency);
    static std::vector<TestFunction> catalog();
};

// Integrates the closed-form pairing against mu_hat(lambda') phi(lambda') on
// every (x, eps) of the schedule (n = 1, 2), extrapolates eps -> 0 at the
// largest x and compares with phi(lambda). Passes when the deviations along
// the diagonal of the schedule decrease and the extrapolated limit lies
// within `tolerance` of phi(lambda). A non-positive tolerance selects 1e-6
// off the support of phi, otherwise 1e-3 (n = 1) or 5e-2 (n = 2).
VerificationReport delta_sequence_test(const TestFunction& phi, const Tuple& lambda,
                                       const RegularizationSchedule& schedule, const KernelContext& ctx,
                                       const QuadratureSpec& spec, double tolerance = 0.0);

// (T phi)(x) = int mu_hat(lambda) Psi_lambda(x) phi(lambda) dlambda and
// (S f)(lambda) = int mu(x) Psi_lambda(x) f(x) dx, for n = 1, 2.
cplx transform_T(const TestFunction& phi, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec);
cplx transform_S(const TestFunction& f, const Tuple& lambda, const KernelContext& ctx, const QuadratureSpec& spec);

// |T phi|_mu^2 / |phi|_mu_hat^2 - 1 for n = 1, 2 (real parameters). The
// measured ratio is reported as the normalisation constant c_n.
VerificationReport plancherel_check(const TestFunction& phi, int n, const KernelContext& ctx,
                                    const QuadratureSpec& spec);

// max_k |S(T phi)(lambda_k) - phi(-lambda_k)| / max|phi| over the given points (n = 1).
VerificationReport inversion_check(const TestFunction& phi, const std::vector<double>& points,
                                   const KernelContext& ctx, const QuadratureSpec& spec);

} // namespace ruij

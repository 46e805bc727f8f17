#pragma once

#include <functional>
#include <vector>

#include "ruij/kernels.hpp"
#include "ruij/quadrature.hpp"
#include "ruij/report.hpp"
#include "ruij/types.hpp"

namespace ruij {

using TupleFunction = std::function<cplx(const Tuple&)>;

// Shift of the coordinates in `subset` by `shift`; the plan is feasible when
// every shifted coordinate keeps at least `contour_margin` to the kernel pole
// lines.
struct ShiftPlan {
    std::vector<int> subset;
    cplx shift;
    double contour_margin = 0.0;

    // ContourViolation unless |Im(shift)| + max|Im x| < strip - contour_margin.
    void check(const Tuple& x, double strip) const;
};

// M_r f at x: sum over |I| = r of the sh-ratio coefficients times f shifted by
// -i omega1 on I. With ctx.dual_context() this is the dual operator acting on
// spectral variables (shift -i/omega2, coupling ghat*).
cplx macdonald_apply(int r, const TupleFunction& f, const Tuple& x, const KernelContext& ctx);

// sum_r lambda^{n-r} (-1)^r M_r f at x.
cplx macdonald_generating(cplx lambda, const TupleFunction& f, const Tuple& x, const KernelContext& ctx);

// Residual |M_n(lambda) Psi - prod_j (lambda - e^{2 pi lambda_j omega1}) Psi| / |Psi|.
VerificationReport macdonald_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx lambda_param,
                                         const KernelContext& ctx, const QuadratureSpec& spec);

// Same relation for the dual operators acting on the spectral variables, with
// eigenvalue prod_j (x - e^{2 pi x_j / omega2}); Psi is continued in lambda
// through its coordinate representation.
VerificationReport dual_macdonald_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx x_param,
                                              const KernelContext& ctx, const QuadratureSpec& spec);

// Bounds on a test function used to lay out the quadrature lattice.
struct FunctionBounds {
    double strip = 1e9;     // analytic in |Im y| < strip
    double frequency = 0.0; // dominant oscillation
    double radius = 8.0;    // |f| negligible beyond this distance from 0
};

// [Q_n(lambda) f](x) for n = 1, 2 by lattice quadrature.
IntegralResult baxterQ_apply(cplx lambda, const TupleFunction& f, const Tuple& x, const KernelContext& ctx,
                             const QuadratureSpec& spec, const FunctionBounds& bounds = {});

// Relative residual of Q_n(lambda) Psi = prod_j Khat(lambda - lambda_j) Psi.
// With ctx.dual_context() and the roles of lambda_n and x_n exchanged this is
// the dual relation with eigenvalue prod_j K(x - x_j).
VerificationReport baxter_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx lambda_param,
                                      const KernelContext& ctx, const QuadratureSpec& spec);
VerificationReport dual_baxter_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx x_param,
                                           const KernelContext& ctx, const QuadratureSpec& spec);

// Q(a) Q(b) f - Q(b) Q(a) f at n = 1 on a nested lattice; relative residual.
VerificationReport baxter_commutativity_check(cplx a, cplx b, const TupleFunction& f, cplx x,
                                              const KernelContext& ctx, const QuadratureSpec& spec,
                                              const FunctionBounds& bounds = {});

// Residual of sqrt(mu) M_r (1/sqrt(mu)) f against the symmetric Hamiltonian
// H_r f, both evaluated at x. Square roots are continued along the shift
// path from their principal values at real x.
VerificationReport gauge_conjugation_check(int r, const TupleFunction& f, const Tuple& x,
                                           const KernelContext& ctx);

} // namespace ruij

#pragma once

#include "ruij/kernels.hpp"
#include "ruij/quadrature.hpp"
#include "ruij/types.hpp"

namespace ruij {

// Spectral tuple; every entry carries the same imaginary part plus an optional
// common shift i * uniform_imag_shift.
struct SpectralVector {
    Tuple values;
    double uniform_imag_shift = 0.0;

    Tuple effective() const;
    // ConditionViolation unless the imaginary parts agree and the shift is
    // below nu_g / 2.
    void check(const Params& p) const;
};

struct PsiResult {
    cplx value;
    double error_estimate = 0.0;
    long nodes = 0;
};

// Tolerances used when the caller does not supply one: 1e-9 (n = 2),
// 1e-7 (n = 3), 1e-2 (n = 4, Monte Carlo).
QuadratureSpec default_psi_spec(int n);

// Kernel of the raising operator from n-1 to n particles.
cplx lambda_kernel(const Tuple& x, const Tuple& y, cplx lambda, const KernelContext& ctx);

// Psi_lambda(x) from the recursive integral representation. Complex x and
// unequal imaginary parts of lambda are accepted as long as every kernel strip
// is respected and the integrals converge (this is the analytic continuation
// used by the difference operators); otherwise ContourViolation.
PsiResult psi_eval(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec);

cplx psi(const SpectralVector& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec);
cplx psi(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec);

// The same function from the dual representation: coordinates and spectral
// variables swap roles and the parameters are dualised.
PsiResult psi_dual_eval(const Tuple& lambda, const Tuple& x, const KernelContext& ctx,
                        const QuadratureSpec& spec);
cplx psi_dual(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec);

} // namespace ruij

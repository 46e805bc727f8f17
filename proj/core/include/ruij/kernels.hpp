#pragma once

#include "ruij/params.hpp"
#include "ruij/types.hpp"

namespace ruij {

// Parameters together with their dual triple, computed once.
class KernelContext {
public:
    explicit KernelContext(const Params& p);

    const Params& params() const { return params_; }
    const Params& dual() const { return dual_; }
    KernelContext dual_context() const { return KernelContext(dual_); }

    // Half-width of the strip |Im x| < Re(g*)/2 where K is analytic.
    double kernel_strip() const;
    // Distance kept from the kernel pole lines, 1e-8 Re(g*).
    double kernel_guard() const;

private:
    Params params_;
    Params dual_;
};

// K(x) = 1 / (S2(ix + g*/2) S2(-ix + g*/2)); StripViolation outside the strip.
cplx kernel_K(cplx x, const KernelContext& ctx);
cplx log_kernel_K(cplx x, const KernelContext& ctx);

// mu(x) = S2(ix) / S2(ix + g); PoleProximity at the poles of the ratio.
cplx measure_mu(cplx x, const KernelContext& ctx);

// mu(x) mu(-x), the two-point weight that enters every product measure.
cplx measure_pair(cplx x, const KernelContext& ctx);

cplx hat_K(cplx lambda, const KernelContext& ctx);
cplx hat_mu(cplx lambda, const KernelContext& ctx);

// prod_{i,j} K(x_i - y_j)
cplx product_K(const Tuple& x, const Tuple& y, const KernelContext& ctx);
// (1/n!) prod_{i != j} mu(x_i - x_j); CoincidentPoints for repeated entries.
cplx product_mu(const Tuple& x, const KernelContext& ctx);
cplx product_hat_K(const Tuple& l, const Tuple& g, const KernelContext& ctx);
cplx product_hat_mu(const Tuple& l, const KernelContext& ctx);

// d_n = [sqrt(w1 w2) S2(g)]^{-n}
cplx norm_d(int n, const KernelContext& ctx);

} // namespace ruij

#include "ruij/kernels.hpp"

#include <cmath>
#include <sstream>

#include "ruij/double_sine.hpp"
#include "ruij/errors.hpp"

namespace ruij {

namespace {

constexpr double coincidence_guard = 1e-10;

bool is_real(const Params& p)
{
    return p.omega1.imag() == 0.0 && p.omega2.imag() == 0.0 && p.g.imag() == 0.0;
}

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void check_distinct(const Tuple& x)
{
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) < coincidence_guard) {
                std::ostringstream os;
                os << "entries " << i << " and " << j << " coincide";
                throw Error(ErrorKind::CoincidentPoints, os.str());
            }
}

cplx log_kernel(cplx x, const Params& p)
{
    const double strip = 0.5 * p.gstar.real();
    if (!(std::abs(x.imag()) < strip - 1e-8 * p.gstar.real())) {
        std::ostringstream os;
        os << "|Im x| = " << std::abs(x.imag()) << " not inside kernel strip " << strip;
        throw Error(ErrorKind::StripViolation, os.str());
    }
    const Periods w = p.periods();
    return -log_s2(I * x + 0.5 * p.gstar, w) - log_s2(-I * x + 0.5 * p.gstar, w);
}

cplx mu(cplx x, const Params& p)
{
    const Periods w = p.periods();
    const S2Result num = s2_eval(I * x, w);
    if (num.is_zero) return 0.0;
    const S2Result den = s2_eval(I * x + p.g, w);
    if (den.is_zero) throw Error(ErrorKind::PoleProximity, "mu evaluated at a pole");
    return std::exp(num.log_value - den.log_value);
}

cplx pair(cplx x, const Params& p)
{
    if (std::abs(x) < coincidence_guard) return 0.0;
    const cplx a = mu(x, p);
    if (is_real(p) && x.imag() == 0.0) return std::norm(a);
    return a * mu(-x, p);
}

cplx product_measure(const Tuple& x, const Params& p)
{
    check_distinct(x);
    const double inv_fact = 1.0 / factorial(int(x.size()));
    if (is_real(p)) {
        bool real_args = true;
        for (const auto& v : x) real_args = real_args && v.imag() == 0.0;
        if (real_args) {
            // mu(-x) = conj(mu(x)) here, so each unordered pair contributes |mu|^2.
            double prod = inv_fact;
            for (size_t i = 0; i < x.size(); ++i)
                for (size_t j = i + 1; j < x.size(); ++j) prod *= std::norm(mu(x[i] - x[j], p));
            return prod;
        }
    }
    cplx log_sum = std::log(inv_fact);
    const Periods w = p.periods();
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) {
            if (i == j) continue;
            const cplx u = x[i] - x[j];
            const S2Result den = s2_eval(I * u + p.g, w);
            if (den.is_zero) throw Error(ErrorKind::PoleProximity, "mu evaluated at a pole");
            log_sum += log_s2(I * u, w) - den.log_value;
        }
    return std::exp(log_sum);
}

cplx product_kernel(const Tuple& x, const Tuple& y, const Params& p)
{
    cplx log_sum = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) {
            try {
                log_sum += log_kernel(x[i] - y[j], p);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::StripViolation) throw;
                std::ostringstream os;
                os << "pair (" << i << ", " << j << "): " << e.what();
                throw Error(ErrorKind::StripViolation, os.str());
            }
        }
    return std::exp(log_sum);
}

} // namespace

KernelContext::KernelContext(const Params& p) : params_(p), dual_(dualize(p)) {}

double KernelContext::kernel_strip() const { return 0.5 * params_.gstar.real(); }

double KernelContext::kernel_guard() const { return 1e-8 * params_.gstar.real(); }

cplx log_kernel_K(cplx x, const KernelContext& ctx) { return log_kernel(x, ctx.params()); }

cplx kernel_K(cplx x, const KernelContext& ctx) { return std::exp(log_kernel(x, ctx.params())); }

cplx measure_mu(cplx x, const KernelContext& ctx) { return mu(x, ctx.params()); }

cplx measure_pair(cplx x, const KernelContext& ctx) { return pair(x, ctx.params()); }

cplx hat_K(cplx lambda, const KernelContext& ctx) { return std::exp(log_kernel(lambda, ctx.dual())); }

cplx hat_mu(cplx lambda, const KernelContext& ctx) { return mu(lambda, ctx.dual()); }

cplx product_K(const Tuple& x, const Tuple& y, const KernelContext& ctx)
{
    return product_kernel(x, y, ctx.params());
}

cplx product_mu(const Tuple& x, const KernelContext& ctx) { return product_measure(x, ctx.params()); }

cplx product_hat_K(const Tuple& l, const Tuple& g, const KernelContext& ctx)
{
    return product_kernel(l, g, ctx.dual());
}

cplx product_hat_mu(const Tuple& l, const KernelContext& ctx) { return product_measure(l, ctx.dual()); }

cplx norm_d(int n, const KernelContext& ctx)
{
    const Params& p = ctx.params();
    const cplx base = std::sqrt(p.omega1 * p.omega2) * s2(p.g, p.periods());
    return std::pow(base, -double(n));
}

} // namespace ruij

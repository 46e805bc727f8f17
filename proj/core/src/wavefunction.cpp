#include "ruij/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <sstream>

#include "ruij/errors.hpp"
#include "ruij/lattice.hpp"
#include "ruij/numeric.hpp"

namespace ruij {

namespace {

double max_imag(const Tuple& x)
{
    double m = 0.0;
    for (const auto& v : x) m = std::max(m, std::abs(v.imag()));
    return m;
}

double mean_real(const Tuple& x)
{
    double s = 0.0;
    for (const auto& v : x) s += v.real();
    return s / double(x.size());
}

double spread(const Tuple& x)
{
    double lo = x[0].real(), hi = x[0].real();
    for (const auto& v : x) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    return hi - lo;
}

void fail_if_divergent(double rate, const char* what)
{
    if (!(rate > 0.0)) {
        std::ostringstream os;
        os << what << ": imaginary spectral separation leaves no decay";
        throw Error(ErrorKind::ContourViolation, os.str());
    }
}

double kernel_strip_left(const KernelContext& ctx, const Tuple& x)
{
    const double d = ctx.kernel_strip() - max_imag(x);
    if (!(d > 0.0))
        throw Error(ErrorKind::ContourViolation, "shifted coordinates leave the kernel strip");
    return d;
}

// Two particles: one-dimensional trapezoid sum on y = c + k h, walked outwards
// until the kernel envelope is negligible.
PsiResult psi2_direct(const Tuple& l, const Tuple& x, const KernelContext& ctx, double tol)
{
    const Params& p = ctx.params();
    const cplx dl = l[0] - l[1];
    const double rate = two_pi * (p.nu_g - std::abs(dl.imag()));
    fail_if_divergent(rate, "two-particle wave function");
    const double h = lattice_step(kernel_strip_left(ctx, x), dl.real(), tol);
    const double c = mean_real(x);
    const double reach = 0.5 * spread(x);

    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    long nodes = 0;
    double tail = 0.0;
    auto term = [&](int k) {
        const double y = c + k * h;
        const cplx t = kernel_K(x[0] - y, ctx) * kernel_K(x[1] - y, ctx) * std::exp(two_pi * I * dl * y);
        ++nodes;
        return t;
    };
    const cplx t0 = term(0);
    fine.add(t0);
    coarse.add(t0);
    abs_sum += std::abs(t0);
    for (int sign : {1, -1}) {
        int quiet = 0;
        for (int k = 1;; ++k) {
            const cplx t = term(sign * k);
            fine.add(t);
            if ((k & 1) == 0) coarse.add(t);
            const double at = std::abs(t);
            abs_sum += at;
            if (k * h > reach && at < 1e-3 * tol * abs_sum) {
                if (++quiet >= 3) {
                    tail += at / (1.0 - std::exp(-rate * h));
                    break;
                }
            } else {
                quiet = 0;
            }
            if (nodes > 400000) throw Error(ErrorKind::QuadratureFailure, "two-particle sum did not decay");
        }
    }
    const cplx pre = norm_d(1, ctx) * std::exp(two_pi * I * l[1] * (x[0] + x[1]));
    const cplx vf = fine.value() * h;
    const cplx vc = coarse.value() * 2.0 * h;
    const double err = trapezoid_error(vf, vc, abs_sum * h) + tail * h;
    return {pre * vf, std::abs(pre) * err, nodes};
}

struct ThreePlan {
    double h;
    int grid_half; // outer range in lattice steps
    int pad;       // inner reach beyond the outer range
};

ThreePlan plan_three(const Tuple& l, const Tuple& x, const KernelContext& ctx, double tol)
{
    const Params& p = ctx.params();
    const cplx d12 = l[0] - l[1];
    const cplx d23 = l[1] - l[2];
    const double inner_rate = two_pi * (p.nu_g - std::abs(d12.imag()));
    const double outer_rate = two_pi * (p.nu_g - std::abs(d12.imag()) - std::abs(d23.imag()));
    fail_if_divergent(inner_rate, "three-particle wave function");
    fail_if_divergent(outer_rate, "three-particle wave function");
    const double strip = std::min(kernel_strip_left(ctx, x), p.g.real());
    const double h = lattice_step(strip, std::max(std::abs(d12.real()), std::abs(d23.real())), tol);
    const double logt = std::log(10.0 / tol);
    const double outer = 0.5 * spread(x) + logt / outer_rate;
    const int pad = int(std::ceil(logt / inner_rate / h));
    return {h, int(std::ceil(outer / h)), pad};
}

// v(k) = prod_a K(x_a - y_k) e^{-2 pi i lam y_k} over the lattice.
std::vector<cplx> outer_weights(const Lattice& lat, const std::vector<std::vector<cplx>>& cols, cplx lam)
{
    const int half = lat.half();
    std::vector<cplx> v(size_t(2 * half + 1));
    for (int k = -half; k <= half; ++k) {
        cplx t = std::exp(-two_pi * I * lam * lat.node(k));
        for (const auto& c : cols) t *= c[size_t(k + half)];
        v[size_t(k + half)] = t;
    }
    return v;
}

PsiResult psi3_lattice(const Tuple& l, const Tuple& x, const KernelContext& ctx, double tol)
{
    const ThreePlan plan = plan_three(l, x, ctx, tol);
    const Lattice lat(ctx, plan.h, plan.grid_half + plan.pad, plan.pad);
    const LatticeGrid g = lat.psi2_grid(l[0], l[1]);
    std::vector<std::vector<cplx>> cols;
    for (const auto& xa : x) cols.push_back(lat.kernel_column(xa));
    const LatticeSum s = lat.pair_sum(g, outer_weights(lat, cols, l[2]));
    const cplx pre = norm_d(2, ctx) * std::exp(two_pi * I * l[2] * sum(x));
    const double err = trapezoid_error(s.fine, s.coarse, s.abs_sum);
    const long w = 2L * lat.half() + 1;
    return {pre * s.fine, std::abs(pre) * err, w * w * w / 2};
}

PsiResult psi4_monte_carlo(const Tuple& l, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    const Params& p = ctx.params();
    const double tol = std::max(spec.tolerance, 1e-6);
    // Inner layers at a tolerance well below the Monte Carlo noise.
    ThreePlan plan = plan_three({l[0], l[1], l[2]}, x, ctx, 1e-6);
    const double outer_rate = two_pi * (p.nu_g - std::abs((l[2] - l[3]).imag()));
    fail_if_divergent(outer_rate, "four-particle wave function");
    const double box = 0.5 * spread(x) + std::log(10.0 / tol) / outer_rate;
    const int B = int(std::ceil(box / plan.h));
    const Lattice lat(ctx, plan.h, B + 2 * plan.pad, plan.pad);
    const LatticeGrid g = lat.psi2_grid(l[0], l[1]);
    std::vector<std::vector<cplx>> xcols;
    for (const auto& xa : x) xcols.push_back(lat.kernel_column(xa));

    const long samples = std::max<long>(64, std::min<long>(spec.max_nodes, 4096)) & ~1L;
    Rng rng(spec.seed);
    const double h = lat.h();
    const cplx d2 = norm_d(2, ctx);
    std::vector<cplx> vals(static_cast<size_t>(samples));
    std::vector<std::array<int, 3>> idx(static_cast<size_t>(samples));
    for (auto& t : idx)
        for (int& v : t) v = int(std::floor(rng.uniform() * (2 * B + 1))) - B;
    parallel_for(int(samples), [&](int s) {
        const auto& t = idx[size_t(s)];
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
            vals[size_t(s)] = 0.0;
            return;
        }
        std::vector<std::vector<cplx>> cols;
        for (int a : t) cols.push_back(lat.kernel_column(lat.node(a)));
        const LatticeSum inner = lat.pair_sum(g, outer_weights(lat, cols, l[2]));
        const cplx ysum = lat.node(t[0]) + lat.node(t[1]) + lat.node(t[2]);
        const cplx psi3 = d2 * std::exp(two_pi * I * l[2] * ysum) * inner.fine;
        cplx kprod = 1.0;
        for (int a : t)
            for (const auto& c : xcols) kprod *= c[size_t(a + lat.half())];
        const cplx meas = lat.pair(t[0] - t[1]) * lat.pair(t[0] - t[2]) * lat.pair(t[1] - t[2]) / 6.0;
        vals[size_t(s)] = std::exp(-two_pi * I * l[3] * ysum) * kprod * meas * psi3;
    });
    CompensatedSum mean;
    double var = 0.0;
    for (long s = 0; s < samples; s += 2) {
        mean.add(vals[size_t(s)] + vals[size_t(s + 1)]);
        var += std::norm(vals[size_t(s)] - vals[size_t(s + 1)]);
    }
    const double vol = std::pow((2 * B + 1) * h, 3);
    const cplx pre = norm_d(3, ctx) * std::exp(two_pi * I * l[3] * sum(x));
    const cplx value = pre * vol * mean.value() / double(samples);
    const double err = std::abs(pre) * vol * std::sqrt(var) / double(samples);
    return {value, err, samples};
}

} // namespace

Tuple SpectralVector::effective() const
{
    Tuple t = values;
    for (auto& v : t) v += cplx(0.0, uniform_imag_shift);
    return t;
}

void SpectralVector::check(const Params& p) const
{
    for (size_t i = 1; i < values.size(); ++i)
        if (std::abs(values[i].imag() - values[0].imag()) > 1e-14)
            throw Error(ErrorKind::ConditionViolation, "spectral entries must share their imaginary part");
    if (!(std::abs(uniform_imag_shift) < 0.5 * p.nu_g))
        throw Error(ErrorKind::ConditionViolation, "uniform imaginary shift must stay below nu_g / 2");
}

QuadratureSpec default_psi_spec(int n)
{
    QuadratureSpec s;
    s.scheme = Scheme::Trapezoid;
    s.tolerance = n <= 2 ? 1e-9 : (n == 3 ? 1e-7 : 1e-2);
    if (n >= 4) {
        s.scheme = Scheme::MonteCarlo;
        s.max_nodes = 2048;
    }
    return s;
}

cplx lambda_kernel(const Tuple& x, const Tuple& y, cplx lambda, const KernelContext& ctx)
{
    if (y.size() + 1 != x.size()) throw Error(ErrorKind::ShapeMismatch, "raising kernel needs |y| = |x| - 1");
    const int m = int(y.size());
    return norm_d(m, ctx) * std::exp(two_pi * I * lambda * (sum(x) - sum(y))) * product_K(x, y, ctx)
        * product_mu(y, ctx);
}

PsiResult psi_eval(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    spec.check();
    const size_t n = x.size();
    if (lambda.size() != n || n == 0) throw Error(ErrorKind::ShapeMismatch, "lambda and x must have equal size");
    if (n > 4) throw Error(ErrorKind::DimensionTooLarge, "wave function supported for n <= 4");
    if (n == 1) return {std::exp(two_pi * I * lambda[0] * x[0]), 0.0, 0};

    // Psi_lambda(x + a e) = e^{2 pi i a sum(lambda)} Psi_lambda(x): centre the coordinates.
    const double c = mean_real(x);
    Tuple xc = x;
    for (auto& v : xc) v -= c;
    const cplx phase = std::exp(two_pi * I * sum(lambda) * c);

    PsiResult r;
    if (n == 2)
        r = psi2_direct(lambda, xc, ctx, 0.01 * spec.tolerance);
    else if (n == 3)
        r = psi3_lattice(lambda, xc, ctx, 0.01 * spec.tolerance);
    else
        r = psi4_monte_carlo(lambda, xc, ctx, spec);
    r.value *= phase;
    r.error_estimate *= std::abs(phase);
    if (n <= 3 && r.error_estimate > spec.tolerance * std::max(1.0, std::abs(r.value))) {
        std::ostringstream os;
        os << "wave function error estimate " << r.error_estimate << " above tolerance";
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return r;
}

cplx psi(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    return psi_eval(lambda, x, ctx, spec).value;
}

cplx psi(const SpectralVector& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    lambda.check(ctx.params());
    return psi_eval(lambda.effective(), x, ctx, spec).value;
}

PsiResult psi_dual_eval(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    return psi_eval(x, lambda, ctx.dual_context(), spec);
}

cplx psi_dual(const Tuple& lambda, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    return psi_dual_eval(lambda, x, ctx, spec).value;
}

} // namespace ruij

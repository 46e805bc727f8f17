#include "ruij/integrals.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>

#include <Eigen/Dense>

#include "ruij/errors.hpp"
#include "ruij/lattice.hpp"
#include "ruij/numeric.hpp"
#include "ruij/wavefunction.hpp"

namespace ruij {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

VerificationReport make_report(const std::string& check, int n, const KernelContext& ctx)
{
    VerificationReport rep;
    rep.check = check;
    rep.n = n;
    rep.params = describe(ctx.params());
    return rep;
}

Tuple negated(const Tuple& t)
{
    Tuple r = t;
    for (auto& v : r) v = -v;
    return r;
}

double basic_tolerance(int n) { return n <= 1 ? 1e-8 : 1e-5; }

void fail_if_inaccurate(const IntegralResult& r, double tol, const char* what)
{
    if (r.error_estimate > tol * std::max(1.0, std::abs(r.value))) {
        std::ostringstream os;
        os << what << ": error estimate " << r.error_estimate << " above tolerance " << tol;
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
}

// Step, outer half-range and inner padding (in lattice steps) for the
// integrals over x_n with wave functions of spectral tuples gamma, lambda.
// The step follows from tol; outer range and padding cover `range` e-foldings
// of the decay of the outer and inner integrands.
struct OuterPlan {
    double h;
    int outer;
    int pad;
};

OuterPlan plan_outer(const Tuple& gamma, const Tuple& lambda, const KernelContext& ctx, double tol, double range)
{
    const Params& p = ctx.params();
    double sep = 0.0, freq = 0.0;
    for (const auto& l : lambda)
        for (const auto& g : gamma) {
            sep = std::max(sep, std::abs((l - g).imag()));
            freq = std::max(freq, std::abs((l - g).real()));
        }
    for (const Tuple* t : {&gamma, &lambda})
        for (const auto& a : *t)
            for (const auto& b : *t) freq = std::max(freq, std::abs((a - b).real()));
    const double outer_rate = pi * (p.nu_g - 2.0 * sep);
    const double inner_rate = two_pi * p.nu_g;
    if (!(outer_rate > 0.0)) throw Error(ErrorKind::ConditionViolation, "imaginary separation too large");
    const double strip = std::min(ctx.kernel_strip(), p.g.real());
    const double h = lattice_step(strip, freq, tol);
    return {h, int(std::ceil(range / outer_rate / h)), int(std::ceil(range / inner_rate / h))};
}

// One-dimensional integral of e^{2 pi i a u} K(u) over the real line.
IntegralResult kernel_fourier_line(cplx a, const KernelContext& ctx, double tol)
{
    const Params& p = ctx.params();
    const double rate = pi * p.nu_g - two_pi * std::abs(a.imag());
    if (!(rate > 0.0)) throw Error(ErrorKind::ConditionViolation, "kernel integral does not converge");
    const double h = lattice_step(ctx.kernel_strip(), a.real(), tol);
    const int n = int(std::ceil(std::log(10.0 / tol) / rate / h));
    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (int k = -n; k <= n; ++k) {
        const double u = k * h;
        const cplx t = std::exp(two_pi * I * a * u) * kernel_K(u, ctx);
        fine.add(t);
        if ((k & 1) == 0) coarse.add(t);
        abs_sum += std::abs(t);
    }
    const cplx vf = h * fine.value(), vc = 2.0 * h * coarse.value();
    return {vf, trapezoid_error(vf, vc, h * abs_sum), 2L * n + 1, n * h};
}

IntegralResult J1(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx, double tol)
{
    // y = x + u, K(-u) = K(u)
    const cplx a = lambda[0] - gamma[0];
    IntegralResult r = kernel_fourier_line(a, ctx, tol);
    const cplx ph = std::exp(two_pi * I * a * x);
    r.value *= ph;
    r.error_estimate *= std::abs(ph);
    return r;
}

using LatticeIntegral = IntegralResult (*)(const Tuple&, const Tuple&, double, const KernelContext&, double, double);

// The fine and coarse sums share the truncation of the ranges, so it is
// measured separately: a pass on a range shorter by ln 100 e-foldings differs
// from the full one by about 100 times its truncation error (30 is used).
// When cancellation leaves that above 10 tol relative to the value, the
// range is extended by the missing factor.
IntegralResult refine_range(LatticeIntegral f, const Tuple& gamma, const Tuple& lambda, double x,
                            const KernelContext& ctx, double tol)
{
    const double shorter = std::log(100.0);
    double range = std::log(10.0 / tol);
    IntegralResult r = f(gamma, lambda, x, ctx, tol, range);
    const IntegralResult s = f(gamma, lambda, x, ctx, tol, range - shorter);
    double tail = std::abs(r.value - s.value) / 30.0;
    long nodes = r.nodes_used + s.nodes_used;
    const double target = 10.0 * tol * std::abs(r.value);
    if (tail > target && target > 0.0) {
        const double extra = std::log(2.0 * tail / target);
        range += extra;
        r = f(gamma, lambda, x, ctx, tol, range);
        tail *= std::exp(-extra);
        nodes += r.nodes_used;
    }
    r.error_estimate += tail;
    r.nodes_used = nodes;
    return r;
}

LatticeGrid product_grid(const LatticeGrid& a, const LatticeGrid& b)
{
    LatticeGrid g = a;
    for (size_t i = 0; i < g.fine.size(); ++i) {
        g.fine[i] *= b.fine[i];
        g.coarse[i] *= b.coarse[i];
    }
    return g;
}

IntegralResult J2(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx, double tol,
                  double range)
{
    const OuterPlan plan = plan_outer(gamma, lambda, ctx, tol, range);
    const Lattice lat(ctx, plan.h, plan.outer + plan.pad, plan.pad);
    const LatticeGrid g = product_grid(lat.psi2_grid(-gamma[0], -gamma[1]), lat.psi2_grid(lambda[0], lambda[1]));
    const int half = lat.half();
    std::vector<cplx> v(static_cast<size_t>(2 * half + 1));
    for (int k = -half; k <= half; ++k) v[size_t(k + half)] = lat.K(k);
    const LatticeSum s = lat.pair_sum(g, v);
    const cplx ph = std::exp(two_pi * I * (sum(lambda) - sum(gamma)) * x);
    const long w = 2L * g.half + 1;
    return {ph * s.fine, std::abs(ph) * trapezoid_error(s.fine, s.coarse, s.abs_sum), w * w / 2,
            plan.outer * plan.h};
}

IntegralResult I1(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx, double tol,
                  double range)
{
    const OuterPlan plan = plan_outer(gamma, lambda, ctx, tol, range);
    const Lattice lat(ctx, plan.h, plan.outer + plan.pad, plan.pad);
    const LatticeGrid g = lat.psi2_grid(lambda[0], lambda[1]);
    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (int i = -g.half; i <= g.half; ++i) {
        const cplx e = std::exp(-two_pi * I * gamma[0] * lat.node(i));
        const cplx t = e * g.at(i, 0);
        fine.add(t);
        abs_sum += std::abs(t);
        if ((i & 1) == 0) coarse.add(e * g.coarse_at(i, 0));
    }
    const double h = lat.h();
    const cplx vf = h * fine.value(), vc = 2.0 * h * coarse.value();
    const cplx ph = std::exp(two_pi * I * (sum(lambda) - sum(gamma)) * x);
    return {ph * vf, std::abs(ph) * trapezoid_error(vf, vc, h * abs_sum), 2L * g.half + 1, plan.outer * h};
}

IntegralResult I2(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx, double tol,
                  double range)
{
    const OuterPlan plan = plan_outer(gamma, lambda, ctx, tol, range);
    const int pad = plan.pad;
    const Lattice lat(ctx, plan.h, plan.outer + 2 * pad, pad);
    const LatticeGrid gl = lat.psi2_grid(lambda[0], lambda[1]);
    const LatticeGrid gg = lat.psi2_grid(-gamma[0], -gamma[1]);
    const int gh = gl.half;
    const int out = plan.outer;
    const double h = lat.h();
    const cplx l3 = lambda[2];
    std::vector<cplx> e3(static_cast<size_t>(2 * gh + 1)), e3p(static_cast<size_t>(2 * gh + 1));
    for (int k = -gh; k <= gh; ++k) {
        e3[size_t(k + gh)] = std::exp(-two_pi * I * l3 * lat.node(k));
        e3p[size_t(k + gh)] = std::exp(two_pi * I * l3 * lat.node(k));
    }
    const cplx d2 = norm_d(2, ctx);

    // pair(k - l) Psi_lambda(y_k, y_l) for k < l does not depend on the outer
    // pair, so it is tabulated once, split into real and imaginary parts for
    // the inner products below. The coarse table is filled at even (k, l).
    const int width = 2 * gh + 1;
    const size_t cells = size_t(width) * size_t(width);
    std::vector<double> wre(cells, 0.0), wim(cells, 0.0), cre(cells, 0.0), cim(cells, 0.0);
    parallel_for(width, [&](int kk) {
        const int k = kk - gh;
        for (int l = k + 1; l <= gh; ++l) {
            const size_t at = size_t(kk) * size_t(width) + size_t(l + gh);
            const cplx w = lat.pair(k - l) * gl.at(k, l);
            wre[at] = w.real();
            wim[at] = w.imag();
            if (((k | l) & 1) == 0) {
                const cplx c = lat.pair(k - l) * gl.coarse_at(k, l);
                cre[at] = c.real();
                cim[at] = c.imag();
            }
        }
    });

    // Psi_lambda(y_i, y_j, 0) from the raising step restricted to the window
    // where the three kernels are not negligible.
    const int rows = 2 * out + 1;
    std::vector<cplx> row_f(static_cast<size_t>(rows)), row_c(static_cast<size_t>(rows));
    std::vector<double> row_a(static_cast<size_t>(rows));
    parallel_for(rows, [&](int ii) {
        const int i = ii - out;
        CompensatedSum rf, rc;
        double ra = 0.0;
        std::vector<double> vre, vim;
        for (int j = i + 1; j <= out; ++j) {
            const int lo = std::max(-gh, std::min({i, j, 0}) - pad);
            const int hi = std::min(gh, std::max({i, j, 0}) + pad);
            const int len = hi - lo + 1;
            vre.assign(size_t(len), 0.0);
            vim.assign(size_t(len), 0.0);
            for (int k = lo; k <= hi; ++k) {
                const cplx v = lat.K(i - k) * lat.K(j - k) * lat.K(k) * e3[size_t(k + gh)];
                vre[size_t(k - lo)] = v.real();
                vim[size_t(k - lo)] = v.imag();
            }
            const bool even = ((i | j) & 1) == 0;
            CompensatedSum sf, sc;
            for (int a = 0; a < len; ++a) {
                const size_t row = size_t(a + lo + gh) * size_t(width) + size_t(lo + gh);
                const double* pr = wre.data() + row;
                const double* pi_ = wim.data() + row;
                double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
                for (int b = a + 1; b < len; ++b) {
                    sr += pr[b] * vre[size_t(b)] - pi_[b] * vim[size_t(b)];
                    si += pr[b] * vim[size_t(b)] + pi_[b] * vre[size_t(b)];
                }
                sf.add(cplx(vre[size_t(a)], vim[size_t(a)]) * cplx(sr, si));
            }
            if (even) {
                const int first = lo & 1 ? 1 : 0;
                for (int a = first; a < len; a += 2) {
                    const size_t row = size_t(a + lo + gh) * size_t(width) + size_t(lo + gh);
                    double sr = 0.0, si = 0.0;
                    for (int b = a + 2; b < len; b += 2) {
                        sr += cre[row + size_t(b)] * vre[size_t(b)] - cim[row + size_t(b)] * vim[size_t(b)];
                        si += cre[row + size_t(b)] * vim[size_t(b)] + cim[row + size_t(b)] * vre[size_t(b)];
                    }
                    sc.add(cplx(vre[size_t(a)], vim[size_t(a)]) * cplx(sr, si));
                }
            }
            const cplx pre = d2 * e3p[size_t(i + gh)] * e3p[size_t(j + gh)];
            const cplx psi3 = pre * h * h * sf.value();
            const cplx t = lat.pair(i - j) * gg.at(i, j) * psi3;
            rf.add(t);
            ra += std::abs(t);
            if (even) rc.add(lat.pair(i - j) * gg.coarse_at(i, j) * pre * 4.0 * h * h * sc.value());
        }
        row_f[size_t(ii)] = rf.value();
        row_c[size_t(ii)] = rc.value();
        row_a[size_t(ii)] = ra;
    });
    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (int ii = 0; ii < rows; ++ii) {
        fine.add(row_f[size_t(ii)]);
        coarse.add(row_c[size_t(ii)]);
        abs_sum += row_a[size_t(ii)];
    }
    const cplx vf = h * h * fine.value(), vc = 4.0 * h * h * coarse.value();
    const cplx ph = std::exp(two_pi * I * (sum(lambda) - sum(gamma)) * x);
    return {ph * vf, std::abs(ph) * trapezoid_error(vf, vc, h * h * abs_sum), long(rows) * rows / 2,
            out * h};
}

// mu_hat(d) mu_hat(-d) / 2 on a uniform table, evaluated by six-point
// Lagrange interpolation; the pair weight is smooth on the real line.
class PairTable {
public:
    PairTable(const KernelContext& dual, double reach, double step) : step_(step)
    {
        const int n = int(std::ceil(reach / step)) + 4;
        vals_.resize(size_t(n) + 1);
        parallel_for(n + 1, [&](int k) {
            vals_[size_t(k)] = k == 0 ? cplx(0.0) : 0.5 * measure_pair(k * step_, dual);
        });
    }

    cplx operator()(double d) const
    {
        const double t = std::abs(d) / step_;
        const int k0 = std::max(0, std::min(int(vals_.size()) - 6, int(std::floor(t)) - 2));
        cplx acc = 0.0;
        for (int a = 0; a < 6; ++a) {
            double w = 1.0;
            for (int b = 0; b < 6; ++b)
                if (b != a) w *= (t - (k0 + b)) / double(a - b);
            acc += w * value(k0 + a);
        }
        return acc;
    }

private:
    // Even extension through the origin.
    cplx value(int k) const { return vals_[size_t(std::abs(k))]; }
    double step_;
    std::vector<cplx> vals_;
};

// Nodes covering the support of phi with Kronrod panels of at most one
// oscillation of e^{2 pi i t x}, graded down to `finest` at the breakpoints.
NodeRule spectral_rule(const TestFunction& phi, const std::vector<double>& breaks, double x, double finest)
{
    const double r = phi.support_radius();
    const double panel = std::min(0.25, 1.0 / std::max(1.0, std::abs(x)));
    return graded_rule(phi.center - r, phi.center + r, breaks, std::min(finest, panel), panel);
}

// Closed-form pairing integrated against mu_hat phi over lambda' (n = 1, 2).
cplx delta_value(const TestFunction& phi, const Tuple& lambda, double x, double eps, const KernelContext& ctx,
                 const PairTable* table)
{
    const int n = int(lambda.size());
    std::vector<double> breaks;
    for (const auto& l : lambda) breaks.push_back(l.real());
    const NodeRule rule = spectral_rule(phi, breaks, x, 0.25 * eps);
    const size_t m = rule.nodes.size();
    const Params& p = ctx.params();
    const cplx shift = I * 0.5 * p.ghat - I * eps;
    std::vector<cplx> a(m);
    parallel_for(int(m), [&](int k) {
        const double t = rule.nodes[size_t(k)];
        cplx v = rule.weights[size_t(k)] * phi(t) * std::exp(-two_pi * I * t * x);
        for (const auto& l : lambda) v *= hat_K(l - t + shift, ctx);
        a[size_t(k)] = v;
    });
    const cplx pre = std::exp(two_pi * I * sum(lambda) * x) / norm_d(n, ctx);
    if (n == 1) {
        CompensatedSum s;
        for (const auto& v : a) s.add(v);
        return pre * s.value();
    }
    std::vector<cplx> rows(m);
    parallel_for(int(m), [&](int k) {
        CompensatedSum s;
        const double tk = rule.nodes[size_t(k)];
        for (size_t l = 0; l < m; ++l) s.add((*table)(tk - rule.nodes[l]) * a[l]);
        rows[size_t(k)] = a[size_t(k)] * s.value();
    });
    CompensatedSum s;
    for (const auto& v : rows) s.add(v);
    return pre * s.value();
}

// Weights w_p phi(t_p) on a rule for the spectral support, used by the
// two-particle transforms: M(p, q) = w_p w_q mu_hat(t_p, t_q) phi(t_p) phi(t_q).
struct SpectralMatrix {
    NodeRule rule;
    std::vector<cplx> m; // row-major, size N^2
    size_t size() const { return rule.nodes.size(); }
};

SpectralMatrix spectral_matrix(const TestFunction& phi, const KernelContext& ctx)
{
    SpectralMatrix s;
    s.rule = spectral_rule(phi, {}, 0.0, 0.25);
    const size_t n = s.size();
    const PairTable table(ctx.dual_context(), 2.0 * phi.support_radius() + 0.1, 2e-3);
    s.m.resize(n * n);
    parallel_for(int(n), [&](int p) {
        const double tp = s.rule.nodes[size_t(p)];
        const cplx fp = s.rule.weights[size_t(p)] * phi(tp);
        for (size_t q = 0; q < n; ++q) {
            const double tq = s.rule.nodes[q];
            s.m[size_t(p) * n + q] = fp * s.rule.weights[q] * phi(tq) * table(tp - tq);
        }
    });
    return s;
}

// F(a, b) = sum_{p,q} M(p, q) e^{2 pi i (t_p a + t_q b)}.
cplx spectral_fourier(const SpectralMatrix& s, double a, double b)
{
    const size_t n = s.size();
    std::vector<cplx> eb(n);
    for (size_t q = 0; q < n; ++q) eb[q] = std::exp(two_pi * I * s.rule.nodes[q] * b);
    CompensatedSum acc;
    for (size_t p = 0; p < n; ++p) {
        cplx row = 0.0;
        for (size_t q = 0; q < n; ++q) row += s.m[p * n + q] * eb[q];
        acc.add(std::exp(two_pi * I * s.rule.nodes[p] * a) * row);
    }
    return acc.value();
}

// Psi_lambda(x) = d1 e^{2 pi i lambda_2 (x1 + x2)} int K(x1 - y) K(x2 - y) e^{2 pi i (lambda_1 - lambda_2) y} dy,
// so (T phi)(x) = d1 int K(x1 - y) K(x2 - y) F(y, x1 + x2 - y) dy.
double transform_reach(const KernelContext& ctx, double tol)
{
    return std::log(10.0 / tol) / (two_pi * ctx.params().nu_g);
}

cplx transform_T1(const TestFunction& phi, cplx x, double tol)
{
    const double r = phi.support_radius();
    const int panels = int(std::ceil(2.0 * r * std::max(1.0, std::abs(x))));
    const auto res = integrate_interval([&](double t) { return std::exp(two_pi * I * t * x) * phi(t); },
                                        phi.center - r, phi.center + r, tol, 2000000, panels);
    return res.value;
}

} // namespace

cplx closed_form_J(const Tuple& gamma, const Tuple& lambda, cplx x, const KernelContext& ctx)
{
    if (gamma.size() != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "J needs tuples of equal size");
    return std::exp(two_pi * I * (sum(lambda) - sum(gamma)) * x) * product_hat_K(lambda, gamma, ctx)
        / norm_d(int(gamma.size()), ctx);
}

cplx closed_form_I(const Tuple& gamma, const Tuple& lambda, cplx x, const KernelContext& ctx)
{
    if (gamma.size() + 1 != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "I needs |lambda| = |gamma| + 1");
    return std::exp(two_pi * I * (sum(lambda) - sum(gamma)) * x) * product_hat_K(lambda, gamma, ctx)
        / norm_d(int(gamma.size()), ctx);
}

IntegralResult kernel_fourier(cplx lambda, const KernelContext& ctx, const QuadratureSpec& spec)
{
    spec.check();
    if (!(std::abs(lambda.imag()) < 0.5 * ctx.params().nu_g))
        throw Error(ErrorKind::ConditionViolation, "|Im lambda| must stay below nu_g / 2");
    // The line integral is cheap; the extra margin keeps the two-step error
    // estimate below target when the transform itself is small.
    const IntegralResult r = kernel_fourier_line(lambda, ctx, 1e-3 * spec.tolerance);
    fail_if_inaccurate(r, spec.tolerance, "kernel Fourier transform");
    return r;
}

VerificationReport kernel_fourier_check(cplx lambda, const KernelContext& ctx, const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    VerificationReport rep = make_report("kernel_fourier", 1, ctx);
    const IntegralResult r = kernel_fourier(lambda, ctx, spec);
    const cplx cf = hat_K(lambda, ctx) / norm_d(1, ctx);
    rep.residual = std::abs(r.value - cf) / std::abs(cf);
    rep.tolerance = 1e-8;
    rep.values = {{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}, {"numeric_re", r.value.real()},
                  {"numeric_im", r.value.imag()}, {"closed_re", cf.real()}, {"closed_im", cf.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

void check_integral_conditions(const Tuple& gamma, const Tuple& lambda, const Params& p)
{
    for (const Tuple* t : {&gamma, &lambda})
        for (size_t i = 1; i < t->size(); ++i)
            if (std::abs((*t)[i].imag() - (*t)[0].imag()) > 1e-12)
                throw Error(ErrorKind::ConditionViolation, "entries of a spectral tuple must share their imaginary part");
    for (const auto& l : lambda)
        for (const auto& g : gamma)
            if (!(std::abs((l - g).imag()) < 0.5 * p.nu_g))
                throw Error(ErrorKind::ConditionViolation, "|Im(lambda_i - gamma_j)| must stay below nu_g / 2");
}

IntegralResult integral_J(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                          const QuadratureSpec& spec)
{
    spec.check();
    if (gamma.size() != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "J needs tuples of equal size");
    check_integral_conditions(gamma, lambda, ctx.params());
    const double tol = 0.1 * spec.tolerance;
    IntegralResult r;
    if (gamma.size() == 1)
        r = J1(gamma, lambda, x, ctx, tol);
    else if (gamma.size() == 2)
        r = refine_range(J2, gamma, lambda, x, ctx, tol);
    else
        throw Error(ErrorKind::DimensionTooLarge, "J implemented for n <= 2");
    fail_if_inaccurate(r, spec.tolerance, "integral J");
    return r;
}

IntegralResult integral_I(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                          const QuadratureSpec& spec)
{
    spec.check();
    if (gamma.size() + 1 != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "I needs |lambda| = |gamma| + 1");
    check_integral_conditions(gamma, lambda, ctx.params());
    const double tol = 0.1 * spec.tolerance;
    IntegralResult r;
    if (gamma.empty())
        r = {std::exp(two_pi * I * lambda[0] * x), 0.0, 0, 0.0};
    else if (gamma.size() == 1)
        r = refine_range(I1, gamma, lambda, x, ctx, tol);
    else if (gamma.size() == 2)
        r = refine_range(I2, gamma, lambda, x, ctx, tol);
    else
        throw Error(ErrorKind::DimensionTooLarge, "I implemented for n <= 2");
    fail_if_inaccurate(r, spec.tolerance, "integral I");
    return r;
}

VerificationReport integral_J_check(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                    const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    VerificationReport rep = make_report("integral_J", int(gamma.size()), ctx);
    const IntegralResult r = integral_J(gamma, lambda, x, ctx, spec);
    const cplx cf = closed_form_J(gamma, lambda, x, ctx);
    rep.residual = std::abs(r.value - cf) / std::abs(cf);
    rep.tolerance = basic_tolerance(rep.n);
    rep.values = {{"numeric_re", r.value.real()}, {"numeric_im", r.value.imag()}, {"closed_re", cf.real()},
                  {"closed_im", cf.imag()}, {"error_estimate", r.error_estimate}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

VerificationReport integral_I_check(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                    const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    VerificationReport rep = make_report("integral_I", int(gamma.size()), ctx);
    const IntegralResult r = integral_I(gamma, lambda, x, ctx, spec);
    const cplx cf = closed_form_I(gamma, lambda, x, ctx);
    rep.residual = std::abs(r.value - cf) / std::abs(cf);
    rep.tolerance = basic_tolerance(rep.n);
    rep.values = {{"numeric_re", r.value.real()}, {"numeric_im", r.value.imag()}, {"closed_re", cf.real()},
                  {"closed_im", cf.imag()}, {"error_estimate", r.error_estimate}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

VerificationReport recurrence_check_I(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                      const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    const int n = int(gamma.size());
    VerificationReport rep = make_report("recurrence_I", n, ctx);
    if (lambda.size() != gamma.size() + 1) throw Error(ErrorKind::ShapeMismatch, "I needs |lambda| = |gamma| + 1");
    const cplx top = lambda.back();
    const Tuple lower(lambda.begin(), lambda.end() - 1);
    const cplx lhs = integral_I(gamma, lambda, x, ctx, spec).value;
    const cplx rhs = product_hat_K({top}, gamma, ctx) * std::exp(two_pi * I * top * x)
        * integral_J(gamma, lower, x, ctx, spec).value;
    rep.residual = std::abs(lhs - rhs) / std::abs(rhs);
    rep.tolerance = 1e-5;
    rep.values = {{"lhs_re", lhs.real()}, {"lhs_im", lhs.imag()}, {"rhs_re", rhs.real()}, {"rhs_im", rhs.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

VerificationReport recurrence_check_J(const Tuple& gamma, const Tuple& lambda, double x, const KernelContext& ctx,
                                      const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    const int n = int(gamma.size());
    VerificationReport rep = make_report("recurrence_J", n, ctx);
    if (lambda.size() != gamma.size() || n < 1) throw Error(ErrorKind::ShapeMismatch, "J needs tuples of equal size");
    const cplx top = lambda.back();
    const Tuple lower(lambda.begin(), lambda.end() - 1);
    const cplx lhs = integral_J(gamma, lambda, x, ctx, spec).value;
    const cplx rhs = norm_d(n - 1, ctx) / norm_d(n, ctx) * product_hat_K({top}, gamma, ctx)
        * std::exp(two_pi * I * top * x) * integral_I(negated(lower), negated(gamma), x, ctx, spec).value;
    rep.residual = std::abs(lhs - rhs) / std::abs(rhs);
    rep.tolerance = 1e-5;
    rep.values = {{"lhs_re", lhs.real()}, {"lhs_im", lhs.imag()}, {"rhs_re", rhs.real()}, {"rhs_im", rhs.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

cplx closed_form_pairing(const Tuple& lambda_prime, const Tuple& lambda, double x, double eps,
                         const KernelContext& ctx)
{
    if (lambda_prime.size() != lambda.size()) throw Error(ErrorKind::ShapeMismatch, "pairing needs equal sizes");
    const Params& p = ctx.params();
    if (!(eps > 0.0 && eps < 0.5 * p.nu_g))
        throw Error(ErrorKind::ConditionViolation, "regularisation eps must lie in (0, nu_g / 2)");
    const cplx shift = I * 0.5 * p.ghat - I * eps;
    cplx prod = 1.0;
    for (const auto& l : lambda)
        for (const auto& lp : lambda_prime) prod *= hat_K(l - lp + shift, ctx);
    return std::exp(two_pi * I * (sum(lambda) - sum(lambda_prime)) * x) * prod
        / norm_d(int(lambda.size()), ctx);
}

IntegralResult regularized_pairing(const Tuple& lambda_prime, const Tuple& lambda, double x, double eps,
                                   const KernelContext& ctx, const QuadratureSpec& spec)
{
    spec.check();
    if (lambda.size() != 1 || lambda_prime.size() != 1)
        throw Error(ErrorKind::DimensionTooLarge, "numeric regularised pairing implemented for n = 1");
    const Params& p = ctx.params();
    if (!(eps > 0.0 && eps < 0.5 * p.nu_g))
        throw Error(ErrorKind::ConditionViolation, "regularisation eps must lie in (0, nu_g / 2)");
    const double tol = 0.1 * spec.tolerance;
    const cplx d = lambda[0] - lambda_prime[0];
    // y = x + u; the weight is combined with log K to stay finite far out.
    const cplx wexp = two_pi * (eps - 0.5 * p.ghat);
    const double logt = std::log(10.0 / tol);
    const double left_rate = two_pi * eps - two_pi * std::abs(d.imag());
    const double right_rate = two_pi * (p.nu_g - eps) - two_pi * std::abs(d.imag());
    if (!(left_rate > 0.0) || !(right_rate > 0.0))
        throw Error(ErrorKind::ConditionViolation, "regularised pairing does not converge");
    const double h = lattice_step(ctx.kernel_strip(), std::abs(d.real()) + 0.5 * std::abs(p.ghat.imag()), tol);
    const int kl = int(std::ceil(logt / left_rate / h)), kr = int(std::ceil(logt / right_rate / h));
    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (int k = -kl; k <= kr; ++k) {
        const double u = k * h;
        const cplx t = std::exp(wexp * u + log_kernel_K(u, ctx) + two_pi * I * d * u);
        fine.add(t);
        if ((k & 1) == 0) coarse.add(t);
        abs_sum += std::abs(t);
    }
    const cplx ph = std::exp(two_pi * I * d * x);
    const cplx vf = h * fine.value(), vc = 2.0 * h * coarse.value();
    IntegralResult r{ph * vf, std::abs(ph) * trapezoid_error(vf, vc, h * abs_sum), long(kl) + kr + 1,
                     std::max(kl, kr) * h};
    fail_if_inaccurate(r, spec.tolerance, "regularised pairing");
    return r;
}

void RegularizationSchedule::check(const Params& p) const
{
    if (x_values.size() < 3 || eps_values.size() < 3)
        throw Error(ErrorKind::ScheduleTooShort, "schedules need at least three entries");
    for (size_t i = 1; i < x_values.size(); ++i)
        if (!(x_values[i] > x_values[i - 1]))
            throw Error(ErrorKind::ConditionViolation, "x schedule must increase");
    for (size_t i = 0; i < eps_values.size(); ++i) {
        if (!(eps_values[i] > 0.0 && eps_values[i] < 0.5 * p.nu_g))
            throw Error(ErrorKind::ConditionViolation, "eps must lie in (0, nu_g / 2)");
        if (i > 0 && !(eps_values[i] < eps_values[i - 1]))
            throw Error(ErrorKind::ConditionViolation, "eps schedule must decrease");
    }
}

cplx TestFunction::operator()(double t) const
{
    const double u = (t - center) / width;
    const double g = std::exp(-0.5 * u * u);
    if (kind == Kind::CosineGaussian) return g * std::cos(two_pi * frequency * (t - center));
    return g;
}

cplx TestFunction::operator()(const Tuple& t) const
{
    cplx v = 1.0;
    for (const auto& s : t) {
        const cplx u = (s - center) / width;
        cplx g = std::exp(-0.5 * u * u);
        if (kind == Kind::CosineGaussian) g *= std::cos(two_pi * frequency * (s - center));
        v *= g;
    }
    return v;
}

double TestFunction::support_radius() const { return width * std::sqrt(2.0 * std::log(1e16)); }

std::string TestFunction::name() const
{
    std::ostringstream os;
    os << (kind == Kind::Gaussian ? "gaussian" : "cosine_gaussian") << "(c=" << center << ",w=" << width;
    if (kind == Kind::CosineGaussian) os << ",f=" << frequency;
    os << ")";
    return os.str();
}

TestFunction TestFunction::gaussian(double center, double width)
{
    return {Kind::Gaussian, center, width, 0.0};
}

TestFunction TestFunction::cosine_gaussian(double center, double width, double frequency)
{
    return {Kind::CosineGaussian, center, width, frequency};
}

std::vector<TestFunction> TestFunction::catalog()
{
    return {gaussian(0.2, 0.3), gaussian(-0.5, 0.2), cosine_gaussian(0.1, 0.35, 1.5)};
}

VerificationReport delta_sequence_test(const TestFunction& phi, const Tuple& lambda,
                                       const RegularizationSchedule& schedule, const KernelContext& ctx,
                                       const QuadratureSpec& spec, double tolerance)
{
    const auto t0 = Clock::now();
    spec.check();
    const int n = int(lambda.size());
    VerificationReport rep = make_report("delta_sequence", n, ctx);
    if (n < 1 || n > 2) throw Error(ErrorKind::DimensionTooLarge, "delta sequence implemented for n <= 2");
    schedule.check(ctx.params());
    for (const auto& l : lambda)
        if (l.imag() != 0.0) throw Error(ErrorKind::ConditionViolation, "delta sequence needs real lambda");

    const cplx target = phi(lambda);
    std::unique_ptr<PairTable> table;
    if (n == 2) {
        const double reach = 2.0 * phi.support_radius() + 0.1;
        table = std::make_unique<PairTable>(ctx.dual_context(), reach, 2e-3);
    }
    auto value = [&](double x, double eps) { return delta_value(phi, lambda, x, eps, ctx, table.get()); };

    // Deviation along the diagonal of the schedule.
    const size_t diag = std::min(schedule.x_values.size(), schedule.eps_values.size());
    std::vector<double> dev(diag);
    for (size_t k = 0; k < diag; ++k)
        dev[k] = std::abs(value(schedule.x_values[k], schedule.eps_values[k]) - target);
    bool monotone = true;
    for (size_t k = 1; k < diag; ++k)
        if (dev[k] > dev[k - 1] && dev[k] > 1e-9) monotone = false;

    // eps -> 0 at the largest x. The pole of the pairing at lambda' = lambda - i eps
    // contributes e^{-2 pi n x eps}; the remainder is smooth in eps.
    const double xmax = schedule.x_values.back();
    const auto& eps = schedule.eps_values;
    const Eigen::Index m = Eigen::Index(eps.size());
    Eigen::MatrixXd a(m, 3);
    Eigen::MatrixXcd b(m, 1);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double e = eps[size_t(k)];
        a(k, 0) = 1.0;
        a(k, 1) = std::expm1(-two_pi * n * xmax * e);
        a(k, 2) = e;
        b(k, 0) = value(xmax, e);
    }
    const Eigen::MatrixXcd coef = a.cast<cplx>().colPivHouseholderQr().solve(b);
    const cplx limit = coef(0, 0);

    if (!(tolerance > 0.0)) tolerance = std::abs(target) < 1e-12 ? 1e-6 : (n == 1 ? 1e-3 : 5e-2);
    rep.residual = std::abs(limit - target);
    rep.tolerance = tolerance;
    rep.values = {{"target_re", target.real()}, {"limit_re", limit.real()}, {"limit_im", limit.imag()},
                  {"pole_amplitude_re", coef(1, 0).real()}, {"linear_coefficient_re", coef(2, 0).real()},
                  {"monotone", monotone ? 1.0 : 0.0}};
    for (size_t k = 0; k < diag; ++k) rep.values.emplace_back("raw_deviation_" + std::to_string(k), dev[k]);
    rep.notes = {{"test_function", phi.name()},
                 {"extrapolation", "least squares in eps of L + A (e^{-2 pi n x eps} - 1) + B eps at largest x"}};
    rep.pass = monotone && rep.residual <= rep.tolerance;
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

cplx transform_T(const TestFunction& phi, const Tuple& x, const KernelContext& ctx, const QuadratureSpec& spec)
{
    spec.check();
    const double tol = 0.1 * spec.tolerance;
    if (x.size() == 1) return transform_T1(phi, x[0], tol);
    if (x.size() != 2) throw Error(ErrorKind::DimensionTooLarge, "transform T implemented for n <= 2");
    const SpectralMatrix sm = spectral_matrix(phi, ctx);
    const double strip = ctx.kernel_strip() - std::max(std::abs(x[0].imag()), std::abs(x[1].imag()));
    const double h = lattice_step(strip, std::abs(phi.center) + phi.support_radius(), tol);
    const double reach = transform_reach(ctx, tol);
    const double lo = std::min(x[0].real(), x[1].real()) - reach, hi = std::max(x[0].real(), x[1].real()) + reach;
    const int k0 = int(std::floor(lo / h)), k1 = int(std::ceil(hi / h));
    const cplx s = x[0] + x[1];
    std::vector<cplx> terms(static_cast<size_t>(k1 - k0 + 1));
    parallel_for(k1 - k0 + 1, [&](int idx) {
        const double y = (k0 + idx) * h;
        const cplx kk = kernel_K(x[0] - y, ctx) * kernel_K(x[1] - y, ctx);
        // F(y, s - y) with complex s handled through the exponential.
        const size_t nn = sm.size();
        CompensatedSum acc;
        for (size_t p = 0; p < nn; ++p) {
            cplx row = 0.0;
            for (size_t q = 0; q < nn; ++q)
                row += sm.m[p * nn + q] * std::exp(two_pi * I * sm.rule.nodes[q] * (s - y));
            acc.add(std::exp(two_pi * I * sm.rule.nodes[p] * y) * row);
        }
        terms[size_t(idx)] = kk * acc.value();
    });
    CompensatedSum total;
    for (const auto& t : terms) total.add(t);
    return norm_d(1, ctx) * h * total.value();
}

cplx transform_S(const TestFunction& f, const Tuple& lambda, const KernelContext& ctx, const QuadratureSpec& spec)
{
    spec.check();
    const double tol = 0.1 * spec.tolerance;
    if (lambda.size() == 1) {
        const double r = f.support_radius();
        const int panels = int(std::ceil(2.0 * r * std::max(1.0, std::abs(lambda[0]))));
        return integrate_interval([&](double t) { return std::exp(two_pi * I * lambda[0] * t) * f(t); },
                                  f.center - r, f.center + r, tol, 2000000, panels)
            .value;
    }
    if (lambda.size() != 2) throw Error(ErrorKind::DimensionTooLarge, "transform S implemented for n <= 2");
    const Params& p = ctx.params();
    const double strip = std::min(ctx.kernel_strip(), p.g.real());
    double freq = std::abs((lambda[0] - lambda[1]).real()) + std::abs(lambda[1].real());
    const double h = lattice_step(strip, freq + 1.0 / f.width, tol);
    const int pad = int(std::ceil(std::log(10.0 / tol) / (two_pi * p.nu_g) / h));
    const int out = int(std::ceil((std::abs(f.center) + f.support_radius()) / h));
    const Lattice lat(ctx, h, out + pad, pad);
    const LatticeGrid g = lat.psi2_grid(lambda[0], lambda[1]);
    const int half = lat.half();
    std::vector<cplx> v(static_cast<size_t>(2 * half + 1), 0.0);
    for (int k = -out; k <= out; ++k) v[size_t(k + half)] = f(lat.node(k));
    return lat.pair_sum(g, v).fine;
}

VerificationReport plancherel_check(const TestFunction& phi, int n, const KernelContext& ctx,
                                    const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    spec.check();
    VerificationReport rep = make_report("plancherel", n, ctx);
    const Params& p = ctx.params();
    if (p.omega1.imag() != 0.0 || p.omega2.imag() != 0.0 || p.g.imag() != 0.0)
        throw Error(ErrorKind::ConditionViolation, "isometry check needs real parameters");
    const double tol = std::max(1e-13, 0.01 * spec.tolerance);
    double lhs = 0.0, rhs = 0.0;
    if (n == 1) {
        const double r = phi.support_radius();
        rhs = integrate_interval([&](double t) { return cplx(std::norm(phi(t))); }, phi.center - r, phi.center + r,
                                 tol, 2000000, 8)
                  .value.real();
        // |T phi|^2 is band limited by the support of phi: the step 1/(4r)
        // avoids aliasing, the range covers the Fourier decay of phi.
        const double h = 1.0 / (4.0 * (r + std::abs(phi.center)));
        const double reach = std::sqrt(std::log(1e16)) / (pi * phi.width) + 2.0 * phi.frequency;
        const int k = int(std::ceil(reach / h));
        std::vector<double> vals(static_cast<size_t>(2 * k + 1));
        parallel_for(2 * k + 1, [&](int i) { vals[size_t(i)] = std::norm(transform_T1(phi, (i - k) * h, tol)); });
        CompensatedSum s;
        for (double v : vals) s.add(v);
        lhs = h * s.value().real();
    } else if (n == 2) {
        const SpectralMatrix sm = spectral_matrix(phi, ctx);
        const size_t nn = sm.size();
        CompensatedSum norm_phi;
        for (size_t a = 0; a < nn; ++a)
            for (size_t b = 0; b < nn; ++b) {
                // M carries w phi mu_hat, so |phi|^2 mu_hat w w = M conj(phi phi)
                norm_phi.add(sm.m[a * nn + b] * std::conj(phi(sm.rule.nodes[a]) * phi(sm.rule.nodes[b])));
            }
        rhs = norm_phi.value().real();

        // T phi on a coordinate lattice with the kernel sum over y on the same lattice.
        const double ltol = std::max(tol, 1e-11);
        const double h = lattice_step(std::min(ctx.kernel_strip(), p.g.real()),
                                      std::abs(phi.center) + phi.support_radius(), ltol);
        const double xr = std::sqrt(std::log(1e12)) / (pi * phi.width) + std::log(1e12) / (pi * p.nu_g);
        const int X = int(std::ceil(xr / h));
        const int pad = int(std::ceil(transform_reach(ctx, ltol) / h));
        const int Y = X + pad;
        // F(a_k, b_m) for a in [-Y, Y], b in [-(2X + Y), 2X + Y].
        const int B = 2 * X + Y;
        const size_t na = size_t(2 * Y + 1), nb = size_t(2 * B + 1);
        std::vector<cplx> eb(nb * nn);
        for (size_t m = 0; m < nb; ++m)
            for (size_t q = 0; q < nn; ++q)
                eb[m * nn + q] = std::exp(two_pi * I * sm.rule.nodes[q] * ((int(m) - B) * h));
        // G(p, m) = sum_q M(p, q) e^{2 pi i t_q b_m}
        std::vector<cplx> gpm(nn * nb);
        parallel_for(int(nn), [&](int pp) {
            for (size_t m = 0; m < nb; ++m) {
                cplx acc = 0.0;
                for (size_t q = 0; q < nn; ++q) acc += sm.m[size_t(pp) * nn + q] * eb[m * nn + q];
                gpm[size_t(pp) * nb + m] = acc;
            }
        });
        std::vector<cplx> F(na * nb);
        parallel_for(int(na), [&](int ka) {
            const double a = (ka - Y) * h;
            std::vector<cplx> ea(nn);
            for (size_t pp = 0; pp < nn; ++pp) ea[pp] = std::exp(two_pi * I * sm.rule.nodes[pp] * a);
            for (size_t m = 0; m < nb; ++m) {
                cplx acc = 0.0;
                for (size_t pp = 0; pp < nn; ++pp) acc += ea[pp] * gpm[pp * nb + m];
                F[size_t(ka) * nb + m] = acc;
            }
        });
        const Lattice lat(ctx, h, Y + 1, 1);
        const cplx d1 = norm_d(1, ctx);
        std::vector<double> rows(static_cast<size_t>(2 * X + 1));
        parallel_for(2 * X + 1, [&](int ii) {
            const int i = ii - X;
            CompensatedSum acc;
            for (int j = i + 1; j <= X; ++j) {
                cplx t = 0.0;
                for (int k = -Y; k <= Y; ++k)
                    t += lat.K(i - k) * lat.K(j - k) * F[size_t(k + Y) * nb + size_t(i + j - k + B)];
                t *= d1 * h;
                acc.add(lat.pair(i - j) * std::norm(t));
            }
            rows[size_t(ii)] = acc.value().real();
        });
        CompensatedSum s;
        for (double v : rows) s.add(v);
        lhs = h * h * s.value().real();
    } else {
        throw Error(ErrorKind::DimensionTooLarge, "isometry check implemented for n <= 2");
    }
    const double ratio = lhs / rhs;
    rep.residual = std::abs(ratio - 1.0);
    rep.tolerance = 1e-6;
    rep.values = {{"norm_T_phi_sq", lhs}, {"norm_phi_sq", rhs}, {"c_n", ratio}};
    rep.notes = {{"test_function", phi.name()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

VerificationReport inversion_check(const TestFunction& phi, const std::vector<double>& points,
                                   const KernelContext& ctx, const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    spec.check();
    VerificationReport rep = make_report("inversion", 1, ctx);
    const double tol = std::max(1e-13, 0.01 * spec.tolerance);
    const double r = phi.support_radius();
    const double h = 1.0 / (4.0 * (r + std::abs(phi.center)));
    const double reach = std::sqrt(std::log(1e16)) / (pi * phi.width) + 2.0 * phi.frequency;
    const int k = int(std::ceil(reach / h));
    std::vector<cplx> tphi(static_cast<size_t>(2 * k + 1));
    parallel_for(2 * k + 1, [&](int i) { tphi[size_t(i)] = transform_T1(phi, (i - k) * h, tol); });
    double worst = 0.0, scale = 0.0;
    for (double l : points) {
        CompensatedSum s;
        for (int i = -k; i <= k; ++i) s.add(std::exp(two_pi * I * l * (i * h)) * tphi[size_t(i + k)]);
        const cplx st = h * s.value();
        worst = std::max(worst, std::abs(st - phi(-l)));
        scale = std::max(scale, std::abs(phi(-l)));
    }
    (void)ctx;
    rep.residual = worst / std::max(1.0, scale);
    rep.tolerance = 1e-6;
    rep.values = {{"points", double(points.size())}, {"max_abs_phi", scale}};
    rep.notes = {{"test_function", phi.name()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

} // namespace ruij

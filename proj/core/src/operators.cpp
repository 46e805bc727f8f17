#include "ruij/operators.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>

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

double max_imag(const Tuple& x)
{
    double m = 0.0;
    for (const auto& v : x) m = std::max(m, std::abs(v.imag()));
    return m;
}

// log sinh(w), any branch; the callers only exponentiate differences.
cplx log_sinh(cplx w)
{
    if (w.real() < 0.0) return log_sinh(-w) + I * pi;
    return w - std::log(2.0) + std::log(-expm1(-2.0 * w));
}

void check_distinct(const Tuple& x)
{
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) < 1e-8) {
                std::ostringstream os;
                os << "entries " << i << " and " << j << " coincide";
                throw Error(ErrorKind::CoincidentPoints, os.str());
            }
}

std::vector<unsigned> subsets_of_size(int n, int r)
{
    std::vector<unsigned> out;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == r) out.push_back(m);
    return out;
}

Tuple shifted(const Tuple& x, unsigned mask, cplx shift)
{
    Tuple y = x;
    for (size_t i = 0; i < y.size(); ++i)
        if (mask & (1u << i)) y[i] += shift;
    return y;
}

// prod_{i in I, j not in I} sh(a (x_i - x_j - i c)) / sh(a (x_i - x_j)), with
// a = pi / omega2 and c the coupling of ctx.
cplx macdonald_coefficient(const Tuple& x, unsigned mask, const KernelContext& ctx)
{
    const Params& p = ctx.params();
    const cplx a = pi / p.omega2;
    cplx acc = 0.0;
    const int n = int(x.size());
    for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            const cplx u = x[size_t(i)] - x[size_t(j)];
            acc += log_sinh(a * (u - I * p.g)) - log_sinh(a * u);
        }
    }
    return std::exp(acc);
}

cplx elementary_product(cplx lambda, const Tuple& spectral, cplx period)
{
    cplx e = 1.0;
    for (const auto& l : spectral) e *= lambda - std::exp(two_pi * l * period);
    return e;
}

// Square root of s -> f(s) on [0, 1], continued from the principal value at s = 0.
template <class F>
cplx continued_sqrt(F f, int steps = 256)
{
    cplx r = std::sqrt(f(0.0));
    for (int k = 1; k <= steps; ++k) {
        const cplx c = std::sqrt(f(double(k) / steps));
        r = std::abs(c - r) <= std::abs(c + r) ? c : -c;
    }
    return r;
}

VerificationReport make_report(const std::string& check, int n, const KernelContext& ctx)
{
    VerificationReport rep;
    rep.check = check;
    rep.n = n;
    rep.params = describe(ctx.params());
    return rep;
}

double eigen_tolerance(int n)
{
    return n == 1 ? 1e-12 : (n == 2 ? 1e-5 : 1e-4);
}

// Shared body of the direct and dual Macdonald eigen-checks: op acts on the
// variables `coords` with the context `op`, the eigenvalue uses `spectral`.
VerificationReport macdonald_core(const std::string& name, const Tuple& coords, const Tuple& spectral, cplx param,
                                  const KernelContext& op, const TupleFunction& f, double strip)
{
    const auto t0 = Clock::now();
    const int n = int(coords.size());
    VerificationReport rep = make_report(name, n, op);
    ShiftPlan plan{{}, -I * op.params().omega1, 0.0};
    plan.check(coords, strip);
    const cplx base = f(coords);
    const cplx lhs = macdonald_generating(param, f, coords, op);
    const cplx ev = elementary_product(param, spectral, op.params().omega1);
    rep.residual = std::abs(lhs - ev * base) / std::abs(base);
    rep.tolerance = eigen_tolerance(n);
    rep.values = {{"psi_re", base.real()}, {"psi_im", base.imag()}, {"eigenvalue_re", ev.real()},
                  {"eigenvalue_im", ev.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

struct BaxterPlan {
    double h;
    int grid_half;
    int pad;
};

// Q_2(param) Psi_spec(coords) on the lattice: the outer double integral has the
// same shape as the three-particle recursion step with two outer coordinates.
IntegralResult baxter2_on_psi(const Tuple& spec_l, const Tuple& coords, cplx param, const KernelContext& ctx,
                              double tol)
{
    const Params& p = ctx.params();
    const cplx d12 = spec_l[0] - spec_l[1];
    const double inner_rate = two_pi * (p.nu_g - std::abs(d12.imag()));
    const double outer_rate = pi * p.nu_g - two_pi * std::max(std::abs((param - spec_l[0]).imag()),
                                                              std::abs((param - spec_l[1]).imag()));
    if (!(inner_rate > 0.0) || !(outer_rate > 0.0))
        throw Error(ErrorKind::ContourViolation, "Q-operator integral on the wave function does not converge");
    const double strip = std::min(ctx.kernel_strip() - max_imag(coords), p.g.real());
    if (!(strip > 0.0)) throw Error(ErrorKind::ContourViolation, "coordinates leave the kernel strip");
    const double freq = std::max(std::abs(d12.real()), std::abs((param - spec_l[1]).real()));
    const double h = lattice_step(strip, freq, tol);
    const double logt = std::log(10.0 / tol);
    const double centre = 0.5 * (coords[0].real() + coords[1].real());
    const double reach = 0.5 * std::abs(coords[0].real() - coords[1].real());
    const BaxterPlan plan{h, int(std::ceil((reach + logt / outer_rate) / h)),
                          int(std::ceil(logt / inner_rate / h))};

    // Psi_l(y + c e) = e^{2 pi i c sum l} Psi_l(y): integrate around the centre.
    Tuple xc = coords;
    for (auto& v : xc) v -= centre;
    const Lattice lat(ctx, plan.h, plan.grid_half + plan.pad, plan.pad);
    const LatticeGrid g = lat.psi2_grid(spec_l[0], spec_l[1]);
    const auto c0 = lat.kernel_column(xc[0]);
    const auto c1 = lat.kernel_column(xc[1]);
    const int half = lat.half();
    std::vector<cplx> v(static_cast<size_t>(2 * half + 1));
    for (int k = -half; k <= half; ++k)
        v[size_t(k + half)] = c0[size_t(k + half)] * c1[size_t(k + half)] * std::exp(-two_pi * I * param * lat.node(k));
    const LatticeSum s = lat.pair_sum(g, v);
    const cplx pre = norm_d(2, ctx) * std::exp(two_pi * I * param * sum(xc))
        * std::exp(two_pi * I * (spec_l[0] + spec_l[1]) * centre);
    const long w = 2L * half + 1;
    return {pre * s.fine, std::abs(pre) * trapezoid_error(s.fine, s.coarse, s.abs_sum), w * w,
            plan.grid_half * plan.h};
}

VerificationReport baxter_core(const std::string& name, const Tuple& spec_l, const Tuple& coords, cplx param,
                               const KernelContext& ctx, const QuadratureSpec& spec)
{
    const auto t0 = Clock::now();
    const int n = int(coords.size());
    VerificationReport rep = make_report(name, n, ctx);
    QuadratureSpec ps = spec;
    ps.scheme = Scheme::Trapezoid;
    const cplx base = psi_eval(spec_l, coords, ctx, ps).value;
    cplx ev = 1.0;
    for (const auto& l : spec_l) ev *= hat_K(param - l, ctx);
    IntegralResult lhs;
    if (n == 1) {
        const TupleFunction wave = [&](const Tuple& y) { return std::exp(two_pi * I * spec_l[0] * y[0]); };
        lhs = baxterQ_apply(param, wave, coords, ctx, ps, {1e9, spec_l[0].real(), 0.0});
    } else if (n == 2) {
        lhs = baxter2_on_psi(spec_l, coords, param, ctx, 0.1 * ps.tolerance);
    } else {
        throw Error(ErrorKind::DimensionTooLarge, "Q-operator eigen-check implemented for n <= 2");
    }
    rep.residual = std::abs(lhs.value - ev * base) / std::abs(ev * base);
    rep.tolerance = n == 1 ? 1e-8 : 1e-4;
    rep.values = {{"lhs_re", lhs.value.real()}, {"lhs_im", lhs.value.imag()}, {"eigenvalue_re", ev.real()},
                  {"eigenvalue_im", ev.imag()}, {"quadrature_error", lhs.error_estimate}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

double lattice_reach(const KernelContext& ctx, cplx lambda, double tol)
{
    const double rate = pi * ctx.params().nu_g - two_pi * std::abs(lambda.imag());
    if (!(rate > 0.0)) throw Error(ErrorKind::ContourViolation, "Q-operator kernel does not decay");
    return std::log(10.0 / tol) / rate;
}

} // namespace

void ShiftPlan::check(const Tuple& x, double strip) const
{
    for (int i : subset)
        if (i < 0 || size_t(i) >= x.size()) throw Error(ErrorKind::ShapeMismatch, "shift subset out of range");
    const double need = std::abs(shift.imag()) + max_imag(x);
    if (!(need < strip - contour_margin)) {
        std::ostringstream os;
        os << "shifted arguments reach imaginary part " << need << ", allowed strip " << strip - contour_margin;
        throw Error(ErrorKind::ContourViolation, os.str());
    }
}

cplx macdonald_apply(int r, const TupleFunction& f, const Tuple& x, const KernelContext& ctx)
{
    const int n = int(x.size());
    if (r < 0 || r > n) throw Error(ErrorKind::ShapeMismatch, "operator index out of range");
    if (n > 16) throw Error(ErrorKind::DimensionTooLarge, "too many coordinates");
    check_distinct(x);
    const cplx shift = -I * ctx.params().omega1;
    CompensatedSum acc;
    for (unsigned mask : subsets_of_size(n, r))
        acc.add(macdonald_coefficient(x, mask, ctx) * f(shifted(x, mask, shift)));
    return acc.value();
}

cplx macdonald_generating(cplx lambda, const TupleFunction& f, const Tuple& x, const KernelContext& ctx)
{
    const int n = int(x.size());
    cplx total = 0.0;
    for (int r = 0; r <= n; ++r)
        total += std::pow(lambda, n - r) * (r % 2 ? -1.0 : 1.0) * macdonald_apply(r, f, x, ctx);
    return total;
}

VerificationReport macdonald_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx lambda_param,
                                         const KernelContext& ctx, const QuadratureSpec& spec)
{
    if (lambda_n.size() != x_n.size()) throw Error(ErrorKind::ShapeMismatch, "lambda and x must have equal size");
    const TupleFunction f = [&](const Tuple& y) { return psi_eval(lambda_n, y, ctx, spec).value; };
    const double margin = x_n.size() == 1 ? 1e9 : ctx.kernel_strip() - ctx.kernel_guard();
    return macdonald_core("macdonald_eigen", x_n, lambda_n, lambda_param, ctx, f, margin);
}

VerificationReport dual_macdonald_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx x_param,
                                              const KernelContext& ctx, const QuadratureSpec& spec)
{
    if (lambda_n.size() != x_n.size()) throw Error(ErrorKind::ShapeMismatch, "lambda and x must have equal size");
    const TupleFunction f = [&](const Tuple& l) { return psi_eval(l, x_n, ctx, spec).value; };
    // The coordinate representation converges while the spectral differences
    // keep their imaginary parts below nu_g.
    const double strip = x_n.size() == 1 ? 1e9 : ctx.params().nu_g;
    VerificationReport rep = macdonald_core("dual_macdonald_eigen", lambda_n, x_n, x_param, ctx.dual_context(), f, strip);
    rep.params = describe(ctx.params());
    return rep;
}

IntegralResult baxterQ_apply(cplx lambda, const TupleFunction& f, const Tuple& x, const KernelContext& ctx,
                             const QuadratureSpec& spec, const FunctionBounds& bounds)
{
    const int n = int(x.size());
    if (n < 1 || n > 2) throw Error(ErrorKind::DimensionTooLarge, "Q-operator quadrature implemented for n <= 2");
    const double tol = 0.1 * spec.tolerance;
    const double strip = std::min(ctx.kernel_strip() - max_imag(x), std::min(bounds.strip, ctx.params().g.real()));
    if (!(strip > 0.0)) throw Error(ErrorKind::ContourViolation, "coordinates leave the kernel strip");
    const double h = lattice_step(strip, std::abs(lambda.real()) + std::abs(bounds.frequency), tol);
    double lo = 0.0, hi = 0.0;
    for (const auto& v : x) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    const double reach = lattice_reach(ctx, lambda, tol);
    const double a = n == 1 ? lo - reach : std::min(lo - reach, -bounds.radius - reach);
    const double b = n == 1 ? hi + reach : std::max(hi + reach, bounds.radius + reach);
    const int k0 = int(std::floor(a / h)), k1 = int(std::ceil(b / h));
    const int m = k1 - k0 + 1;
    const cplx dn = norm_d(n, ctx);
    const cplx phase_x = std::exp(two_pi * I * lambda * sum(x));

    // Per-node factors e^{-2 pi i lambda y} prod_a K(x_a - y).
    std::vector<cplx> v(static_cast<size_t>(m));
    parallel_for(m, [&](int idx) {
        const double y = (k0 + idx) * h;
        cplx t = std::exp(-two_pi * I * lambda * y);
        for (const auto& xa : x) t *= kernel_K(xa - y, ctx);
        v[size_t(idx)] = t;
    });

    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    if (n == 1) {
        for (int idx = 0; idx < m; ++idx) {
            const cplx t = v[size_t(idx)] * f({cplx((k0 + idx) * h)});
            fine.add(t);
            if (((k0 + idx) & 1) == 0) coarse.add(t);
            abs_sum += std::abs(t);
        }
        const cplx vf = dn * phase_x * h * fine.value();
        const cplx vc = dn * phase_x * 2.0 * h * coarse.value();
        return {vf, trapezoid_error(vf, vc, std::abs(dn * phase_x) * h * abs_sum), m, 0.5 * (b - a)};
    }
    std::vector<cplx> pair(static_cast<size_t>(m));
    for (int d = 1; d < m; ++d) pair[size_t(d)] = measure_pair(d * h, ctx);
    std::vector<cplx> rows(static_cast<size_t>(m)), rows_c(static_cast<size_t>(m));
    std::vector<double> rows_abs(static_cast<size_t>(m));
    // mu(y) carries 1/2!, so the ordered pairs k < l cover the symmetric sum
    // once f is symmetrised.
    parallel_for(m, [&](int i) {
        CompensatedSum r, rc;
        double ra = 0.0;
        const cplx yi = (k0 + i) * h;
        for (int j = i + 1; j < m; ++j) {
            const cplx yj = (k0 + j) * h;
            const cplx fs = 0.5 * (f({yi, yj}) + f({yj, yi}));
            const cplx t = pair[size_t(j - i)] * v[size_t(j)] * fs;
            r.add(t);
            ra += std::abs(t);
            if ((((k0 + i) | (k0 + j)) & 1) == 0) rc.add(t);
        }
        rows[size_t(i)] = v[size_t(i)] * r.value();
        rows_c[size_t(i)] = v[size_t(i)] * rc.value();
        rows_abs[size_t(i)] = std::abs(v[size_t(i)]) * ra;
    });
    for (int i = 0; i < m; ++i) {
        fine.add(rows[size_t(i)]);
        coarse.add(rows_c[size_t(i)]);
        abs_sum += rows_abs[size_t(i)];
    }
    const cplx scale = dn * phase_x;
    const cplx vf = scale * h * h * fine.value();
    const cplx vc = scale * 4.0 * h * h * coarse.value();
    return {vf, trapezoid_error(vf, vc, std::abs(scale) * h * h * abs_sum), long(m) * m / 2, 0.5 * (b - a)};
}

VerificationReport baxter_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx lambda_param,
                                      const KernelContext& ctx, const QuadratureSpec& spec)
{
    if (lambda_n.size() != x_n.size()) throw Error(ErrorKind::ShapeMismatch, "lambda and x must have equal size");
    return baxter_core("baxter_eigen", lambda_n, x_n, lambda_param, ctx, spec);
}

VerificationReport dual_baxter_eigen_check(const Tuple& lambda_n, const Tuple& x_n, cplx x_param,
                                           const KernelContext& ctx, const QuadratureSpec& spec)
{
    if (lambda_n.size() != x_n.size()) throw Error(ErrorKind::ShapeMismatch, "lambda and x must have equal size");
    // In the dual frame the coordinates are the spectral variables and the
    // kernels are the hatted ones; the eigenvalue becomes prod K(x - x_j).
    VerificationReport rep = baxter_core("dual_baxter_eigen", x_n, lambda_n, x_param, ctx.dual_context(), spec);
    rep.params = describe(ctx.params());
    return rep;
}

VerificationReport baxter_commutativity_check(cplx a, cplx b, const TupleFunction& f, cplx x,
                                              const KernelContext& ctx, const QuadratureSpec& spec,
                                              const FunctionBounds& bounds)
{
    const auto t0 = Clock::now();
    VerificationReport rep = make_report("baxter_commutativity", 1, ctx);
    const double tol = 0.01 * spec.tolerance;
    const double strip = std::min(ctx.kernel_strip() - std::abs(x.imag()), bounds.strip);
    if (!(strip > 0.0)) throw Error(ErrorKind::ContourViolation, "point leaves the kernel strip");
    const double freq = std::max(std::abs(a.real()), std::abs(b.real())) + std::abs(bounds.frequency);
    const double h = lattice_step(strip, freq, tol);
    const double reach = std::max(lattice_reach(ctx, a, tol), lattice_reach(ctx, b, tol));
    const double R = bounds.radius + std::abs(x.real()) + 2.0 * reach;
    const int half = int(std::ceil(R / h));
    const int m = 2 * half + 1;
    std::vector<cplx> ktab(static_cast<size_t>(2 * m));
    parallel_for(2 * m, [&](int d) { ktab[size_t(d)] = kernel_K(d * h, ctx); });
    auto K = [&](int d) { return ktab[size_t(d < 0 ? -d : d)]; };
    std::vector<cplx> fv(static_cast<size_t>(m));
    for (int k = -half; k <= half; ++k) fv[size_t(k + half)] = f({cplx(k * h)});
    const cplx d1 = norm_d(1, ctx);

    // (Q(c) f)(y_k) for every lattice node, then Q(e) applied at x.
    auto apply_twice = [&](cplx c, cplx e) {
        std::vector<cplx> g(static_cast<size_t>(m));
        parallel_for(m, [&](int i) {
            CompensatedSum s;
            for (int j = 0; j < m; ++j) s.add(std::exp(two_pi * I * c * double((i - j) * h)) * K(i - j) * fv[size_t(j)]);
            g[size_t(i)] = d1 * h * s.value();
        });
        CompensatedSum s;
        for (int k = -half; k <= half; ++k)
            s.add(std::exp(two_pi * I * e * (x - k * h)) * kernel_K(x - k * h, ctx) * g[size_t(k + half)]);
        return d1 * h * s.value();
    };
    const cplx ab = apply_twice(b, a);
    const cplx ba = apply_twice(a, b);
    rep.residual = std::abs(ab - ba) / std::abs(ab);
    rep.tolerance = 1e-7;
    rep.values = {{"qa_qb_re", ab.real()}, {"qa_qb_im", ab.imag()}, {"qb_qa_re", ba.real()}, {"qb_qa_im", ba.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

VerificationReport gauge_conjugation_check(int r, const TupleFunction& f, const Tuple& x, const KernelContext& ctx)
{
    const auto t0 = Clock::now();
    const int n = int(x.size());
    VerificationReport rep = make_report("gauge_conjugation", n, ctx);
    if (r < 0 || r > n) throw Error(ErrorKind::ShapeMismatch, "operator index out of range");
    check_distinct(x);
    const Params& p = ctx.params();
    const cplx shift = -I * p.omega1;
    const cplx a = pi / p.omega2;
    const cplx mu_x = product_mu(x, ctx);

    CompensatedSum lhs, rhs;
    for (unsigned mask : subsets_of_size(n, r)) {
        const Tuple xs = shifted(x, mask, shift);
        const cplx fx = f(xs);

        // sqrt(mu(x)) M_r mu^{-1/2}: the measure ratio continued along the shift.
        const cplx ratio_root = continued_sqrt([&](double s) {
            return mu_x / product_mu(shifted(x, mask, s * shift), ctx);
        });
        lhs.add(ratio_root * macdonald_coefficient(x, mask, ctx) * fx);

        // Symmetric form: half-power sh factors before and after the shift.
        cplx left = 1.0, right = 1.0;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j = 0; j < n; ++j) {
                if (mask & (1u << j)) continue;
                const cplx u = x[size_t(i)] - x[size_t(j)];
                left *= std::sqrt(std::sinh(a * (u - I * p.g)) / std::sinh(a * u));
                right *= continued_sqrt([&](double s) {
                    const cplx us = u + s * shift;
                    return std::sinh(a * (us + I * p.g)) / std::sinh(a * us);
                });
            }
        }
        rhs.add(left * right * fx);
    }
    const cplx L = lhs.value(), R = rhs.value();
    rep.residual = std::abs(L - R) / std::max(std::abs(R), 1e-300);
    rep.tolerance = 1e-8;
    rep.values = {{"conjugated_re", L.real()}, {"conjugated_im", L.imag()}, {"symmetric_re", R.real()},
                  {"symmetric_im", R.imag()}};
    rep.decide();
    rep.runtime_ms = elapsed_ms(t0);
    return rep;
}

} // namespace ruij

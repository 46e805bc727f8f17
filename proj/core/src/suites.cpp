#include "ruij/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

#include "ruij/double_sine.hpp"
#include "ruij/errors.hpp"
#include "ruij/inequalities.hpp"
#include "ruij/integrals.hpp"
#include "ruij/kernels.hpp"
#include "ruij/numeric.hpp"
#include "ruij/operators.hpp"
#include "ruij/wavefunction.hpp"

namespace ruij {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool is_real(const Params& p) { return p.omega1.imag() == 0.0 && p.omega2.imag() == 0.0 && p.g.imag() == 0.0; }

// Working tolerance of a check: the configured one, loosened to a hundredth of
// the acceptance tolerance where that is cheaper.
QuadratureSpec working_spec(const RunConfig& cfg, double acceptance)
{
    QuadratureSpec q = cfg.quadrature;
    q.tolerance = std::max(q.tolerance, 1e-2 * acceptance);
    return q;
}

// Seed of one suite and parameter set, independent of the order of execution.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& suite, const Params& p)
{
    std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
    for (char c : suite + "|" + describe(p)) h = (h ^ std::uint64_t(static_cast<unsigned char>(c))) * 0x100000001b3ULL;
    return h;
}

class Collector {
public:
    explicit Collector(SuiteResult& out) : out_(out) {}

    // Runs a check; errors that say the check is not defined on these
    // parameters become skips, anything else a failed report.
    void run(const std::string& check, int n, const Params& p, const std::function<VerificationReport()>& body)
    {
        const auto t0 = Clock::now();
        try {
            out_.reports.push_back(body());
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ContourViolation || e.kind() == ErrorKind::ConditionViolation) {
                out_.skipped.push_back(check + " (n=" + std::to_string(n) + ") on " + describe(p) + ": " + e.what());
                return;
            }
            fail(check, n, p, e.what(), t0);
        } catch (const std::exception& e) {
            fail(check, n, p, e.what(), t0);
        }
    }

    void skip(const std::string& check, const Params& p, const std::string& why)
    {
        out_.skipped.push_back(check + " on " + describe(p) + ": " + why);
    }

private:
    void fail(const std::string& check, int n, const Params& p, const std::string& what, Clock::time_point t0)
    {
        VerificationReport r;
        r.check = check;
        r.n = n;
        r.params = describe(p);
        r.residual = std::numeric_limits<double>::infinity();
        r.pass = false;
        r.notes = {{"error", what}};
        r.runtime_ms = elapsed_ms(t0);
        out_.reports.push_back(r);
    }

    SuiteResult& out_;
};

// Aggregates a per-point residual into one report carrying the maximum.
VerificationReport max_report(const std::string& check, int n, const Params& p, double tol, int points,
                              const std::function<double(int)>& residual)
{
    const auto t0 = Clock::now();
    VerificationReport r;
    r.check = check;
    r.n = n;
    r.params = describe(p);
    r.tolerance = tol;
    int worst = 0;
    for (int k = 0; k < points; ++k) {
        const double v = residual(k);
        if (!(v <= r.residual)) {
            r.residual = v;
            worst = k;
        }
    }
    r.values = {{"points", double(points)}, {"worst_index", double(worst)}};
    r.decide();
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// ---- s2-identities -------------------------------------------------------

bool near_lattice(cplx z, const Periods& w, double guard)
{
    for (int m = 0; m <= 40; ++m)
        for (int k = 0; k <= 40; ++k) {
            const cplx q = double(m) * w.w1 + double(k) * w.w2;
            if (std::abs(z - q) < guard || std::abs(z + q) < guard) return true;
        }
    return false;
}

std::vector<cplx> annulus_sample(const Params& p, int count, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<cplx> zs;
    while (int(zs.size()) < count) {
        const double r = rng.uniform(0.1, 3.0), t = rng.uniform(0.0, two_pi);
        const cplx z = std::polar(r, t);
        if (!near_lattice(z, p.periods(), 0.05)) zs.push_back(z);
    }
    return zs;
}

// Mean of f on a circle: the value at the centre of a function analytic in the disc.
cplx circle_mean(const std::function<cplx(cplx)>& f, cplx centre, double radius, int nodes)
{
    CompensatedSum s;
    for (int k = 0; k < nodes; ++k) s.add(f(centre + std::polar(radius, two_pi * (k + 0.5) / nodes)));
    return s.value() / double(nodes);
}

void suite_s2_identities(const RunConfig& cfg, const Params& p, Collector& out)
{
    const Periods w = p.periods();
    const auto zs = annulus_sample(p, cfg.sizes.identity_points, stream_seed(cfg.seed, "s2-identities", p));
    const int m = int(zs.size());
    out.run("s2_inversion", 0, p, [&] {
        return max_report("s2_inversion", 0, p, 1e-9, m,
                          [&](int k) { return std::abs(s2(zs[size_t(k)], w) * s2(w.w1 + w.w2 - zs[size_t(k)], w) - 1.0); });
    });
    out.run("s2_shift_first_period", 0, p, [&] {
        return max_report("s2_shift_first_period", 0, p, 1e-9, m, [&](int k) {
            const cplx z = zs[size_t(k)];
            return rel(s2(z, w) / s2(z + w.w1, w), 2.0 * std::sin(pi * z / w.w2));
        });
    });
    out.run("s2_shift_second_period", 0, p, [&] {
        return max_report("s2_shift_second_period", 0, p, 1e-9, m, [&](int k) {
            const cplx z = zs[size_t(k)];
            return rel(s2(z, w) / s2(z + w.w2, w), 2.0 * std::sin(pi * z / w.w1));
        });
    });
    out.run("s2_homogeneity", 0, p, [&] {
        const double scales[] = {0.5, 2.0, 3.7};
        return max_report("s2_homogeneity", 0, p, 1e-9, 3 * m, [&](int k) {
            const double c = scales[k % 3];
            const cplx z = zs[size_t(k / 3)];
            return rel(s2(c * z, Periods{c * w.w1, c * w.w2}), s2(z, w));
        });
    });
    out.run("s2_period_swap", 0, p, [&] {
        return max_report("s2_period_swap", 0, p, 1e-9, m,
                          [&](int k) { return rel(s2(zs[size_t(k)], Periods{w.w2, w.w1}), s2(zs[size_t(k)], w)); });
    });
    if (is_real(p)) {
        out.run("s2_conjugation", 0, p, [&] {
            return max_report("s2_conjugation", 0, p, 1e-10, m, [&](int k) {
                const cplx z = zs[size_t(k)];
                return rel(s2(std::conj(z), w), std::conj(s2(z, w)));
            });
        });
    }
    const double radius = 0.25 * std::min(std::abs(w.w1), std::abs(w.w2));
    out.run("s2_residue_origin", 0, p, [&] {
        const auto t0 = Clock::now();
        VerificationReport r;
        r.check = "s2_residue_origin";
        r.params = describe(p);
        const cplx numeric = circle_mean([&](cplx z) { return z / s2(z, w); }, 0.0, radius, 64);
        const cplx closed = std::sqrt(w.w1 * w.w2) / two_pi;
        const cplx table = s2_residue({0, 0, PoleZeroKind::Zero}, w);
        r.residual = std::max(rel(numeric, closed), rel(table, closed));
        r.tolerance = 1e-8;
        r.values = {{"numeric_re", numeric.real()}, {"numeric_im", numeric.imag()}, {"closed_re", closed.real()},
                    {"closed_im", closed.imag()}};
        r.decide();
        r.runtime_ms = elapsed_ms(t0);
        return r;
    });
    out.run("s2_residue_first_pole", 0, p, [&] {
        const auto t0 = Clock::now();
        VerificationReport r;
        r.check = "s2_residue_first_pole";
        r.params = describe(p);
        const cplx z0 = w.w1 + w.w2;
        const cplx numeric = circle_mean([&](cplx z) { return (z - z0) * s2(z, w); }, z0, radius, 64);
        const cplx table = s2_residue({1, 1, PoleZeroKind::Pole}, w);
        r.residual = rel(numeric, table);
        r.tolerance = 1e-8;
        r.values = {{"numeric_re", numeric.real()}, {"numeric_im", numeric.imag()}, {"table_re", table.real()},
                    {"table_im", table.imag()}};
        r.decide();
        r.runtime_ms = elapsed_ms(t0);
        return r;
    });
    out.run("s2_asymptotic", 0, p, [&] {
        const cplx pts[] = {{0.0, 10.0}, {0.0, -10.0}, {0.3, 12.0}, {-0.3, -12.0}};
        return max_report("s2_asymptotic", 0, p, 2e-2, 4, [&](int k) {
            const cplx z = pts[k];
            return rel(std::exp(log_s2(z, w) - log_s2(z + p.g, w)), s2_asymptotic(z, p));
        });
    });
}

// ---- kernel-bounds -------------------------------------------------------

// Least-squares slope of log|f| on [a, b].
double log_slope(const std::function<cplx(double)>& f, double a, double b, int nodes)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < nodes; ++k) {
        const double x = a + (b - a) * k / (nodes - 1);
        const double y = std::log(std::abs(f(x)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (nodes * sxy - sx * sy) / (nodes * sxx - sx * sx);
}

void suite_kernel_bounds(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    const double rate = pi * p.nu_g;
    out.run("kernel_symmetry", 0, p, [&] {
        return max_report("kernel_symmetry", 0, p, 1e-12, 8, [&](int k) {
            const double x = 0.37 + 1.23 * k;
            return rel(kernel_K(-x, ctx), kernel_K(x, ctx));
        });
    });
    out.run("kernel_at_origin", 0, p, [&] {
        return max_report("kernel_at_origin", 0, p, 1e-12, 1, [&](int) {
            const cplx s = s2(0.5 * p.gstar, p.periods());
            return rel(kernel_K(0.0, ctx), 1.0 / (s * s));
        });
    });
    out.run("kernel_decay_rate", 0, p, [&] {
        return max_report("kernel_decay_rate", 0, p, 1e-2, 2, [&](int side) {
            const double sgn = side == 0 ? 1.0 : -1.0;
            const double slope = log_slope([&](double x) { return kernel_K(sgn * x, ctx); }, 10.0, 30.0, 41);
            return std::abs(-slope / rate - 1.0);
        });
    });
    out.run("measure_growth_rate", 0, p, [&] {
        return max_report("measure_growth_rate", 0, p, 1e-2, 2, [&](int side) {
            const double sgn = side == 0 ? 1.0 : -1.0;
            const double slope = log_slope([&](double x) { return measure_mu(sgn * x, ctx); }, 10.0, 30.0, 41);
            return std::abs(slope / rate - 1.0);
        });
    });
    if (is_real(p)) {
        out.run("measure_product_nonnegative", 0, p, [&] {
            Rng rng(stream_seed(cfg.seed, "kernel-bounds", p));
            return max_report("measure_product_nonnegative", 0, p, 1e-12, 10000, [&](int k) {
                const int n = 2 + k % 3;
                Tuple x;
                for (int i = 0; i < n; ++i) x.emplace_back(rng.uniform(-3.0, 3.0), 0.0);
                const cplx v = product_mu(x, ctx);
                return (std::abs(v.imag()) + std::max(0.0, -v.real())) / std::abs(v);
            });
        });
    } else {
        out.skip("measure_product_nonnegative", p, "needs real parameters");
    }
}

// ---- fourier -------------------------------------------------------------

void suite_fourier(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    const QuadratureSpec q = working_spec(cfg, 1e-8);
    const cplx lambdas[] = {0.0, 0.3, 1.0, cplx(0.3, 0.1 * p.nu_g)};
    out.run("kernel_fourier", 1, p, [&] {
        const auto t0 = Clock::now();
        VerificationReport worst;
        for (const cplx l : lambdas) {
            VerificationReport r = kernel_fourier_check(l, ctx, q);
            if (!(r.residual <= worst.residual) || worst.check.empty()) worst = r;
        }
        worst.values.insert(worst.values.begin(), {"points", 4.0});
        worst.runtime_ms = elapsed_ms(t0);
        return worst;
    });
}

// ---- basic-integrals -----------------------------------------------------

Tuple random_tuple(Rng& rng, int n, double imag)
{
    Tuple t;
    for (int i = 0; i < n; ++i) t.emplace_back(rng.uniform(-0.5, 0.5), imag);
    return t;
}

void suite_basic_integrals(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    const QuadratureSpec q1 = working_spec(cfg, 1e-8), q2 = working_spec(cfg, 1e-5);
    Rng rng(stream_seed(cfg.seed, "basic-integrals", p));
    const double shift = 0.2 * p.nu_g;
    for (int s = 0; s < cfg.sizes.integral_tuples; ++s) {
        const Tuple g1 = random_tuple(rng, 1, 0.0), g2 = random_tuple(rng, 2, 0.0);
        const Tuple l1 = random_tuple(rng, 1, shift), l2 = random_tuple(rng, 2, shift), l3 = random_tuple(rng, 3, shift);
        const double x = rng.uniform(-1.0, 1.0);
        out.run("integral_J", 1, p, [&] { return integral_J_check(g1, l1, x, ctx, q1); });
        out.run("integral_I", 1, p, [&] { return integral_I_check(g1, l2, x, ctx, q1); });
        out.run("integral_J", 2, p, [&] { return integral_J_check(g2, l2, x, ctx, q2); });
        out.run("integral_I", 2, p, [&] { return integral_I_check(g2, l3, x, ctx, q2); });
        out.run("recurrence_I", 1, p, [&] { return recurrence_check_I(g1, l2, x, ctx, q2); });
        out.run("recurrence_J", 2, p, [&] { return recurrence_check_J(g2, l2, x, ctx, q2); });
    }
}

// ---- eigen-macdonald -----------------------------------------------------

void suite_eigen_macdonald(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    const QuadratureSpec q = cfg.quadrature;
    const cplx param(0.7, 0.1);
    out.run("macdonald_eigen", 1, p,
            [&] { return macdonald_eigen_check(real_tuple({0.2}), real_tuple({0.4}), param, ctx, q); });
    out.run("macdonald_eigen", 2, p, [&] {
        return macdonald_eigen_check(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), param, ctx, q);
    });
    out.run("macdonald_eigen", 3, p, [&] {
        return macdonald_eigen_check(real_tuple({0.2, -0.1, 0.05}), real_tuple({0.4, 0.0, -0.3}), param, ctx, q);
    });
    out.run("dual_macdonald_eigen", 2, p, [&] {
        return dual_macdonald_eigen_check(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), param, ctx, q);
    });
    const TestFunction gauss = TestFunction::gaussian(0.0, 1.0);
    const TupleFunction f = [gauss](const Tuple& x) { return gauss(x); };
    for (int r = 1; r <= 2; ++r)
        out.run("gauge_conjugation", 2, p,
                [&] { return gauge_conjugation_check(r, f, real_tuple({0.3, -0.2}), ctx); });
}

// ---- eigen-baxter --------------------------------------------------------

void suite_eigen_baxter(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    const QuadratureSpec q = working_spec(cfg, 1e-6);
    const cplx param(0.15, 0.0);
    out.run("baxter_eigen", 1, p,
            [&] { return baxter_eigen_check(real_tuple({0.2}), real_tuple({0.4}), param, ctx, q); });
    out.run("baxter_eigen", 2, p, [&] {
        return baxter_eigen_check(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), param, ctx, q);
    });
    out.run("dual_baxter_eigen", 2, p, [&] {
        return dual_baxter_eigen_check(real_tuple({0.2, -0.1}), real_tuple({0.4, 0.0}), param, ctx, q);
    });
    const TestFunction gauss = TestFunction::gaussian(0.0, 1.0);
    const TupleFunction f = [gauss](const Tuple& x) { return gauss(x); };
    out.run("baxter_commutativity", 1, p,
            [&] { return baxter_commutativity_check(0.15, -0.25, f, 0.3, ctx, q, FunctionBounds{1e9, 0.0, 8.0}); });
}

// ---- duality -------------------------------------------------------------

void suite_duality(const RunConfig& cfg, const Params& p, Collector& out)
{
    const KernelContext ctx(p);
    QuadratureSpec q = default_psi_spec(2);
    q.tolerance = working_spec(cfg, 1e-5).tolerance;
    Rng rng(stream_seed(cfg.seed, "duality", p));
    std::vector<std::pair<Tuple, Tuple>> pts;
    for (int k = 0; k < cfg.sizes.duality_points; ++k) {
        Tuple l = random_tuple(rng, 2, 0.0), x = random_tuple(rng, 2, 0.0);
        pts.emplace_back(l, x);
    }
    out.run("duality", 2, p, [&] {
        return max_report("duality", 2, p, 1e-4, int(pts.size()), [&](int k) {
            const auto& [l, x] = pts[size_t(k)];
            return rel(psi_dual(l, x, ctx, q), psi(l, x, ctx, q));
        });
    });
}

// ---- delta-sequence ------------------------------------------------------

void suite_delta_sequence(const RunConfig& cfg, const Params& p, Collector& out)
{
    if (!is_real(p)) {
        out.skip("delta_sequence", p, "needs real parameters");
        return;
    }
    const KernelContext ctx(p);
    const QuadratureSpec q = cfg.quadrature;
    const TestFunction phi = TestFunction::gaussian(0.2, 0.3);
    const RegularizationSchedule schedule;
    out.run("delta_sequence", 1, p, [&] { return delta_sequence_test(phi, real_tuple({0.1}), schedule, ctx, q); });
    out.run("delta_sequence_off_support", 1, p, [&] {
        VerificationReport r = delta_sequence_test(phi, real_tuple({3.0}), schedule, ctx, q);
        r.check = "delta_sequence_off_support";
        return r;
    });
    out.run("delta_sequence", 2, p,
            [&] { return delta_sequence_test(phi, real_tuple({0.1, 0.3}), schedule, ctx, q); });
}

// ---- plancherel ----------------------------------------------------------

void suite_plancherel(const RunConfig& cfg, const Params& p, Collector& out)
{
    if (!is_real(p)) {
        out.skip("plancherel", p, "needs real parameters");
        return;
    }
    const KernelContext ctx(p);
    const QuadratureSpec q = cfg.quadrature;
    for (const auto& phi : TestFunction::catalog()) out.run("plancherel", 1, p, [&] { return plancherel_check(phi, 1, ctx, q); });
    std::vector<double> points;
    for (int k = 0; k < 10; ++k) points.push_back(-0.6 + 0.12 * k + 0.01);
    out.run("inversion", 1, p,
            [&] { return inversion_check(TestFunction::catalog().front(), points, ctx, q); });
    out.run("plancherel", 2, p, [&] { return plancherel_check(TestFunction::gaussian(0.2, 0.3), 2, ctx, q); });
}

// ---- inequalities --------------------------------------------------------

void suite_inequalities(const RunConfig& cfg, SuiteResult& res)
{
    for (int n : cfg.sizes.inequality_n)
        for (double box : cfg.sizes.inequality_boxes) {
            InequalityRun run;
            run.n = n;
            run.samples = cfg.sizes.inequality_samples;
            run.seed = cfg.seed + std::uint64_t(n) * 1000003ULL + std::uint64_t(box);
            run.sampler.box = box;
            for (double eps : {0.0, 0.5, 2.0 * (n - 1)}) res.reports.push_back(check_S_bound(run, eps));
            res.reports.push_back(check_L_nonpositive(run));
            for (double eps : {0.0, 0.5, 1.0}) res.reports.push_back(check_R_bound(run, eps));
            res.reports.push_back(check_L_R_symmetries(run));
        }
}

using PerParams = void (*)(const RunConfig&, const Params&, Collector&);

struct Entry {
    const char* name;
    PerParams body; // null for the parameter-free inequalities
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> r = {
        {"s2-identities", suite_s2_identities}, {"kernel-bounds", suite_kernel_bounds},
        {"fourier", suite_fourier},             {"basic-integrals", suite_basic_integrals},
        {"eigen-macdonald", suite_eigen_macdonald}, {"eigen-baxter", suite_eigen_baxter},
        {"duality", suite_duality},             {"delta-sequence", suite_delta_sequence},
        {"plancherel", suite_plancherel},       {"inequalities", nullptr},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : registry()) v.emplace_back(e.name);
        v.emplace_back("all");
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name)
{
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteResult run_suite(const std::string& name, const RunConfig& config)
{
    if (!is_suite(name)) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
    config.quadrature.check();
    if (config.params.empty()) throw Error(ErrorKind::ConfigError, "no parameter sets configured");
    SuiteResult res;
    Collector out(res);
    for (const auto& e : registry()) {
        if (name != "all" && name != e.name) continue;
        if (e.body == nullptr) {
            suite_inequalities(config, res);
            continue;
        }
        for (const auto& p : config.params) e.body(config, p, out);
    }
    return res;
}

std::string csv_header() { return "check,n,params,residual,tolerance,pass,runtime_ms"; }

std::string csv_row(const VerificationReport& r)
{
    char buf[128];
    std::string out = r.check + "," + std::to_string(r.n) + ",";
    // Custom parameter descriptions use ';' separators, never commas.
    out += r.params + ",";
    std::snprintf(buf, sizeof buf, "%.6e,%.3e,%s,%.3f", r.residual, r.tolerance, r.pass ? "true" : "false",
                  r.runtime_ms);
    return out + buf;
}

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports)
{
    os << csv_header() << '\n';
    for (const auto& r : reports) os << csv_row(r) << '\n';
}

} // namespace ruij

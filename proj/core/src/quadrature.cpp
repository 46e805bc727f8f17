#include "ruij/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "ruij/errors.hpp"
#include "ruij/numeric.hpp"

namespace ruij {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand1D& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    cplx fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - hl * xgk[j]);
        fv[14 - j] = f(c + hl * xgk[j]);
    }
    cplx rk = wgk[7] * fv[7];
    cplx rg = wg[3] * fv[7];
    double resabs = wgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        rk += wgk[j] * (fv[j] + fv[14 - j]);
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) rg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }
    const cplx mean = 0.5 * rk;
    double resasc = wgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    resabs *= std::abs(hl);
    resasc *= std::abs(hl);
    double err = std::abs((rk - rg) * hl);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, rk * hl, err};
}

IntegralResult tanh_sinh(const Integrand1D& f, double a, double b, double tol, long max_nodes)
{
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double tmax = 3.2;
    auto node = [&](double t, cplx& val) {
        const double s = 0.5 * pi * std::sinh(t);
        const double ch = std::cosh(s);
        const double x = std::tanh(s);
        const double w = 0.5 * pi * std::cosh(t) / (ch * ch);
        if (w < 1e-300) {
            val = 0.0;
            return;
        }
        val = w * f(c + hw * x);
    };
    long nodes = 0;
    CompensatedSum s0;
    cplx v;
    for (int j = -int(tmax); j <= int(tmax); ++j) {
        node(double(j), v);
        s0.add(v);
        ++nodes;
    }
    double h = 1.0;
    cplx prev = s0.value() * h * hw;
    CompensatedSum total = s0;
    double err = std::numeric_limits<double>::infinity();
    cplx cur = prev;
    for (int level = 1; level <= 14; ++level) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            node(t, v);
            total.add(v);
            node(-t, v);
            total.add(v);
            nodes += 2;
        }
        cur = total.value() * h * hw;
        err = std::abs(cur - prev);
        if (level >= 3 && err <= tol) break;
        if (nodes > max_nodes) break;
        prev = cur;
    }
    return {cur, err + 10.0 * eps * std::abs(cur), nodes, 0.0};
}

IntegralResult monte_carlo_box(const IntegrandND& f, int dims, double lo, double hi, long budget,
                               std::uint64_t seed)
{
    int m = std::max(2, int(std::floor(std::pow(double(std::max<long>(budget, 2)), 1.0 / dims))));
    if (m % 2) --m;
    long cells = 1;
    for (int d = 0; d < dims; ++d) cells *= m;
    const double width = (hi - lo) / m;
    const double vol = std::pow(width, dims);
    Rng rng(seed);
    std::vector<cplx> vals(cells);
    std::vector<double> x(dims);
    for (long cell = 0; cell < cells; ++cell) {
        long rem = cell;
        for (int d = 0; d < dims; ++d) {
            const int idx = int(rem % m);
            rem /= m;
            x[d] = lo + (idx + rng.uniform()) * width;
        }
        vals[cell] = f(x);
    }
    CompensatedSum s;
    double var = 0.0;
    for (long cell = 0; cell < cells; cell += 2) {
        s.add(vals[cell] + vals[cell + 1]);
        var += std::norm(vals[cell] - vals[cell + 1]);
    }
    return {s.value() * vol, std::sqrt(var) * vol, cells, 0.5 * (hi - lo)};
}

} // namespace

Scheme parse_scheme(const std::string& name)
{
    if (name == "adaptive-gauss") return Scheme::AdaptiveGauss;
    if (name == "tanh-sinh") return Scheme::TanhSinh;
    if (name == "monte-carlo") return Scheme::MonteCarlo;
    if (name == "trapezoid") return Scheme::Trapezoid;
    throw Error(ErrorKind::ConfigError, "unknown quadrature scheme '" + name + "'");
}

std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::AdaptiveGauss: return "adaptive-gauss";
    case Scheme::TanhSinh: return "tanh-sinh";
    case Scheme::MonteCarlo: return "monte-carlo";
    case Scheme::Trapezoid: return "trapezoid";
    }
    return "unknown";
}

void QuadratureSpec::check() const
{
    if (!(tolerance > 0.0)) throw Error(ErrorKind::ConfigError, "quadrature tolerance must be > 0");
    if (max_nodes < 15) throw Error(ErrorKind::ConfigError, "quadrature max_nodes must be >= 15");
    if (truncation_radius && !(*truncation_radius > 0.0))
        throw Error(ErrorKind::ConfigError, "manual truncation radius must be > 0");
}

double truncation_radius(double decay_rate, double amplitude, double tol)
{
    if (!(decay_rate > 0.0)) throw Error(ErrorKind::NonPositiveDecay, "decay rate must be positive");
    const double r = std::log(10.0 * amplitude / (decay_rate * tol)) / decay_rate;
    return std::max(r, 0.0);
}

IntegralResult integrate_interval(const Integrand1D& f, double a, double b, double tol, long max_nodes,
                                  int initial_panels)
{
    std::priority_queue<Panel> heap;
    double total_err = 0.0;
    long nodes = 0;
    const int np = std::max(1, initial_panels);
    for (int i = 0; i < np; ++i) {
        const double lo = a + (b - a) * i / np;
        const double hi = (i + 1 == np) ? b : a + (b - a) * (i + 1) / np;
        Panel p = gauss_kronrod(f, lo, hi);
        nodes += 15;
        total_err += p.error;
        heap.push(p);
    }
    while (total_err > tol && nodes + 30 <= max_nodes) {
        Panel worst = heap.top();
        if (worst.b - worst.a < 1e-12 * std::max(1.0, std::abs(b - a))) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = gauss_kronrod(f, worst.a, mid);
        Panel r = gauss_kronrod(f, mid, worst.b);
        nodes += 30;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum s;
    double err = 0.0;
    for (const auto& p : panels) {
        s.add(p.value);
        err += p.error;
    }
    return {s.value(), err, nodes, 0.5 * (b - a)};
}

IntegralResult integrate_1d(const Integrand1D& f, const QuadratureSpec& spec, const Envelope& env)
{
    spec.check();
    const double radius = spec.truncation_radius
        ? *spec.truncation_radius
        : truncation_radius(env.decay_rate, env.amplitude, spec.tolerance);
    const double tail = env.amplitude * std::exp(-env.decay_rate * radius) / env.decay_rate;
    const double a = env.center - radius, b = env.center + radius;
    const double work_tol = 0.9 * spec.tolerance;

    IntegralResult res;
    switch (spec.scheme) {
    case Scheme::AdaptiveGauss: {
        const int osc = int(std::ceil(std::max(1.0, std::abs(env.frequency) * radius / 6.0)));
        res = integrate_interval(f, a, b, work_tol, spec.max_nodes, 2 * osc);
        break;
    }
    case Scheme::TanhSinh: {
        const IntegralResult l = tanh_sinh(f, a, env.center, 0.5 * work_tol, spec.max_nodes / 2);
        const IntegralResult r = tanh_sinh(f, env.center, b, 0.5 * work_tol, spec.max_nodes / 2);
        res = {l.value + r.value, l.error_estimate + r.error_estimate, l.nodes_used + r.nodes_used, 0.0};
        break;
    }
    case Scheme::MonteCarlo: {
        auto g = [&](const std::vector<double>& x) { return f(x[0]); };
        res = monte_carlo_box(g, 1, a, b, spec.max_nodes, spec.seed);
        break;
    }
    case Scheme::Trapezoid: {
        Envelope e = env;
        TrapezoidPlan plan = plan_trapezoid(0.5, e, spec.tolerance);
        plan.radius = radius;
        res = trapezoid_1d(f, plan, env.center);
        break;
    }
    }
    res.error_estimate += tail;
    res.truncation_radius_used = radius;
    if (spec.scheme != Scheme::MonteCarlo && !(res.error_estimate <= spec.tolerance)) {
        std::ostringstream os;
        os << "error estimate " << res.error_estimate << " above tolerance " << spec.tolerance << " after "
           << res.nodes_used << " nodes";
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return res;
}

IntegralResult integrate_nd(const IntegrandND& f, int dims, const QuadratureSpec& spec, const Envelope& env)
{
    spec.check();
    if (dims < 1) throw Error(ErrorKind::ShapeMismatch, "integrate_nd needs dims >= 1");
    if (dims > 8) throw Error(ErrorKind::DimensionTooLarge, "integrate_nd supports at most 8 dimensions");
    double radius = spec.truncation_radius
        ? *spec.truncation_radius
        : truncation_radius(env.decay_rate, env.amplitude, spec.tolerance);

    if (dims >= 4 || spec.scheme == Scheme::MonteCarlo) {
        auto shifted = [&](const std::vector<double>& x) {
            std::vector<double> y(x);
            for (auto& v : y) v += env.center;
            return f(y);
        };
        IntegralResult r = monte_carlo_box(shifted, dims, -radius, radius, spec.max_nodes, spec.seed);
        r.truncation_radius_used = radius;
        return r;
    }

    // Tensor rule: nested 1D integrations, innermost coordinate last. The box
    // is sized for the inner tolerance so the inner tails fit its budget.
    QuadratureSpec inner = spec;
    inner.tolerance = spec.tolerance / (2.0 * radius + 1.0);
    if (!spec.truncation_radius) {
        for (int it = 0; it < 3; ++it) {
            radius = truncation_radius(env.decay_rate, env.amplitude, inner.tolerance);
            inner.tolerance = spec.tolerance / (2.0 * radius + 1.0);
        }
    }
    inner.truncation_radius = radius;
    long nodes = 0;
    double err_acc = 0.0;
    std::function<cplx(std::vector<double>&, int)> level = [&](std::vector<double>& x, int d) -> cplx {
        auto g = [&](double t) {
            x[d] = t;
            if (d + 1 == dims) {
                ++nodes;
                return f(x);
            }
            return level(x, d + 1);
        };
        QuadratureSpec s = (d == 0) ? spec : inner;
        s.truncation_radius = radius;
        const IntegralResult r = integrate_1d(g, s, env);
        if (d == 0) err_acc = r.error_estimate;
        return r.value;
    };
    std::vector<double> x(dims, 0.0);
    const cplx v = level(x, 0);
    const double inner_err = (dims > 1) ? inner.tolerance * 2.0 * radius : 0.0;
    return {v, err_acc + inner_err, nodes, radius};
}

TrapezoidPlan plan_trapezoid(double strip_halfwidth, const Envelope& env, double tol)
{
    if (!(strip_halfwidth > 0.0))
        throw Error(ErrorKind::StripViolation, "trapezoid rule needs a positive analyticity strip");
    const double d = 0.85 * strip_halfwidth;
    const double logc = std::log(10.0 * std::max(env.amplitude, 1e-300) / tol);
    const double h = 1.0 / (std::abs(env.frequency) + std::max(logc, 1.0) / (two_pi * d));
    const double radius = truncation_radius(env.decay_rate, env.amplitude, tol);
    return {h, radius};
}

double trapezoid_error(cplx fine, cplx coarse, double abs_sum)
{
    const double delta = std::abs(fine - coarse);
    // Halving the step roughly squares the error of an exponentially
    // convergent trapezoid rule, relative to the size of the integrand rather
    // than of the (possibly cancelling) integral.
    const double scale = std::max({std::abs(fine), abs_sum, 1e-300});
    return std::min(delta, 10.0 * delta * delta / scale) + 20.0 * eps * abs_sum;
}

IntegralResult trapezoid_1d(const Integrand1D& f, const TrapezoidPlan& plan, double center)
{
    const long n = long(std::ceil(plan.radius / plan.h));
    CompensatedSum fine, coarse;
    double abs_sum = 0.0;
    for (long k = -n; k <= n; ++k) {
        const cplx v = f(center + k * plan.h);
        fine.add(v);
        if (k % 2 == 0) coarse.add(v);
        abs_sum += std::abs(v);
    }
    const cplx vf = fine.value() * plan.h;
    const cplx vc = coarse.value() * (2.0 * plan.h);
    return {vf, trapezoid_error(vf, vc, abs_sum * plan.h), 2 * n + 1, n * plan.h};
}

NodeRule graded_rule(double a, double b, std::vector<double> breakpoints, double finest, double max_panel)
{
    if (!(b > a) || !(finest > 0.0) || !(max_panel >= finest))
        throw Error(ErrorKind::ConfigError, "invalid graded rule");
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto graded = [&](double x) { return x != a && x != b; };

    std::vector<double> edges{a};
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s], hi = cuts[s + 1];
        std::vector<double> left, right;
        double l = lo, r = hi;
        double sl = graded(lo) ? finest : max_panel;
        double sr = graded(hi) ? finest : max_panel;
        while (r - l > sl + sr) {
            if (sl <= sr) {
                l += sl;
                left.push_back(l);
                sl = std::min(2.0 * sl, max_panel);
            } else {
                r -= sr;
                right.push_back(r);
                sr = std::min(2.0 * sr, max_panel);
            }
        }
        edges.insert(edges.end(), left.begin(), left.end());
        const int mid = std::max(1, int(std::ceil((r - l) / max_panel)));
        for (int k = 1; k < mid; ++k) edges.push_back(l + (r - l) * k / mid);
        edges.insert(edges.end(), right.rbegin(), right.rend());
        edges.push_back(hi);
    }

    NodeRule rule;
    rule.nodes.reserve(15 * edges.size());
    rule.weights.reserve(15 * edges.size());
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double c = 0.5 * (edges[e] + edges[e + 1]);
        const double hl = 0.5 * (edges[e + 1] - edges[e]);
        for (int j = 0; j < 7; ++j) {
            rule.nodes.push_back(c - hl * xgk[j]);
            rule.weights.push_back(hl * wgk[j]);
        }
        rule.nodes.push_back(c);
        rule.weights.push_back(hl * wgk[7]);
        for (int j = 6; j >= 0; --j) {
            rule.nodes.push_back(c + hl * xgk[j]);
            rule.weights.push_back(hl * wgk[j]);
        }
    }
    return rule;
}

} // namespace ruij

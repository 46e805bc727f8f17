#include "ruij/inequalities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "ruij/errors.hpp"
#include "ruij/numeric.hpp"

namespace ruij {

namespace {

using Clock = std::chrono::steady_clock;

constexpr long block_size = 4096;
constexpr double slack_ulps = 64.0;

double pair_sum_abs(const std::vector<double>& v)
{
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) s += std::abs(v[i] - v[j]);
    return s;
}

double cross_sum_abs(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (double x : a)
        for (double y : b) s += std::abs(x - y);
    return s;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double factorial(int k) { return std::tgamma(double(k) + 1.0); }

std::vector<double> draw(Rng& rng, int count, const SamplerOptions& opt, bool cluster, double centre)
{
    std::vector<double> v(static_cast<size_t>(count));
    for (auto& x : v)
        x = cluster ? centre + rng.uniform(-opt.cluster_spread, opt.cluster_spread) : rng.uniform(-opt.box, opt.box);
    return v;
}

// One sample of the run: fills the tuples it is asked for from a generator
// keyed by (seed, block); returns the excess of lhs over rhs and the scale of
// the terms involved.
struct Outcome {
    double excess;
    double scale;
};

using SampleFn = std::function<Outcome(Rng&, bool cluster, double centre)>;

VerificationReport run_property(const std::string& check, const InequalityRun& run, const SampleFn& sample)
{
    const auto t0 = Clock::now();
    if (run.n < 1) throw Error(ErrorKind::ShapeMismatch, "inequality checks need n >= 1");
    if (run.samples < 1) throw Error(ErrorKind::ConfigError, "sample count must be positive");
    const long blocks = (run.samples + block_size - 1) / block_size;
    std::vector<long> violations(static_cast<size_t>(blocks), 0);
    std::vector<double> worst(static_cast<size_t>(blocks), -std::numeric_limits<double>::infinity());
    parallel_for(int(blocks), [&](int b) {
        Rng rng(run.seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(b) + 1);
        const long begin = b * block_size, end = std::min(run.samples, begin + block_size);
        for (long s = begin; s < end; ++s) {
            const bool cluster = rng.uniform() < run.sampler.cluster_fraction;
            const double centre = rng.uniform(-run.sampler.box, run.sampler.box);
            const Outcome o = sample(rng, cluster, centre);
            const double allowed = slack_ulps * std::numeric_limits<double>::epsilon() * std::max(o.scale, 1e-300);
            if (o.excess > allowed) ++violations[size_t(b)];
            worst[size_t(b)] = std::max(worst[size_t(b)], o.excess / std::max(o.scale, 1e-300));
        }
    });
    VerificationReport rep;
    rep.check = check;
    rep.n = run.n;
    rep.params = "none";
    const long total = std::accumulate(violations.begin(), violations.end(), 0L);
    rep.residual = double(total);
    rep.tolerance = 0.0;
    rep.values = {{"samples", double(run.samples)}, {"violations", double(total)},
                  {"max_relative_excess", *std::max_element(worst.begin(), worst.end())},
                  {"box", run.sampler.box}};
    rep.decide();
    rep.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return rep;
}

} // namespace

double l1_norm(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double eval_S(const Layers& layers)
{
    for (size_t k = 0; k < layers.size(); ++k)
        if (layers[k].size() != k + 1) {
            std::ostringstream os;
            os << "layer " << k << " has " << layers[k].size() << " entries, expected " << k + 1;
            throw Error(ErrorKind::ShapeMismatch, os.str());
        }
    double s = 0.0;
    for (size_t k = 1; k < layers.size(); ++k)
        s += 2.0 * pair_sum_abs(layers[k]) - cross_sum_abs(layers[k], layers[k - 1]);
    return s;
}

double S_bound(const Layers& layers, double eps)
{
    const int n = int(layers.size());
    if (n < 1) throw Error(ErrorKind::ShapeMismatch, "S needs at least one layer");
    if (!(eps >= 0.0 && eps <= 2.0 * (n - 1)))
        throw Error(ErrorKind::ConditionViolation, "eps must lie in [0, 2(n - 1)]");
    const auto& x = layers.back();
    double inner = 0.0;
    for (int k = 0; k + 1 < n; ++k) inner += l1_norm(layers[size_t(k)]);
    return pair_sum_abs(x) + eps * l1_norm(x) - eps / (factorial(n - 1) * std::exp(1.0)) * inner;
}

double eval_L(const std::vector<double>& y, const std::vector<double>& x)
{
    if (x.size() != y.size() + 1) throw Error(ErrorKind::ShapeMismatch, "L needs |x| = |y| + 1");
    return pair_sum_abs(x) + pair_sum_abs(y) - cross_sum_abs(x, y);
}

double eval_R(const std::vector<double>& y, const std::vector<double>& x)
{
    if (x.size() != y.size()) throw Error(ErrorKind::ShapeMismatch, "R needs |x| = |y|");
    return pair_sum_abs(x) + pair_sum_abs(y) - cross_sum_abs(x, y);
}

VerificationReport check_S_bound(const InequalityRun& run, double eps)
{
    const int n = run.n;
    if (!(eps >= 0.0 && eps <= 2.0 * (n - 1)))
        throw Error(ErrorKind::ConditionViolation, "eps must lie in [0, 2(n - 1)]");
    VerificationReport rep = run_property("S_bound", run, [&](Rng& rng, bool cluster, double centre) {
        Layers layers;
        double scale = 0.0;
        for (int k = 1; k <= n; ++k) {
            layers.push_back(draw(rng, k, run.sampler, cluster, centre));
            scale = std::max(scale, max_abs(layers.back()));
        }
        // Every term is a sum of at most 4 n^2 absolute values bounded by 2 scale.
        return Outcome{eval_S(layers) - S_bound(layers, eps), 8.0 * n * n * scale * (1.0 + eps)};
    });
    rep.values.emplace_back("eps", eps);
    return rep;
}

VerificationReport check_L_nonpositive(const InequalityRun& run)
{
    const int n = run.n;
    return run_property("L_nonpositive", run, [&](Rng& rng, bool cluster, double centre) {
        const auto y = draw(rng, n, run.sampler, cluster, centre);
        const auto x = draw(rng, n + 1, run.sampler, cluster, centre);
        const double scale = std::max(max_abs(x), max_abs(y));
        return Outcome{eval_L(y, x), 4.0 * (n + 1) * (n + 1) * scale};
    });
}

VerificationReport check_R_bound(const InequalityRun& run, double eps)
{
    const int n = run.n;
    if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorKind::ConditionViolation, "eps must lie in [0, 1]");
    VerificationReport rep = run_property("R_bound", run, [&](Rng& rng, bool cluster, double centre) {
        const auto y = draw(rng, n, run.sampler, cluster, centre);
        const auto x = draw(rng, n, run.sampler, cluster, centre);
        const double scale = std::max(max_abs(x), max_abs(y));
        return Outcome{eval_R(y, x) - eps * (l1_norm(y) - l1_norm(x)), 4.0 * (n + 1) * (n + 1) * scale};
    });
    rep.values.emplace_back("eps", eps);
    return rep;
}

VerificationReport check_L_R_symmetries(const InequalityRun& run)
{
    const int n = run.n;
    return run_property("L_R_symmetries", run, [&](Rng& rng, bool cluster, double centre) {
        auto y = draw(rng, n, run.sampler, cluster, centre);
        auto x = draw(rng, n + 1, run.sampler, cluster, centre);
        auto xr = draw(rng, n, run.sampler, cluster, centre);
        const double c = rng.uniform(0.125, 8.0);
        const double l0 = eval_L(y, x), r0 = eval_R(y, xr);

        auto permuted = [&](std::vector<double> v) {
            for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[size_t(rng.next() % i)]);
            return v;
        };
        auto scaled = [&](std::vector<double> v) {
            for (auto& e : v) e *= c;
            return v;
        };
        double dev = 0.0;
        dev = std::max(dev, std::abs(eval_L(permuted(y), permuted(x)) - l0));
        dev = std::max(dev, std::abs(eval_R(permuted(y), permuted(xr)) - r0));
        dev = std::max(dev, std::abs(eval_L(scaled(y), scaled(x)) - c * l0));
        dev = std::max(dev, std::abs(eval_R(scaled(y), scaled(xr)) - c * r0));
        const double scale = std::max({max_abs(x), max_abs(y), max_abs(xr)});
        return Outcome{dev, 4.0 * (n + 1) * (n + 1) * scale * 8.0};
    });
}

} // namespace ruij

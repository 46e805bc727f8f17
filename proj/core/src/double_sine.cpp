#include "ruij/double_sine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ruij/errors.hpp"
#include "ruij/numeric.hpp"
#include "ruij/quadrature.hpp"

namespace ruij {

namespace {

constexpr int series_terms = 13;
constexpr double series_radius = 0.5; // max(|a|,|b|,|c|) * t1
constexpr double de_step_initial = 1.0 / 6.0;
constexpr int de_levels = 6;

// Taylor coefficients of sinh(x)/x and x/sinh(x) in powers of x^2.
struct SeriesTables {
    std::array<double, series_terms> sinhc{};
    std::array<double, series_terms> cosech{};

    SeriesTables()
    {
        // Even Bernoulli numbers B_0 .. B_24.
        const std::array<double, series_terms> bern = {
            1.0, 1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0,
            7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0, 854513.0 / 138.0,
            -236364091.0 / 2730.0};
        double fact = 1.0; // (2k)!
        for (int k = 0; k < series_terms; ++k) {
            if (k > 0) fact *= (2.0 * k - 1.0) * (2.0 * k);
            sinhc[k] = 1.0 / (fact * (2.0 * k + 1.0));
            const double p = std::ldexp(1.0, 2 * k);
            cosech[k] = k == 0 ? 1.0 : -(p - 2.0) * bern[k] / fact;
        }
    }
};

const SeriesTables& tables()
{
    static const SeriesTables t;
    return t;
}

// e^{k t} / (t (1 - e^{-2bt}) (1 - e^{-2ct})), i.e. e^{±at}/(4 t sinh(bt) sinh(ct)).
inline cplx ray_integrand(cplx t, cplx k, cplx b, cplx c)
{
    return std::exp(k * t) / (t * (-expm1(-2.0 * b * t)) * (-expm1(-2.0 * c * t)));
}

// Exp-sinh quadrature of ray_integrand from t1 to infinity along direction
// e^{iθ}, with θ chosen to damp the oscillation and clipped so that no pole
// of the sinh factors is swept by the rotation. Steps are refined by halving;
// each level only adds the odd nodes.
class Ray {
public:
    Ray(cplx k, cplx b, cplx c, double t1, double theta_max) : k_(k), b_(b), c_(c), t1_(t1)
    {
        double theta = pi - std::arg(k);
        if (theta > pi) theta -= two_pi;
        theta = std::clamp(theta, -theta_max, theta_max);
        dir_ = std::polar(1.0, theta);
    }

    // Sum over nodes j*h for j with the given parity filter (all when odd_only is false).
    void add_level(double h, bool odd_only)
    {
        if (!odd_only) add(0.0);
        for (int sign : {1, -1}) {
            int small = 0;
            for (int j = 1; j < 20000; ++j) {
                if (odd_only && j % 2 == 0) continue;
                const double u = sign * j * h;
                const double af = add(u);
                if (!std::isfinite(af)) break;
                if (af < 1e-18 * std::abs(sum_.value())) {
                    if (++small >= 3) break;
                } else {
                    small = 0;
                }
                // Beyond this point e^{kt} underflows; the exp-sinh map is far out.
                if (sign > 0 && t1_ * std::exp(0.5 * pi * std::sinh(u)) > 1e6) break;
            }
        }
        h_ = h;
    }

    cplx value() const { return sum_.value() * h_; }
    double abs_sum() const { return abs_ * h_; }
    int nodes() const { return nodes_; }

private:
    double add(double u)
    {
        const double e = std::exp(0.5 * pi * std::sinh(u));
        const double r = t1_ * e;
        const double wgt = t1_ * 0.5 * pi * std::cosh(u) * e;
        ++nodes_;
        const cplx f = wgt * ray_integrand(t1_ + r * dir_, k_, b_, c_) * dir_;
        const double af = std::abs(f);
        if (std::isfinite(af)) {
            sum_.add(f);
            abs_ += af;
        }
        return af;
    }

    cplx k_, b_, c_, dir_;
    double t1_;
    double h_ = 1.0;
    CompensatedSum sum_;
    double abs_ = 0.0;
    int nodes_ = 0;
};

// log(2 sin w), stable for large |Im w|; the branch is irrelevant to callers.
cplx log_2sin(cplx w)
{
    if (w.imag() > 15.0) {
        // 2 sin w = i e^{-iw} (1 - e^{2iw})
        return cplx(0.0, 0.5 * pi) - I * w + log1p(-std::exp(2.0 * I * w));
    }
    if (w.imag() < -15.0) {
        // 2 sin w = -i e^{iw} (1 - e^{-2iw})
        return cplx(0.0, -0.5 * pi) + I * w + log1p(-std::exp(-2.0 * I * w));
    }
    return std::log(2.0 * std::sin(w));
}

double theta_limit(const Periods& w)
{
    const double spread = std::max(std::abs(std::arg(w.w1)), std::abs(std::arg(w.w2)));
    return std::min(0.25 * pi, 0.5 * (0.5 * pi - spread));
}

} // namespace

StripEstimate log_s2_strip_estimate(cplx z, const Periods& w)
{
    const cplx b = w.w1;
    const cplx c = w.w2;
    const cplx a = 2.0 * z - b - c;
    const double reb = b.real() + c.real();
    if (!(z.real() > 0.0 && z.real() < reb)) {
        std::ostringstream os;
        os << "Re z = " << z.real() << " outside (0, " << reb << ")";
        throw Error(ErrorKind::StripViolation, os.str());
    }
    if (a == cplx(0.0)) return {0.0, 0.0, 0};

    const double M = std::max({std::abs(a), std::abs(b), std::abs(c)});
    const double t1 = series_radius / M;

    // Series part: integral over [0, t1] of the regularised integrand.
    const auto& tb = tables();
    const cplx A = a * a, B = b * b, C = c * c;
    std::array<cplx, series_terms> sa{}, cb{}, cc{};
    cplx pa = 1.0, pb = 1.0, pc = 1.0;
    for (int k = 0; k < series_terms; ++k) {
        sa[k] = tb.sinhc[k] * pa;
        cb[k] = tb.cosech[k] * pb;
        cc[k] = tb.cosech[k] * pc;
        pa *= A;
        pb *= B;
        pc *= C;
    }
    cplx series = 0.0;
    double tpow = t1; // t1^{2k-1}
    for (int k = 1; k < series_terms; ++k) {
        cplx pk = 0.0;
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) pk += sa[i] * cb[j] * cc[k - i - j];
        series += pk * tpow / (2.0 * k - 1.0);
        tpow *= t1 * t1;
    }
    const cplx pref = a / (2.0 * b * c);
    series *= pref;

    const double theta_max = theta_limit(w);
    Ray plus(a - b - c, b, c, t1, theta_max);
    Ray minus(-a - b - c, b, c, t1, theta_max);
    const cplx fixed = series - pref / t1;
    double h = de_step_initial;
    plus.add_level(h, false);
    minus.add_level(h, false);
    cplx value = fixed + plus.value() - minus.value();
    double err = std::numeric_limits<double>::infinity();
    const double eps = std::numeric_limits<double>::epsilon();
    for (int level = 1; level <= de_levels; ++level) {
        h *= 0.5;
        plus.add_level(h, true);
        minus.add_level(h, true);
        const cplx next = fixed + plus.value() - minus.value();
        const double delta = std::abs(next - value);
        value = next;
        const double scale = std::max(1.0, std::abs(value));
        // Once the rule converges, halving the step roughly squares the error.
        err = delta < 1e-6 * scale ? std::min(delta, 10.0 * delta * delta / scale) : delta;
        if (delta <= 1e-9 * scale) break;
    }
    err += 4.0 * eps * (plus.abs_sum() + minus.abs_sum() + std::abs(pref / t1) + std::abs(series));
    return {value, err, plus.nodes() + minus.nodes()};
}

cplx log_s2_strip(cplx z, const Periods& w) { return log_s2_strip_estimate(z, w).value; }

cplx log_s2_strip(cplx z, const Params& p, const QuadratureSpec& q, double wall_margin)
{
    const double width = p.omega1.real() + p.omega2.real();
    const double pos = z.real() / width;
    if (!(pos > wall_margin && pos < 1.0 - wall_margin)) {
        std::ostringstream os;
        os << "strip position " << pos << " not inside (" << wall_margin << ", " << 1.0 - wall_margin
           << ")";
        throw Error(ErrorKind::StripViolation, os.str());
    }
    const StripEstimate est = log_s2_strip_estimate(z, p.periods());
    if (est.error_estimate > q.tolerance) {
        std::ostringstream os;
        os << "strip integral error estimate " << est.error_estimate << " above tolerance "
           << q.tolerance;
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return est.value;
}

S2Result s2_eval(cplx z, const Periods& w, const S2Options& opt)
{
    if (!(w.w1.real() > 0.0) || !(w.w2.real() > 0.0))
        throw Error(ErrorKind::InvalidParams, "periods need positive real parts");
    S2Result res;
    const cplx center = 0.5 * (w.w1 + w.w2);
    const double guard = opt.pole_guard * std::abs(w.w1 + w.w2);
    const double eps = std::numeric_limits<double>::epsilon();
    auto dist = [&](cplx v) { return std::abs((v - center).real()); };

    cplx acc = 0.0;
    double rel_err = 0.0;
    const std::array<cplx, 4> shifts = {w.w1, w.w2, -w.w1, -w.w2};
    for (;;) {
        int best = -1;
        double best_dist = dist(z) - 1e-14 * std::abs(w.w1 + w.w2);
        for (int s = 0; s < 4; ++s) {
            const double d = dist(z + shifts[s]);
            if (d < best_dist) {
                best_dist = d;
                best = s;
            }
        }
        if (best < 0) break;
        if (res.shifts == opt.max_shifts) {
            throw Error(ErrorKind::PrecisionLoss, "strip reduction needs more than "
                                                      + std::to_string(opt.max_shifts) + " shifts");
        }
        ++res.shifts;
        const cplx other = (best % 2 == 0) ? w.w2 : w.w1;
        if (best < 2) {
            // S2(z) = 2 sin(pi z / other) S2(z + shift)
            const cplx arg = pi * z / other;
            // within roundoff of a lattice zero after the shifts so far
            if (std::abs(std::sin(arg)) < 64.0 * eps * (1.0 + std::abs(arg)) * (res.shifts + 1)) {
                res.is_zero = true;
                res.value = 0.0;
                res.log_value = cplx(-std::numeric_limits<double>::infinity(), 0.0);
                return res;
            }
            rel_err += eps * std::abs(arg) * std::abs(std::cos(arg) / std::sin(arg));
            acc += log_2sin(arg);
            z += shifts[best];
        } else {
            // S2(z) = S2(z - shift) / (2 sin(pi (z - shift) / other))
            z += shifts[best];
            const cplx arg = pi * z / other;
            const cplx sn = std::sin(arg);
            if (std::abs(other) * std::abs(sn) / pi < guard) {
                std::ostringstream os;
                os << "evaluation point within " << opt.pole_guard << "|ω1+ω2| of a pole";
                throw Error(ErrorKind::PoleProximity, os.str());
            }
            rel_err += eps * std::abs(arg) * std::abs(std::cos(arg) / sn);
            acc -= log_2sin(arg);
        }
    }
    if (rel_err > opt.precision_budget) {
        std::ostringstream os;
        os << "sine factor cancellation " << rel_err << " exceeds budget " << opt.precision_budget;
        throw Error(ErrorKind::PrecisionLoss, os.str());
    }

    const StripEstimate strip = log_s2_strip_estimate(z, w);
    res.log_value = strip.value + acc;
    res.value = std::exp(res.log_value);
    res.rel_error_estimate = rel_err + strip.error_estimate;
    return res;
}

cplx s2(cplx z, const Periods& w) { return s2_eval(z, w).value; }

cplx s2(cplx z, const Params& p) { return s2_eval(z, p.periods()).value; }

cplx log_s2(cplx z, const Periods& w) { return s2_eval(z, w).log_value; }

cplx pole_zero_location(const PoleZeroIndex& idx, const Periods& w)
{
    const cplx loc = double(idx.m) * w.w1 + double(idx.k) * w.w2;
    return idx.kind == PoleZeroKind::Pole ? loc : -loc;
}

cplx s2_residue(const PoleZeroIndex& idx, const Periods& w)
{
    const cplx root = std::sqrt(w.w1 * w.w2) / two_pi;
    const int m = idx.m, k = idx.k;
    cplx denom = 1.0;
    if (idx.kind == PoleZeroKind::Pole) {
        if (m < 1 || k < 1) throw Error(ErrorKind::ConditionViolation, "pole index needs m, k >= 1");
        for (int s = 1; s <= m - 1; ++s) denom *= 2.0 * std::sin(pi * double(s) * w.w1 / w.w2);
        for (int l = 1; l <= k - 1; ++l) denom *= 2.0 * std::sin(pi * double(l) * w.w2 / w.w1);
        const double sign = ((m * k) % 2 == 0) ? 1.0 : -1.0;
        return root * sign / denom;
    }
    if (m < 0 || k < 0) throw Error(ErrorKind::ConditionViolation, "zero index needs m, k >= 0");
    for (int s = 1; s <= m; ++s) denom *= 2.0 * std::sin(pi * double(s) * w.w1 / w.w2);
    for (int l = 1; l <= k; ++l) denom *= 2.0 * std::sin(pi * double(l) * w.w2 / w.w1);
    const double sign = ((m * k + m + k) % 2 == 0) ? 1.0 : -1.0;
    return root * sign / denom;
}

double cone_distance(cplx z, const Periods& w)
{
    double s1 = std::arg(w.w1), s2 = std::arg(w.w2);
    if (s1 < s2) std::swap(s1, s2);
    // Distance to the closed sector {s2 <= arg <= s1} and to its reflection.
    auto sector = [&](cplx v, double lo, double hi) {
        const double a = std::arg(v);
        auto inside = [&](double ang) {
            for (double shift : {-two_pi, 0.0, two_pi})
                if (ang + shift >= lo && ang + shift <= hi) return true;
            return false;
        };
        if (inside(a)) return 0.0;
        auto ray = [&](double phi) {
            const cplx d = std::polar(1.0, phi);
            const double t = std::max(0.0, (v * std::conj(d)).real());
            return std::abs(v - t * d);
        };
        return std::min(ray(lo), ray(hi));
    };
    return std::min(sector(z, s2, s1), sector(z, pi + s2, pi + s1));
}

cplx s2_asymptotic(cplx z, const Params& p, double cone_threshold)
{
    const double d = cone_distance(z, p.periods());
    if (d < cone_threshold) {
        std::ostringstream os;
        os << "distance " << d << " to the pole/zero cones below threshold " << cone_threshold;
        throw Error(ErrorKind::ConeProximity, os.str());
    }
    double s1 = std::arg(p.omega1), s2 = std::arg(p.omega2);
    if (s1 < s2) std::swap(s1, s2);
    double a = std::arg(z);
    if (a < s1) a += two_pi;
    const bool above = a < pi + s2; // between the pole cone and the zero cone, counterclockwise
    const double sign = above ? -1.0 : 1.0;
    return std::exp(sign * pi * I * p.ghat * (z - 0.5 * p.gstar));
}

} // namespace ruij

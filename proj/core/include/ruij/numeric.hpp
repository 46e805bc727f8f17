#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "ruij/types.hpp"

namespace ruij {

// Complex e^w - 1 without cancellation for small |w|.
inline cplx expm1(cplx w)
{
    const double x = w.real(), y = w.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// Complex log(1 + w) accurate for small |w|.
inline cplx log1p(cplx w)
{
    if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w / 3.0));
    return std::log(1.0 + w);
}

// Neumaier-compensated accumulator for complex sums.
class CompensatedSum {
public:
    void add(cplx v)
    {
        add_part(re_, cre_, v.real());
        add_part(im_, cim_, v.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add_part(double& s, double& c, double v)
    {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

// Worker count: RUIJ_THREADS if set, otherwise hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n). Work is split into fixed blocks, so any
// reduction done per index and combined in index order is independent of
// the number of threads.
void parallel_for(int n, const std::function<void(int)>& body);

// Deterministic 64-bit generator (splitmix64) and uniform doubles on [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

} // namespace ruij

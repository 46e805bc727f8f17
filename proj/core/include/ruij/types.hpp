#pragma once

#include <complex>
#include <vector>

namespace ruij {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr cplx I{0.0, 1.0};

// Coordinates and spectral variables are complex so that shifted arguments
// (Macdonald shifts, regularised pairings) go through the same code path.
using Tuple = std::vector<cplx>;

inline Tuple real_tuple(std::initializer_list<double> xs)
{
    Tuple t;
    t.reserve(xs.size());
    for (double x : xs) t.emplace_back(x, 0.0);
    return t;
}

inline cplx sum(const Tuple& t)
{
    cplx s = 0.0;
    for (const auto& v : t) s += v;
    return s;
}

} // namespace ruij

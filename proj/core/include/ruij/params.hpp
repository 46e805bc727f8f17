#pragma once

#include <optional>
#include <string>

#include "ruij/types.hpp"

namespace ruij {

struct Periods {
    cplx w1;
    cplx w2;
};

// Periods, coupling and every derived constant. Build through validate().
struct Params {
    cplx omega1;
    cplx omega2;
    cplx g;

    cplx gstar;      // omega1 + omega2 - g
    cplx ghat;       // g / (omega1 omega2)
    cplx ghatstar;   // gstar / (omega1 omega2)
    double nu_g = 0.0;
    double nu_gstar = 0.0;
    Periods hat_periods; // (1/omega2, 1/omega1)

    // Set when omega1/omega2 lies within 1e-6 of p/q with q <= 8.
    std::optional<std::string> resonance_warning;

    Periods periods() const { return {omega1, omega2}; }
};

Params validate(cplx omega1, cplx omega2, cplx g);

// Periods (1/omega2, 1/omega1), coupling gstar/(omega1 omega2).
Params dualize(const Params& p);

bool approx_equal(const Params& a, const Params& b, double rel_tol = 1e-14);

bool approx_equal(cplx a, cplx b, double rel_tol);

// Shipped parameter sets.
Params real_symm();
Params real_asymm();
Params complex_set();
std::optional<Params> named_params(const std::string& name);
std::string describe(const Params& p);

} // namespace ruij

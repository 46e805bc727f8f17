#pragma once

#include "ruij/params.hpp"
#include "ruij/types.hpp"

namespace ruij {

struct QuadratureSpec;

struct StripEstimate {
    cplx value;            // ln S2(z)
    double error_estimate; // absolute, on the log
    int nodes;
};

// ln S2(z) from the integral representation; requires 0 < Re z < Re(w1 + w2).
StripEstimate log_s2_strip_estimate(cplx z, const Periods& w);
cplx log_s2_strip(cplx z, const Periods& w);

// Checked entry point: throws StripViolation when z sits closer than
// `wall_margin` (relative to Re(w1+w2)) to a strip wall and QuadratureFailure
// when the estimate exceeds q.tolerance.
cplx log_s2_strip(cplx z, const Params& p, const QuadratureSpec& q, double wall_margin = 1e-3);

struct S2Options {
    double pole_guard = 1e-10;      // relative to |w1 + w2|
    int max_shifts = 64;
    double precision_budget = 1e-6; // relative error allowed from sine factors
};

struct S2Result {
    cplx value;
    cplx log_value;  // defined up to 2πi; -inf real part at an exact zero
    bool is_zero = false;
    int shifts = 0;
    double rel_error_estimate = 0.0;
};

S2Result s2_eval(cplx z, const Periods& w, const S2Options& opt = {});
cplx s2(cplx z, const Periods& w);
cplx s2(cplx z, const Params& p);
// ln S2 up to 2πi; throws PoleProximity near poles, returns -inf at zeros.
cplx log_s2(cplx z, const Periods& w);

enum class PoleZeroKind { Pole, Zero };

// Poles sit at m w1 + k w2 with m, k >= 1; zeros at -m w1 - k w2 with m, k >= 0.
struct PoleZeroIndex {
    int m = 0;
    int k = 0;
    PoleZeroKind kind = PoleZeroKind::Zero;
};

cplx pole_zero_location(const PoleZeroIndex& idx, const Periods& w);

// Residue of S2 at a pole, or of 1/S2 at a zero.
cplx s2_residue(const PoleZeroIndex& idx, const Periods& w);

// Distance from z to the closed cones spanned by the pole and zero lattices.
double cone_distance(cplx z, const Periods& w);

// Leading behaviour of S2(z)/S2(z+g) away from the cones. The exponent sign is
// fixed by the side of the cones z lies on: "-" above them, "+" below.
cplx s2_asymptotic(cplx z, const Params& p, double cone_threshold = 5.0);

} // namespace ruij

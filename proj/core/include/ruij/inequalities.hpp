#pragma once

#include <cstdint>
#include <vector>

#include "ruij/report.hpp"

namespace ruij {

// Nested real tuples: layer k (0-based) holds k + 1 points and the last layer
// is the outer tuple x_n. See docs/inequality_indexing.md.
using Layers = std::vector<std::vector<double>>;

// Sum of absolute values.
double l1_norm(const std::vector<double>& v);

// Recursive S_n of the layers; S_1 = 0. ShapeMismatch unless layer k has k + 1 entries.
double eval_S(const Layers& layers);

// (1/2) sum_{i != j} |x_i - x_j| + eps |x| - eps / ((n - 1)! e) sum_k |y_k|
// for eps in [0, 2(n - 1)], x the last layer.
double S_bound(const Layers& layers, double eps);

// y has n entries, x has n + 1.
double eval_L(const std::vector<double>& y, const std::vector<double>& x);

// y and x both have n entries.
double eval_R(const std::vector<double>& y, const std::vector<double>& x);

struct SamplerOptions {
    double box = 10.0;             // entries uniform in [-box, box]
    double cluster_fraction = 0.2; // share of samples drawn as a tight cluster
    double cluster_spread = 1e-9;
};

struct InequalityRun {
    int n = 2;
    long samples = 100000;
    std::uint64_t seed = 1;
    SamplerOptions sampler;
};

// Each check draws its samples from a generator seeded by (seed, block), so the
// outcome does not depend on the worker count. A sample violates the bound when
// it exceeds it by more than 64 ulp of the largest term involved.
VerificationReport check_S_bound(const InequalityRun& run, double eps);
VerificationReport check_L_nonpositive(const InequalityRun& run);
VerificationReport check_R_bound(const InequalityRun& run, double eps);

// Permutation invariance and positive scale covariance of L_n and R_n,
// evaluated exactly up to rounding.
VerificationReport check_L_R_symmetries(const InequalityRun& run);

} // namespace ruij

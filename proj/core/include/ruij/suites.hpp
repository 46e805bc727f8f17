#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ruij/params.hpp"
#include "ruij/quadrature.hpp"
#include "ruij/report.hpp"

namespace ruij {

// Sizes of the randomised parts of the suites.
struct SuiteSizes {
    int identity_points = 100;     // s2-identities sample
    int integral_tuples = 5;       // basic-integrals, per n
    int duality_points = 10;
    long inequality_samples = 100000;
    std::vector<int> inequality_n{2, 3, 4};
    std::vector<double> inequality_boxes{10.0, 1e4};
};

struct RunConfig {
    std::vector<Params> params{real_symm(), real_asymm(), complex_set()};
    QuadratureSpec quadrature;
    std::vector<std::string> suites{"all"};
    std::string output_path = "ruij-out";
    std::uint64_t seed = 20240601;
    SuiteSizes sizes;
};

// Registry order; "all" runs every other entry in this order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

struct SuiteResult {
    std::vector<VerificationReport> reports;
    // "<check> on <params>: <reason>" for checks not defined on a parameter set.
    std::vector<std::string> skipped;
};

// Runs one suite for every parameter set of the config on which its checks are
// defined (real parameters for the isometry and delta checks, the contour
// condition for the difference operators). A check that throws any other error
// is reported as a failure with the error text in its notes. UnknownSuite for
// names outside the registry.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

// Frozen v1 schema: check,n,params,residual,tolerance,pass,runtime_ms.
std::string csv_header();
std::string csv_row(const VerificationReport& r);
void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports);

} // namespace ruij

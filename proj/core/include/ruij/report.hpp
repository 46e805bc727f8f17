#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ruij {

struct VerificationReport {
    std::string check;
    int n = 0;
    std::string params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    // Extra numbers and notes echoed into the JSON output.
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, std::string>> notes;

    void decide() { pass = residual <= tolerance; }
};

} // namespace ruij

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ruij/suites.hpp"

namespace ruij::cli {

// Parses a run configuration. Keys: params (set name, {"omega1","omega2","g"}
// object with [re, im] pairs, or a list of either), quadrature, suites,
// output_path, seed, sizes. Missing keys keep their defaults; unknown keys and
// malformed values raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const VerificationReport& r);

// Full run document: configuration echo, reports, skipped checks and the
// overall verdict.
nlohmann::json run_document(const RunConfig& cfg, const std::vector<std::string>& suites,
                            const SuiteResult& result);

} // namespace ruij::cli

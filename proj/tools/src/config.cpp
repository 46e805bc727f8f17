#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ruij/errors.hpp"

namespace ruij::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) bad(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) bad("unknown key '" + k + "' in " + where);
}

cplx complex_of(const json& j, const std::string& what)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    bad(what + " must be a number or a [re, im] pair");
}

Params params_of(const json& j)
{
    if (j.is_string()) {
        const auto p = named_params(j.get<std::string>());
        if (!p) bad("unknown parameter set '" + j.get<std::string>() + "'");
        return *p;
    }
    only_keys(j, {"omega1", "omega2", "g"}, "params");
    for (const char* k : {"omega1", "omega2", "g"})
        if (!j.contains(k)) bad(std::string("params needs '") + k + "'");
    return validate(complex_of(j["omega1"], "omega1"), complex_of(j["omega2"], "omega2"), complex_of(j["g"], "g"));
}

template <class T>
T number(const json& j, const std::string& what)
{
    if (!j.is_number()) bad(what + " must be a number");
    return j.get<T>();
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

double finite_or_nan(double v) { return std::isfinite(v) ? v : std::nan(""); }

} // namespace

RunConfig parse_config(const json& j)
{
    only_keys(j, {"params", "quadrature", "suites", "output_path", "seed", "sizes"}, "config");
    RunConfig cfg;
    if (j.contains("params")) {
        const json& p = j["params"];
        cfg.params.clear();
        if (p.is_array()) {
            for (const auto& e : p) cfg.params.push_back(params_of(e));
            if (cfg.params.empty()) bad("params list is empty");
        } else {
            cfg.params.push_back(params_of(p));
        }
    }
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        only_keys(q, {"scheme", "tolerance", "max_nodes", "truncation_radius", "seed"}, "quadrature");
        if (q.contains("scheme")) {
            if (!q["scheme"].is_string()) bad("quadrature.scheme must be a string");
            cfg.quadrature.scheme = parse_scheme(q["scheme"].get<std::string>());
        }
        if (q.contains("tolerance")) cfg.quadrature.tolerance = number<double>(q["tolerance"], "quadrature.tolerance");
        if (q.contains("max_nodes")) cfg.quadrature.max_nodes = number<long>(q["max_nodes"], "quadrature.max_nodes");
        if (q.contains("truncation_radius") && !q["truncation_radius"].is_null())
            cfg.quadrature.truncation_radius = number<double>(q["truncation_radius"], "quadrature.truncation_radius");
        if (q.contains("seed")) cfg.quadrature.seed = number<std::uint64_t>(q["seed"], "quadrature.seed");
        cfg.quadrature.check();
    }
    if (j.contains("suites")) {
        if (!j["suites"].is_array()) bad("suites must be a list");
        cfg.suites.clear();
        for (const auto& s : j["suites"]) {
            if (!s.is_string()) bad("suite names must be strings");
            cfg.suites.push_back(s.get<std::string>());
        }
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) bad("output_path must be a string");
        cfg.output_path = j["output_path"].get<std::string>();
    }
    if (j.contains("seed")) cfg.seed = number<std::uint64_t>(j["seed"], "seed");
    if (j.contains("sizes")) {
        const json& s = j["sizes"];
        only_keys(s, {"identity_points", "integral_tuples", "duality_points", "inequality_samples", "inequality_n",
                      "inequality_boxes"},
                  "sizes");
        auto positive = [](long v, const char* what) {
            if (v < 1) bad(std::string("sizes.") + what + " must be positive");
            return v;
        };
        if (s.contains("identity_points"))
            cfg.sizes.identity_points = int(positive(number<long>(s["identity_points"], "sizes.identity_points"), "identity_points"));
        if (s.contains("integral_tuples"))
            cfg.sizes.integral_tuples = int(positive(number<long>(s["integral_tuples"], "sizes.integral_tuples"), "integral_tuples"));
        if (s.contains("duality_points"))
            cfg.sizes.duality_points = int(positive(number<long>(s["duality_points"], "sizes.duality_points"), "duality_points"));
        if (s.contains("inequality_samples"))
            cfg.sizes.inequality_samples = positive(number<long>(s["inequality_samples"], "sizes.inequality_samples"), "inequality_samples");
        if (s.contains("inequality_n")) {
            cfg.sizes.inequality_n.clear();
            for (const auto& v : s["inequality_n"]) {
                const long n = number<long>(v, "sizes.inequality_n");
                if (n < 2) bad("sizes.inequality_n entries must be >= 2");
                cfg.sizes.inequality_n.push_back(int(n));
            }
        }
        if (s.contains("inequality_boxes")) {
            cfg.sizes.inequality_boxes.clear();
            for (const auto& v : s["inequality_boxes"]) {
                const double b = number<double>(v, "sizes.inequality_boxes");
                if (!(b > 0.0)) bad("sizes.inequality_boxes entries must be positive");
                cfg.sizes.inequality_boxes.push_back(b);
            }
        }
    }
    for (const auto& s : cfg.suites)
        if (!is_suite(s)) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + s + "'");
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) bad("cannot read config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const Params& p)
{
    return {{"name", describe(p)}, {"omega1", complex_json(p.omega1)}, {"omega2", complex_json(p.omega2)},
            {"g", complex_json(p.g)}, {"nu_g", p.nu_g}, {"nu_gstar", p.nu_gstar}};
}

json to_json(const VerificationReport& r)
{
    json values = json::object(), notes = json::object();
    for (const auto& [k, v] : r.values) values[k] = finite_or_nan(v);
    for (const auto& [k, v] : r.notes) notes[k] = v;
    return {{"check", r.check},       {"n", r.n},           {"params", r.params},
            {"residual", finite_or_nan(r.residual)}, {"tolerance", r.tolerance}, {"pass", r.pass},
            {"runtime_ms", r.runtime_ms}, {"values", values}, {"notes", notes}};
}

json run_document(const RunConfig& cfg, const std::vector<std::string>& suites, const SuiteResult& result)
{
    json params = json::array(), reports = json::array();
    for (const auto& p : cfg.params) params.push_back(to_json(p));
    bool all_pass = true;
    for (const auto& r : result.reports) {
        reports.push_back(to_json(r));
        all_pass = all_pass && r.pass;
    }
    json quad = {{"scheme", to_string(cfg.quadrature.scheme)},
                 {"tolerance", cfg.quadrature.tolerance},
                 {"max_nodes", cfg.quadrature.max_nodes},
                 {"seed", cfg.quadrature.seed}};
    quad["truncation_radius"] = cfg.quadrature.truncation_radius ? json(*cfg.quadrature.truncation_radius) : json(nullptr);
    return {{"schema", "ruij-report/1"},
            {"csv_columns", csv_header()},
            {"suites", suites},
            {"seed", cfg.seed},
            {"params", params},
            {"quadrature", quad},
            {"reports", reports},
            {"skipped", result.skipped},
            {"all_pass", all_pass}};
}

} // namespace ruij::cli

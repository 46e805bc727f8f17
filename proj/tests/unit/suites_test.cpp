#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "config.hpp"
#include "ruij/errors.hpp"
#include "ruij/suites.hpp"

using namespace ruij;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

RunConfig small_inequality_config()
{
    RunConfig cfg;
    cfg.params = {real_asymm()};
    cfg.sizes.inequality_samples = 2000;
    cfg.sizes.inequality_n = {2, 3};
    cfg.sizes.inequality_boxes = {10.0};
    return cfg;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Command {
    int status;
    std::string output;
};

Command run_cli(const std::string& args)
{
    const fs::path log = fs::temp_directory_path() / ("ruij_cli_" + std::to_string(::getpid()) + ".log");
    const std::string cmd = std::string("\"") + RUIJ_BINARY + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    Command c{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(log)};
    fs::remove(log);
    return c;
}

} // namespace

TEST(Suites, Registry)
{
    const auto& names = suite_names();
    ASSERT_EQ(names.size(), 11u);
    EXPECT_EQ(names.front(), "s2-identities");
    EXPECT_EQ(names.back(), "all");
    EXPECT_TRUE(is_suite("plancherel"));
    EXPECT_FALSE(is_suite("plancherell"));
    try {
        run_suite("nope", RunConfig{});
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
    }
}

TEST(Suites, CsvSchema)
{
    EXPECT_EQ(csv_header(), "check,n,params,residual,tolerance,pass,runtime_ms");
    VerificationReport r;
    r.check = "duality";
    r.n = 2;
    r.params = "REAL-ASYMM";
    r.residual = 1.5e-7;
    r.tolerance = 1e-4;
    r.decide();
    r.runtime_ms = 12.25;
    EXPECT_EQ(csv_row(r), "duality,2,REAL-ASYMM,1.500000e-07,1.000e-04,true,12.250");
}

TEST(Suites, InequalitySuiteIsReproducible)
{
    const RunConfig cfg = small_inequality_config();
    const auto a = run_suite("inequalities", cfg), b = run_suite("inequalities", cfg);
    ASSERT_EQ(a.reports.size(), b.reports.size());
    ASSERT_FALSE(a.reports.empty());
    for (size_t i = 0; i < a.reports.size(); ++i) {
        EXPECT_TRUE(a.reports[i].pass) << a.reports[i].check;
        EXPECT_EQ(a.reports[i].values, b.reports[i].values);
    }
}

TEST(Suites, SkipsChecksThatNeedRealParameters)
{
    RunConfig cfg;
    cfg.params = {complex_set()};
    const auto res = run_suite("plancherel", cfg);
    EXPECT_TRUE(res.reports.empty());
    ASSERT_EQ(res.skipped.size(), 1u);
    EXPECT_NE(res.skipped[0].find("COMPLEX"), std::string::npos);
}

TEST(Suites, DoubleSineSuitePasses)
{
    RunConfig cfg;
    cfg.sizes.identity_points = 20;
    const auto res = run_suite("s2-identities", cfg);
    EXPECT_GE(res.reports.size(), 24u);
    for (const auto& r : res.reports) EXPECT_TRUE(r.pass) << r.check << " " << r.params << " " << r.residual;
}

TEST(Config, ParsesNamesObjectsAndLists)
{
    const json j = json::parse(R"({
        "params": ["REAL-ASYMM", {"omega1": [1.0, 0.2], "omega2": [1.0, 0.0], "g": [0.5, 0.1]}],
        "quadrature": {"scheme": "trapezoid", "tolerance": 1e-9, "max_nodes": 1000, "seed": 5},
        "suites": ["duality"],
        "seed": 11,
        "sizes": {"duality_points": 3}
    })");
    const RunConfig cfg = cli::parse_config(j);
    ASSERT_EQ(cfg.params.size(), 2u);
    EXPECT_EQ(describe(cfg.params[0]), "REAL-ASYMM");
    EXPECT_EQ(describe(cfg.params[1]), "COMPLEX");
    EXPECT_EQ(cfg.quadrature.scheme, Scheme::Trapezoid);
    EXPECT_EQ(cfg.quadrature.tolerance, 1e-9);
    EXPECT_EQ(cfg.seed, 11u);
    EXPECT_EQ(cfg.sizes.duality_points, 3);
    EXPECT_EQ(cfg.suites, std::vector<std::string>{"duality"});
}

TEST(Config, RejectsUnknownKeysAndSuites)
{
    auto kind = [](const char* text) {
        try {
            cli::parse_config(json::parse(text));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidParams;
    };
    EXPECT_EQ(kind(R"({"colour": 1})"), ErrorKind::ConfigError);
    EXPECT_EQ(kind(R"({"quadrature": {"tolerance": -1}})"), ErrorKind::ConfigError);
    EXPECT_EQ(kind(R"({"suites": ["nope"]})"), ErrorKind::UnknownSuite);
    EXPECT_EQ(kind(R"({"params": {"omega1": [1, 0], "omega2": [1, 0], "g": [3, 0]}})"), ErrorKind::InvalidParams);
}

TEST(Config, RunDocument)
{
    const RunConfig cfg = small_inequality_config();
    const auto res = run_suite("inequalities", cfg);
    const json doc = cli::run_document(cfg, {"inequalities"}, res);
    EXPECT_EQ(doc["schema"], "ruij-report/1");
    EXPECT_EQ(doc["reports"].size(), res.reports.size());
    EXPECT_TRUE(doc["all_pass"].get<bool>());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("verify nope").status, 2);
    EXPECT_EQ(run_cli("eval-s2 --z 0.5,abc").status, 2);
    EXPECT_EQ(run_cli("eval-s2 --z 0.5 --omega1 -1").status, 2);
    const auto s2 = run_cli("eval-s2 --z 0.5 --omega1 1 --omega2 1");
    EXPECT_EQ(s2.status, 0);
    const json v = json::parse(s2.output);
    EXPECT_NEAR(v[0].get<double>(), std::sqrt(2.0), 1e-13);
}

TEST(Cli, VerifyWritesReports)
{
    const fs::path out = fs::temp_directory_path() / ("ruij_cli_out_" + std::to_string(::getpid()));
    fs::remove_all(out);
    const auto c = run_cli("verify inequalities --n 2 --samples 1000 --out \"" + out.string() + "\"");
    EXPECT_EQ(c.status, 0) << c.output;
    const std::string csv = slurp(out / "report.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), csv_header());
    const json doc = json::parse(slurp(out / "report.json"));
    EXPECT_TRUE(doc["all_pass"].get<bool>());
    fs::remove_all(out);
}

TEST(Cli, EvalPsi)
{
    const auto c = run_cli("eval-psi --params REAL-ASYMM --lambda 0.2,-0.1 --x 0.4,0");
    ASSERT_EQ(c.status, 0) << c.output;
    const json v = json::parse(c.output);
    EXPECT_TRUE(v.contains("value"));
    EXPECT_LT(v["error_estimate"].get<double>(), 1e-8);
}

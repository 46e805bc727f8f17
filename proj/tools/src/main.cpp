#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "ruij/double_sine.hpp"
#include "ruij/errors.hpp"
#include "ruij/kernels.hpp"
#include "ruij/wavefunction.hpp"

namespace {

using namespace ruij;
using nlohmann::json;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

std::vector<double> split_numbers(const std::string& s, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ConfigError, what + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw Error(ErrorKind::ConfigError, what + " is empty");
    return out;
}

cplx parse_complex(const std::string& s, const std::string& what)
{
    const auto v = split_numbers(s, what);
    if (v.size() > 2) throw Error(ErrorKind::ConfigError, what + " takes RE or RE,IM");
    return {v[0], v.size() == 2 ? v[1] : 0.0};
}

json pair_json(cplx v) { return json::array({v.real(), v.imag()}); }

struct ParamOptions {
    std::string name = "REAL-SYMM";
    std::string omega1, omega2, g;

    void add(CLI::App* app)
    {
        app->add_option("--params", name, "Shipped parameter set (REAL-SYMM, REAL-ASYMM, COMPLEX)");
        app->add_option("--omega1", omega1, "First period RE[,IM]");
        app->add_option("--omega2", omega2, "Second period RE[,IM]");
        app->add_option("--g", g, "Coupling RE[,IM]");
    }

    Params resolve() const
    {
        if (!omega1.empty() || !omega2.empty() || !g.empty()) {
            if (omega1.empty() || omega2.empty() || g.empty())
                throw Error(ErrorKind::ConfigError, "--omega1, --omega2 and --g go together");
            return validate(parse_complex(omega1, "--omega1"), parse_complex(omega2, "--omega2"), parse_complex(g, "--g"));
        }
        const auto p = named_params(name);
        if (!p) throw Error(ErrorKind::ConfigError, "unknown parameter set '" + name + "'");
        return *p;
    }
};

int run_verify(const std::string& suite, const std::string& config_path, const std::string& out_dir,
               const std::optional<std::uint64_t>& seed, const std::optional<int>& ineq_n,
               const std::optional<long>& samples, const std::string& params_name)
{
    RunConfig cfg = config_path.empty() ? RunConfig{} : cli::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (ineq_n) cfg.sizes.inequality_n = {*ineq_n};
    if (samples) cfg.sizes.inequality_samples = *samples;
    if (!params_name.empty()) {
        const auto p = named_params(params_name);
        if (!p) throw Error(ErrorKind::ConfigError, "unknown parameter set '" + params_name + "'");
        cfg.params = {*p};
    }
    if (!out_dir.empty()) cfg.output_path = out_dir;
    // The positional suite overrides the list in the config.
    const std::vector<std::string> suites = suite.empty() ? cfg.suites : std::vector<std::string>{suite};
    for (const auto& name : suites)
        if (!is_suite(name)) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");

    const std::filesystem::path dir(cfg.output_path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::ConfigError, "cannot create output directory '" + dir.string() + "'");

    SuiteResult result;
    for (const auto& name : suites) {
        SuiteResult part = run_suite(name, cfg);
        result.reports.insert(result.reports.end(), part.reports.begin(), part.reports.end());
        result.skipped.insert(result.skipped.end(), part.skipped.begin(), part.skipped.end());
    }

    std::ofstream csv(dir / "report.csv");
    std::ofstream js(dir / "report.json");
    if (!csv || !js) throw Error(ErrorKind::ConfigError, "cannot write into '" + dir.string() + "'");
    write_csv(csv, result.reports);
    js << cli::run_document(cfg, suites, result).dump(2) << '\n';

    bool all_pass = true;
    for (const auto& r : result.reports) {
        std::printf("%s  %-28s n=%d  %-12s residual=%.3e  tolerance=%.1e  %.0f ms\n", r.pass ? "PASS" : "FAIL",
                    r.check.c_str(), r.n, r.params.c_str(), r.residual, r.tolerance, r.runtime_ms);
        all_pass = all_pass && r.pass;
    }
    for (const auto& s : result.skipped) std::printf("SKIP  %s\n", s.c_str());
    std::printf("%zu checks, %s; reports in %s\n", result.reports.size(), all_pass ? "all passed" : "FAILURES",
                dir.string().c_str());
    return all_pass ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical checks for the hyperbolic Ruijsenaars wave functions"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Run a named verification suite");
    std::string suite, config_path, out_dir, verify_params;
    std::optional<std::uint64_t> seed;
    std::optional<int> ineq_n;
    std::optional<long> samples;
    std::string names;
    for (const auto& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
    verify->add_option("suite", suite, "One of: " + names + " (default: the config's suites)");
    verify->add_option("--config", config_path, "JSON run configuration");
    verify->add_option("--out", out_dir, "Output directory for report.csv and report.json");
    verify->add_option("--seed", seed, "Seed for every randomised check");
    verify->add_option("--n", ineq_n, "Particle number for the inequality suite");
    verify->add_option("--samples", samples, "Samples per inequality property");
    verify->add_option("--params", verify_params, "Restrict to one shipped parameter set");

    auto* eval_s2 = app.add_subcommand("eval-s2", "Print the double sine function as [re, im]");
    std::string z_str, w1_str = "1", w2_str = "1";
    eval_s2->add_option("--z", z_str, "Argument RE[,IM]")->required();
    eval_s2->add_option("--omega1", w1_str, "First period RE[,IM]");
    eval_s2->add_option("--omega2", w2_str, "Second period RE[,IM]");

    auto* eval_kernel = app.add_subcommand("eval-kernel", "Print a kernel or measure value as [re, im]");
    ParamOptions kernel_params;
    kernel_params.add(eval_kernel);
    std::string x_str, which = "K";
    eval_kernel->add_option("--x", x_str, "Argument RE[,IM]")->required();
    eval_kernel->add_option("--which", which, "K, mu, Khat or muhat")
        ->check(CLI::IsMember({"K", "mu", "Khat", "muhat"}));

    auto* eval_psi = app.add_subcommand("eval-psi", "Print the wave function value and error estimate");
    ParamOptions psi_params;
    psi_params.add(eval_psi);
    std::string lambda_str, coords_str;
    double psi_tol = 0.0;
    bool dual = false;
    eval_psi->add_option("--lambda", lambda_str, "Spectral values l1,l2,...")->required();
    eval_psi->add_option("--x", coords_str, "Coordinates x1,x2,...")->required();
    eval_psi->add_option("--tol", psi_tol, "Quadrature tolerance (default depends on n)");
    eval_psi->add_flag("--dual", dual, "Use the dual integral representation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*verify) return run_verify(suite, config_path, out_dir, seed, ineq_n, samples, verify_params);
        if (*eval_s2) {
            const Periods w{parse_complex(w1_str, "--omega1"), parse_complex(w2_str, "--omega2")};
            std::cout << pair_json(s2(parse_complex(z_str, "--z"), w)).dump() << '\n';
            return exit_pass;
        }
        if (*eval_kernel) {
            const KernelContext ctx(kernel_params.resolve());
            const cplx x = parse_complex(x_str, "--x");
            cplx v;
            if (which == "K") v = kernel_K(x, ctx);
            else if (which == "mu") v = measure_mu(x, ctx);
            else if (which == "Khat") v = hat_K(x, ctx);
            else v = hat_mu(x, ctx);
            std::cout << pair_json(v).dump() << '\n';
            return exit_pass;
        }
        if (*eval_psi) {
            const KernelContext ctx(psi_params.resolve());
            Tuple l, x;
            for (double v : split_numbers(lambda_str, "--lambda")) l.emplace_back(v, 0.0);
            for (double v : split_numbers(coords_str, "--x")) x.emplace_back(v, 0.0);
            if (l.size() != x.size()) throw Error(ErrorKind::ShapeMismatch, "--lambda and --x need the same length");
            QuadratureSpec q = default_psi_spec(int(l.size()));
            if (psi_tol > 0.0) q.tolerance = psi_tol;
            const PsiResult r = dual ? psi_dual_eval(l, x, ctx, q) : psi_eval(l, x, ctx, q);
            std::cout << json{{"value", pair_json(r.value)}, {"error_estimate", r.error_estimate}, {"nodes", r.nodes}}.dump()
                      << '\n';
            return exit_pass;
        }
    } catch (const Error& e) {
        std::cerr << "ruij: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::ConfigError:
        case ErrorKind::UnknownSuite:
        case ErrorKind::InvalidParams:
        case ErrorKind::ShapeMismatch: return exit_usage;
        default: return exit_fail;
        }
    } catch (const std::exception& e) {
        std::cerr << "ruij: " << e.what() << '\n';
        return exit_fail;
    }
    return exit_usage;
}

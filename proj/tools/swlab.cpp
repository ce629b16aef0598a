// swlab: command-line front end for the half-space inequality laboratory.
//
// Subcommands:
//   validate  - admissibility / dual / Euler-Lagrange exponent analysis
//   bounds    - closed-form constant bracket and Hardy constants
//   estimate  - discrete operator-norm estimate (power iteration) or
//               Monte Carlo tail-integral estimate vs. the closed form
//   check     - structural identity suites (kelvin, scaling, hyperbolic,
//               representation, sobolev, el_pair)
//
// Exit codes: 0 success, 2 invalid configuration, 1 runtime failure.
// Reports are deterministic JSON; wall-clock metadata goes to a sidecar.

#include "swlab/report.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

namespace {

using nlohmann::json;
using namespace swlab;

int log_level() {
    const char* env = std::getenv("SWLAB_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[swlab] " << msg << '\n';
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");
    return cfg;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

double require_number(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("missing config key '" + key + "'");
    if (!obj[key].is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return obj[key].get<double>();
}

ExponentConfig parse_exponents(const json& cfg) {
    const int n = static_cast<int>(require_number(cfg, "n"));
    const double lambda = require_number(cfg, "lambda");
    const double alpha = require_number(cfg, "alpha");
    const double beta = require_number(cfg, "beta");
    const double p = require_number(cfg, "p");
    double r;
    if (cfg.contains("r"))
        r = require_number(cfg, "r");
    else
        r = solve_r(n, lambda, alpha, beta, p);
    return make_config(n, lambda, alpha, beta, p, r);
}

std::shared_ptr<HalfSpaceGrid> parse_grid(const json& cfg, int n) {
    json g = cfg.value("grid", json::object());
    reject_unknown_keys(g, {"x_extent", "t_max", "nx", "nt", "grading"},
                        "grid");
    auto grid = std::make_shared<HalfSpaceGrid>(
        build_grid(n, number_or(g, "x_extent", 4.0), number_or(g, "t_max", 4.0),
                   static_cast<int>(number_or(g, "nx", 48)),
                   static_cast<int>(number_or(g, "nt", 48)),
                   number_or(g, "grading", 2.0)));
    return grid;
}

FuncSpec parse_func(const json& cfg, const std::string& key) {
    json f = cfg.value(key, json::object());
    reject_unknown_keys(f, {"kind", "center_x", "center_t", "width", "radius",
                            "smoothness", "amplitude", "d", "exponent"},
                        key);
    const std::string kind = f.value("kind", "gaussian");
    HalfPoint c;
    c.x[0] = number_or(f, "center_x", 0.0);
    c.t = number_or(f, "center_t", 1.0);
    if (kind == "gaussian")
        return FuncSpec::gaussian_bump(c, number_or(f, "width", 0.6));
    if (kind == "bubble")
        return FuncSpec::bubble(number_or(f, "amplitude", 1.0),
                                number_or(f, "d", 1.0), c,
                                number_or(f, "exponent", 1.0));
    if (kind == "cutoff")
        return FuncSpec::cutoff_bump(c, number_or(f, "radius", 1.5),
                                     number_or(f, "smoothness", 1.0));
    throw ConfigError("unknown function kind '" + kind + "' in " + key);
}

void emit(const json& report, const std::optional<std::string>& out_path) {
    if (out_path) {
        write_report(report, *out_path);
        write_metadata_sidecar(*out_path);
        log_info("report written to " + *out_path);
    } else {
        std::cout << report.dump(2) << '\n';
    }
}

const std::set<std::string> kExponentKeys = {"n",    "lambda", "alpha",
                                             "beta", "p",      "r"};

int run_validate(const json& cfg, const std::optional<std::string>& out) {
    reject_unknown_keys(cfg, kExponentKeys, "validate config");
    const int n = static_cast<int>(require_number(cfg, "n"));
    const double lambda = require_number(cfg, "lambda");
    const double alpha = require_number(cfg, "alpha");
    const double beta = require_number(cfg, "beta");
    const double p = require_number(cfg, "p");
    const double r = cfg.contains("r") ? require_number(cfg, "r")
                                       : solve_r(n, lambda, alpha, beta, p);

    const AdmissibilityReport adm = validate_primal(n, lambda, alpha, beta, p, r);
    json payload{{"config",
                  {{"n", n},
                   {"lambda", lambda},
                   {"alpha", alpha},
                   {"beta", beta},
                   {"p", p},
                   {"r", r}}},
                 {"admissibility", to_json(adm)}};
    if (adm.valid) {
        const ExponentConfig full = make_config(n, lambda, alpha, beta, p, r);
        payload["dual"] = to_json(full);
        try {
            const ELExponents el = el_exponents(full);
            payload["euler_lagrange"] = {{"theta", el.theta},
                                         {"kappa", el.kappa}};
        } catch (const std::domain_error& e) {
            payload["euler_lagrange"] = {{"error", e.what()}};
        }
        try {
            const ConformalData cd = conformal_exponents(n, lambda, alpha, beta);
            payload["conformal"] = {{"p_alpha", cd.p_alpha},
                                    {"r_beta", cd.r_beta},
                                    {"kappa_star", cd.kappa_star},
                                    {"theta_star", cd.theta_star},
                                    {"mu1", cd.mu1},
                                    {"mu2", cd.mu2}};
        } catch (const std::domain_error& e) {
            payload["conformal"] = {{"error", e.what()}};
        }
    }
    emit(make_report("validate", std::move(payload)), out);
    return 0;
}

int run_bounds(const json& cfg, const std::optional<std::string>& out) {
    reject_unknown_keys(cfg, kExponentKeys, "bounds config");
    const ExponentConfig ec = parse_exponents(cfg);
    json payload{{"config", to_json(ec)},
                 {"hardy_constants", to_json(hardy_constants(ec))},
                 {"bounds", to_json(bounds_report(ec))}};
    emit(make_report("bounds", std::move(payload)), out);
    return 0;
}

int run_estimate(const json& cfg, const std::optional<std::string>& out,
                 std::uint64_t seed) {
    std::set<std::string> keys = kExponentKeys;
    keys.insert({"estimator", "grid", "f0", "tol", "max_iter", "trace_csv",
                 "radius", "samples", "t_grading"});
    reject_unknown_keys(cfg, keys, "estimate config");
    const ExponentConfig ec = parse_exponents(cfg);
    const std::string estimator = cfg.value("estimator", "power_iteration");

    if (estimator == "power_iteration") {
        auto grid = parse_grid(cfg, ec.n);
        log_info("assembling kernel matrix (" +
                 std::to_string(grid->node_count()) + " nodes)");
        const RieszKernel K(grid, ec.lambda);
        const Field f0 = sample(parse_func(cfg, "f0"), grid);
        PowerIterationOptions opt;
        opt.tol = number_or(cfg, "tol", 1e-8);
        opt.max_iter = static_cast<int>(number_or(cfg, "max_iter", 500));
        const PowerIterationResult res = power_iterate(K, ec, f0, opt);
        if (cfg.contains("trace_csv"))
            write_trace_csv(res.trace, cfg["trace_csv"].get<std::string>());
        json payload{{"config", to_json(ec)},
                     {"estimator", estimator},
                     {"result", to_json(res)}};
        emit(make_report("estimate", std::move(payload)), out);
        return 0;
    }
    if (estimator == "mc_tail") {
        // Monte Carlo estimate of the Hardy tail integral over the half
        // annulus R <= |Y| <= 2R against its closed form.
        const double R = number_or(cfg, "radius", 1.0);
        const auto samples =
            static_cast<std::uint64_t>(number_or(cfg, "samples", 2e6));
        const double grading = number_or(cfg, "t_grading", 0.0);
        const HardyConstants h = hardy_constants(ec);
        const double sigma = ec.beta * ec.q;
        const double lam_q = ec.lambda * ec.q;
        const McRegion region = McRegion::annulus_plus(ec.n, R, 2.0 * R);
        const McResult mc = mc_integral(
            [&](const HalfPoint& y) {
                const double rho2 =
                    y.x[0] * y.x[0] + y.x[1] * y.x[1] + y.t * y.t;
                return std::pow(y.t, -sigma) * std::pow(rho2, -0.5 * lam_q);
            },
            region, samples, seed, grading);
        const double closed =
            h.c1 * (std::pow(R, h.e1) - std::pow(2.0 * R, h.e1));
        json payload{{"config", to_json(ec)},
                     {"estimator", estimator},
                     {"radius", R},
                     {"mc", to_json(mc)},
                     {"closed_form", closed},
                     {"rel_error",
                      std::abs(mc.estimate - closed) / std::abs(closed)}};
        emit(make_report("estimate", std::move(payload)), out);
        return 0;
    }
    throw ConfigError("unknown estimator '" + estimator + "'");
}

int run_check(const json& cfg, const std::string& suite,
              const std::optional<std::string>& out) {
    if (suite.empty())
        throw std::runtime_error("no check suite selected (--suite)");
    if (suite == "kelvin") {
        reject_unknown_keys(cfg,
                            {"n", "lambda", "alpha", "beta", "f", "g", "grid",
                             "ball_nr", "ball_nang", "ball_grading"},
                            "kelvin config");
        const int n = static_cast<int>(require_number(cfg, "n"));
        auto grid = parse_grid(cfg, n);
        const BallGrid ball = build_ball_grid(
            n, static_cast<int>(number_or(cfg, "ball_nr", 64)),
            static_cast<int>(number_or(cfg, "ball_nang", 64)),
            number_or(cfg, "ball_grading", 2.0));
        const KelvinReport rep = kelvin_check(
            parse_func(cfg, "f"), parse_func(cfg, "g"), n,
            require_number(cfg, "lambda"), require_number(cfg, "alpha"),
            require_number(cfg, "beta"), grid, ball);
        emit(make_report("check_kelvin", to_json(rep)), out);
        return 0;
    }
    if (suite == "scaling") {
        std::set<std::string> keys = kExponentKeys;
        keys.insert({"f", "g", "tau", "grid"});
        reject_unknown_keys(cfg, keys, "scaling config");
        const ExponentConfig ec = parse_exponents(cfg);
        auto grid = parse_grid(cfg, ec.n);
        const ScalingReport rep =
            scaling_check(ec, parse_func(cfg, "f"), parse_func(cfg, "g"),
                          number_or(cfg, "tau", 2.0), grid);
        emit(make_report("check_scaling", to_json(rep)), out);
        return 0;
    }
    if (suite == "hyperbolic") {
        reject_unknown_keys(cfg, {"n", "lambda", "p", "r", "f", "g", "grid"},
                            "hyperbolic config");
        const int n = static_cast<int>(require_number(cfg, "n"));
        auto grid = parse_grid(cfg, n);
        const HyperbolicReport rep = hyperbolic_check(
            n, require_number(cfg, "lambda"), require_number(cfg, "p"),
            require_number(cfg, "r"), parse_func(cfg, "f"),
            parse_func(cfg, "g"), *grid);
        emit(make_report("check_hyperbolic", to_json(rep)), out);
        return 0;
    }
    if (suite == "representation") {
        reject_unknown_keys(
            cfg, {"n", "u", "probes", "x_extent", "t_max", "nx", "nt"},
            "representation config");
        const int n = static_cast<int>(require_number(cfg, "n"));
        std::vector<HalfPoint> probes;
        if (cfg.contains("probes")) {
            if (!cfg["probes"].is_array())
                throw ConfigError("'probes' must be an array of [x.., t]");
            for (const auto& row : cfg["probes"]) {
                HalfPoint p;
                p.x[0] = row.at(0).get<double>();
                if (n == 2) p.x[1] = row.at(1).get<double>();
                p.t = row.at(n).get<double>();
                probes.push_back(p);
            }
        } else {
            probes.push_back({{0.0, 0.0}, 1.0});
        }
        const RepresentationReport rep = representation_check(
            parse_func(cfg, "u"), n, probes, number_or(cfg, "x_extent", 6.0),
            number_or(cfg, "t_max", 8.0),
            static_cast<int>(number_or(cfg, "nx", 256)),
            static_cast<int>(number_or(cfg, "nt", 256)));
        emit(make_report("check_representation", to_json(rep)), out);
        return 0;
    }
    if (suite == "sobolev") {
        reject_unknown_keys(cfg, {"n", "p", "alpha1", "beta1", "u", "grid"},
                            "sobolev config");
        const int n = static_cast<int>(require_number(cfg, "n"));
        auto grid = parse_grid(cfg, n);
        const WsReport rep = ws_ratio(parse_func(cfg, "u"), n,
                                      require_number(cfg, "p"),
                                      require_number(cfg, "alpha1"),
                                      require_number(cfg, "beta1"), grid);
        emit(make_report("check_sobolev", to_json(rep)), out);
        return 0;
    }
    if (suite == "el_pair") {
        std::set<std::string> keys = kExponentKeys;
        keys.insert({"grid", "u0", "v0", "tol", "max_iter"});
        reject_unknown_keys(cfg, keys, "el_pair config");
        const ExponentConfig ec = parse_exponents(cfg);
        auto grid = parse_grid(cfg, ec.n);
        const RieszKernel K(grid, ec.lambda);
        const Field u0 = sample(parse_func(cfg, "u0"), grid);
        const Field v0 = sample(parse_func(cfg, "v0"), grid);
        const ELPairResult rep =
            solve_el_pair(K, ec, u0, v0, number_or(cfg, "tol", 1e-8),
                          static_cast<int>(number_or(cfg, "max_iter", 500)));
        emit(make_report("check_el_pair", to_json(rep)), out);
        return 0;
    }
    throw ConfigError("unknown check suite '" + suite + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for weighted half-space inequalities"};
    app.require_subcommand(1);
    // let `swlab estimate --seed N ...` reach the global options
    app.fallthrough();

    std::string config_path;
    std::optional<std::string> out_path;
    int workers = 0;
    std::uint64_t seed = 20260826ULL;
    std::string suite;

    app.add_option("--workers", workers, "OpenMP worker threads (0 = default)");
    app.add_option("--seed", seed, "RNG seed for sampling estimators");

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", config_path,
                                    "path to the JSON configuration");
        if (need_config) opt->required();
        sub->add_option("--out", out_path,
                        "write the JSON report here instead of stdout");
    };

    auto* sub_validate = app.add_subcommand("validate", "exponent analysis");
    add_common(sub_validate, true);
    auto* sub_bounds = app.add_subcommand("bounds", "closed-form bracket");
    add_common(sub_bounds, true);
    auto* sub_estimate = app.add_subcommand("estimate", "numerical estimates");
    add_common(sub_estimate, true);
    auto* sub_check = app.add_subcommand("check", "structural identity suites");
    add_common(sub_check, true);
    sub_check->add_option("--suite", suite, "suite name");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#endif

    try {
        const json cfg = load_config(config_path);
        if (sub_validate->parsed()) return run_validate(cfg, out_path);
        if (sub_bounds->parsed()) return run_bounds(cfg, out_path);
        if (sub_estimate->parsed()) return run_estimate(cfg, out_path, seed);
        if (sub_check->parsed()) return run_check(cfg, suite, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

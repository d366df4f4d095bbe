// Command-line front end: run simulations, apply the duality map, and
// execute the verification suites.  Exit codes: 0 pass, 1 check failure,
// 2 usage or domain error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "keplergeo/keplergeo.hpp"

namespace {

using keplergeo::Branch;
using keplergeo::Chart;
using keplergeo::SystemKind;
using keplergeo::Trajectory;
using keplergeo::Vec3;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags override config-file values: a bound option keeps its parsed value,
// anything the user did not pass falls back to the JSON config entry.
template <typename T>
void merge_config(const CLI::App& cmd, const std::string& flag, const nlohmann::json& cfg,
                  const std::string& key, T& value) {
    if (cmd.count(flag) == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    return keplergeo::read_json(path);
}

Vec3 to_vec3(const std::vector<double>& v, const std::string& flag) {
    if (v.size() != 3) throw UsageError(flag + " needs exactly 3 comma-separated components");
    return {v[0], v[1], v[2]};
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string system;
    std::optional<double> alpha;
    std::optional<double> k;
    std::string chart = "natural";
    std::vector<double> x;
    std::vector<double> p;
    double t_final = 0.0;
    double rtol = 1e-12;
    double atol = 1e-12;
    double max_step = 0.0;
    std::size_t samples = 2001;
    std::uint64_t seed = 0;
    bool regularize = false;
    std::string out = "trajectory.csv";
    std::string config;
};

int run_simulate(const CLI::App& cmd, SimulateArgs args) {
    const nlohmann::json cfg = load_config(args.config);
    merge_config(cmd, "--system", cfg, "system", args.system);
    if (cmd.count("--alpha") == 0 && cfg.contains("alpha")) args.alpha = cfg["alpha"].get<double>();
    if (cmd.count("--k") == 0 && cfg.contains("k")) args.k = cfg["k"].get<double>();
    merge_config(cmd, "--chart", cfg, "chart", args.chart);
    merge_config(cmd, "--x", cfg, "x", args.x);
    merge_config(cmd, "--p", cfg, "p", args.p);
    merge_config(cmd, "--t-final", cfg, "t_final", args.t_final);
    merge_config(cmd, "--rtol", cfg, "rtol", args.rtol);
    merge_config(cmd, "--atol", cfg, "atol", args.atol);
    merge_config(cmd, "--max-step", cfg, "max_step", args.max_step);
    merge_config(cmd, "--samples", cfg, "sample_count", args.samples);
    merge_config(cmd, "--seed", cfg, "seed", args.seed);
    merge_config(cmd, "--regularize", cfg, "regularize", args.regularize);
    merge_config(cmd, "--out", cfg, "out", args.out);

    SystemKind system;
    double parameter = 0.0;
    if (args.system == "kepler") {
        if (!args.alpha) throw UsageError("kepler runs need --alpha");
        if (args.k) throw UsageError("--k is a geodesic parameter; kepler takes --alpha only");
        system = SystemKind::Kepler;
        parameter = *args.alpha;
        if (parameter == 0.0) throw UsageError("alpha = 0 is excluded");
    } else if (args.system == "geodesic") {
        if (!args.k) throw UsageError("geodesic runs need --k");
        if (args.alpha) throw UsageError("--alpha is a kepler parameter; geodesic takes --k only");
        if (args.chart != "natural" && args.chart != "transformed")
            throw UsageError("--chart must be natural or transformed");
        system = args.chart == "natural" ? SystemKind::GeodesicNatural
                                         : SystemKind::GeodesicTransformed;
        parameter = *args.k;
    } else {
        throw UsageError("--system must be kepler or geodesic");
    }
    if (args.regularize &&
        (system != SystemKind::GeodesicNatural || parameter <= 0.0))
        throw UsageError("--regularize applies to natural-chart geodesics with k > 0");
    if (!(args.t_final > 0.0)) throw UsageError("--t-final must be positive");

    const keplergeo::PhasePoint start{to_vec3(args.x, "--x"), to_vec3(args.p, "--p")};
    keplergeo::IntegratorConfig icfg{args.rtol, args.atol, args.max_step, args.samples};

    const Trajectory traj =
        args.regularize
            ? keplergeo::integrate_regularized_geodesic(
                  parameter, {start, Chart::Natural, parameter}, args.t_final, icfg)
            : keplergeo::integrate(system, parameter, start, args.t_final, icfg);

    keplergeo::write_trajectory_csv(traj, args.out);
    auto sidecar = keplergeo::trajectory_sidecar(traj, args.seed);
    sidecar["command"] = "simulate";
    sidecar["regularized"] = args.regularize;
    keplergeo::write_json(sidecar, keplergeo::sidecar_path(args.out));

    if (traj.truncated) {
        std::cerr << "simulate: trajectory truncated: " << traj.truncation_reason
                  << " (partial output written to " << args.out << ")\n";
        return kExitUsage;
    }
    std::cout << "wrote " << traj.samples.size() << " samples to " << args.out << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dualize
// ---------------------------------------------------------------------------

struct DualizeArgs {
    std::string input;
    std::string branch = "attractive";
    std::string out = "kepler.csv";
    std::string config;
};

int run_dualize(const CLI::App& cmd, DualizeArgs args) {
    const nlohmann::json cfg = load_config(args.config);
    merge_config(cmd, "--input", cfg, "input", args.input);
    merge_config(cmd, "--branch", cfg, "branch", args.branch);
    merge_config(cmd, "--out", cfg, "out", args.out);

    if (args.input.empty()) throw UsageError("dualize needs --input <trajectory.csv>");
    Branch branch;
    if (args.branch == "attractive")
        branch = Branch::Attractive;
    else if (args.branch == "repulsive")
        branch = Branch::Repulsive;
    else
        throw UsageError("--branch must be attractive or repulsive");

    const Trajectory geo = keplergeo::read_trajectory_csv(
        args.input, keplergeo::sidecar_path(args.input));
    if (geo.system != SystemKind::GeodesicTransformed)
        throw UsageError("dualize expects a transformed-chart geodesic trajectory");

    const double C = geo.samples.front().energy;
    const auto dict = keplergeo::make_dictionary(geo.parameter, C, branch);
    const Trajectory kep = keplergeo::map_trajectory(geo, dict);
    const auto two_form = keplergeo::two_form_correspondence(geo, kep, dict);
    const double eom = keplergeo::kepler_eom_residual(kep);
    double transport = 0.0;
    for (std::size_t i = 0; i < kep.samples.size(); ++i)
        for (std::size_t c = 0; c < 6; ++c)
            transport = std::max(transport, std::abs(kep.samples[i].charges[c] -
                                                     geo.samples[i].charges[c]));

    keplergeo::write_trajectory_csv(kep, args.out);
    nlohmann::ordered_json report;
    report["format"] = "keplergeo-duality-v1";
    report["command"] = "dualize";
    report["input"] = args.input;
    report["dictionary"] = {{"k", dict.k},
                            {"C", dict.C},
                            {"branch", to_string(dict.branch)},
                            {"E", dict.E},
                            {"alpha", dict.alpha}};
    const bool pass = two_form.pass && eom < 1e-6 && transport < 1e-9;
    report["residuals"] = {{"kepler_energy", two_form.energy_residual_kepler},
                           {"geodesic_energy", two_form.energy_residual_geodesic},
                           {"time_rate", two_form.time_rate_residual},
                           {"kepler_eom", eom},
                           {"charge_transport", transport}};
    report["pass"] = pass;
    keplergeo::write_json(report, keplergeo::sidecar_path(args.out));
    std::cout << report.dump(2) << "\n";
    return pass ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 7;
    std::size_t samples = 100;
    std::string out;
    std::string config;
};

int run_verify(const CLI::App& cmd, VerifyArgs args) {
    const nlohmann::json cfg = load_config(args.config);
    merge_config(cmd, "--suite", cfg, "suite", args.suite);
    merge_config(cmd, "--seed", cfg, "seed", args.seed);
    merge_config(cmd, "--samples", cfg, "samples", args.samples);
    merge_config(cmd, "--out", cfg, "out", args.out);

    bool known = false;
    for (const std::string& name : keplergeo::suite_names()) known = known || name == args.suite;
    if (!known) {
        std::string all;
        for (const std::string& name : keplergeo::suite_names()) all += " " + name;
        throw UsageError("unknown suite '" + args.suite + "'; options:" + all);
    }

    const keplergeo::SuiteReport report =
        keplergeo::run_suite(args.suite, args.seed, args.samples);
    const auto j = to_json(report);
    std::cout << j.dump(2) << "\n";
    if (!args.out.empty()) keplergeo::write_json(j, args.out);
    return report.all_pass() ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    std::optional<double> k;
    std::optional<double> energy;
    double alpha = 1.0;
    std::string config;
};

int run_classify(const CLI::App& cmd, ClassifyArgs args) {
    const nlohmann::json cfg = load_config(args.config);
    if (cmd.count("--k") == 0 && cfg.contains("k")) args.k = cfg["k"].get<double>();
    if (cmd.count("--energy") == 0 && cfg.contains("energy"))
        args.energy = cfg["energy"].get<double>();
    merge_config(cmd, "--alpha", cfg, "alpha", args.alpha);

    if (args.k.has_value() == args.energy.has_value())
        throw UsageError("classify needs exactly one of --k or --energy");

    keplergeo::BracketReport report;
    if (args.k) {
        const double k = *args.k;
        const double r = k < 0.0 ? std::min(0.5, 0.9 * 2.0 / std::sqrt(-k)) : 0.5;
        report = keplergeo::curvature_bracket_table(
            {{{r, 0, 0}, {0.2, 1.0, 0.1}}, Chart::Natural, k});
        std::cout << "k " << keplergeo::format_double(k) << "\n";
    } else {
        const double E = *args.energy;
        const double alpha = args.alpha;
        if (alpha <= 0.0) throw UsageError("classify --energy expects alpha > 0");
        const double r = E < 0.0 ? std::min(1.0, 0.5 * alpha / -E) : 1.0;
        const double speed = std::sqrt(2.0 * (E + alpha / r));
        report = keplergeo::kepler_bracket_table({{r, 0, 0}, {0, speed, 0}}, {alpha});
        std::cout << "energy " << keplergeo::format_double(E) << "\n";
    }
    std::cout << "algebra " << to_string(report.label) << "\n";
    std::cout << "max-bracket-residual " << keplergeo::format_double(report.max_residual)
              << "\n";
    std::cout << "convention " << report.convention << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kepler flows, constant-curvature geodesic flows, and the duality between them"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate one flow and write CSV + JSON");
    simulate->add_option("--system", sim.system, "kepler | geodesic");
    simulate->add_option("--alpha", sim.alpha, "Kepler mass parameter (nonzero)");
    simulate->add_option("--k", sim.k, "curvature parameter");
    simulate->add_option("--chart", sim.chart, "natural | transformed (geodesic only)");
    simulate->add_option("--x", sim.x, "initial position")->delimiter(',')->expected(1, 3);
    simulate->add_option("--p", sim.p, "initial momentum")->delimiter(',')->expected(1, 3);
    simulate->add_option("--t-final", sim.t_final, "integration span (> 0)");
    simulate->add_option("--rtol", sim.rtol, "relative tolerance");
    simulate->add_option("--atol", sim.atol, "absolute tolerance");
    simulate->add_option("--max-step", sim.max_step, "max step size (0 = unlimited)");
    simulate->add_option("--samples", sim.samples, "dense-output sample count");
    simulate->add_option("--seed", sim.seed, "seed recorded in the output metadata");
    simulate->add_flag("--regularize", sim.regularize,
                       "antipodal chart switching (natural chart, k > 0)");
    simulate->add_option("--out", sim.out, "output CSV path");
    simulate->add_option("--config", sim.config, "optional JSON config file");

    DualizeArgs dua;
    CLI::App* dualize = app.add_subcommand(
        "dualize", "map a transformed-chart geodesic trajectory to its Kepler dual");
    dualize->add_option("--input", dua.input, "geodesic trajectory CSV");
    dualize->add_option("--branch", dua.branch, "attractive | repulsive");
    dualize->add_option("--out", dua.out, "output CSV path");
    dualize->add_option("--config", dua.config, "optional JSON config file");

    VerifyArgs ver;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", ver.suite, "brackets | symplectic | constants | duality | regularize");
    verify->add_option("--seed", ver.seed, "RNG seed");
    verify->add_option("--samples", ver.samples, "random points per check");
    verify->add_option("--out", ver.out, "also write the JSON report here");
    verify->add_option("--config", ver.config, "optional JSON config file");

    ClassifyArgs cla;
    CLI::App* classify = app.add_subcommand(
        "classify", "name the charge algebra for a curvature or an energy");
    classify->add_option("--k", cla.k, "curvature parameter");
    classify->add_option("--energy", cla.energy, "Kepler energy value");
    classify->add_option("--alpha", cla.alpha, "Kepler mass parameter used with --energy");
    classify->add_option("--config", cla.config, "optional JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(*simulate, sim);
        if (dualize->parsed()) return run_dualize(*dualize, dua);
        if (verify->parsed()) return run_verify(*verify, ver);
        return run_classify(*classify, cla);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const keplergeo::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const keplergeo::InconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

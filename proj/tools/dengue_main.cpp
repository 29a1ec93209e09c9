// Command-line front end: scenario configuration, runs, control-strategy
// comparison and machine-readable outputs.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dengue/csv.hpp"
#include "dengue/equilibrium.hpp"
#include "dengue/model.hpp"
#include "dengue/montecarlo.hpp"
#include "dengue/ode.hpp"
#include "dengue/sensitivity.hpp"
#include "dengue/spatial.hpp"
#include "dengue/thresholds.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dengue;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& section)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed)
            if (key == a) { known = true; break; }
        if (!known)
            throw ConfigError("config: unknown key '" + key + "' in " + section);
    }
}

double as_number(const json& v, const std::string& what)
{
    if (!v.is_number())
        throw ConfigError("config: " + what + " must be a number");
    return v.get<double>();
}

json load_config(const std::string& path)
{
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        json parsed = json::parse(ss.str());
        if (!parsed.is_object())
            throw ConfigError("config: top level must be a JSON object");
        return parsed;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
}

ModelParams params_from_config(const json& root)
{
    ModelParams p = ModelParams::baseline();
    if (!root.contains("params")) {
        p.validate();
        return p;
    }
    const json& obj = root.at("params");
    if (!obj.is_object())
        throw ConfigError("config: params must be an object");

    std::vector<std::string_view> allowed(ModelParams::parameter_names().begin(),
                                          ModelParams::parameter_names().end());
    for (const auto& [key, value] : obj.items()) {
        if (key == "seasonality") {
            check_keys(value, {"d1", "d2", "f", "phi"}, "params.seasonality");
            if (value.contains("d1")) p.seasonality.d1 = as_number(value["d1"], "d1");
            if (value.contains("d2")) p.seasonality.d2 = as_number(value["d2"], "d2");
            if (value.contains("f")) p.seasonality.f = as_number(value["f"], "f");
            if (value.contains("phi")) p.seasonality.phi = as_number(value["phi"], "phi");
            continue;
        }
        bool known = false;
        for (auto name : allowed)
            if (key == name) { known = true; break; }
        if (!known)
            throw ConfigError("config: unknown parameter '" + key + "'");
        p.set(key, as_number(value, "params." + key));
    }
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: invalid parameters: ") + e.what());
    }
    return p;
}

SolverConfig solver_from_config(const json& root, double& t0, double& t1)
{
    SolverConfig cfg;
    cfg.sample_dt = 1.0;
    t0 = 0.0;
    t1 = 5000.0;
    if (!root.contains("solver")) return cfg;
    const json& obj = root.at("solver");
    check_keys(obj,
               {"method", "rtol", "atol", "fixed_step", "initial_step", "min_step",
                "sample_dt", "window", "tol", "t0", "t1"},
               "solver");
    if (obj.contains("method")) {
        const auto m = obj["method"].get<std::string>();
        if (m == "rk45")
            cfg.method = SolverMethod::AdaptiveRk45;
        else if (m == "rk4")
            cfg.method = SolverMethod::FixedRk4;
        else
            throw ConfigError("config: solver.method must be rk45 or rk4");
    }
    if (obj.contains("rtol")) cfg.rtol = as_number(obj["rtol"], "solver.rtol");
    if (obj.contains("atol")) cfg.atol = as_number(obj["atol"], "solver.atol");
    if (obj.contains("fixed_step"))
        cfg.fixed_step = as_number(obj["fixed_step"], "solver.fixed_step");
    if (obj.contains("initial_step"))
        cfg.initial_step = as_number(obj["initial_step"], "solver.initial_step");
    if (obj.contains("min_step"))
        cfg.min_step = as_number(obj["min_step"], "solver.min_step");
    if (obj.contains("sample_dt"))
        cfg.sample_dt = as_number(obj["sample_dt"], "solver.sample_dt");
    if (obj.contains("window"))
        cfg.convergence_window = as_number(obj["window"], "solver.window");
    if (obj.contains("tol"))
        cfg.convergence_tol = as_number(obj["tol"], "solver.tol");
    if (obj.contains("t0")) t0 = as_number(obj["t0"], "solver.t0");
    if (obj.contains("t1")) t1 = as_number(obj["t1"], "solver.t1");
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: invalid solver settings: ") + e.what());
    }
    if (!(t1 > t0)) throw ConfigError("config: solver needs t1 > t0");
    return cfg;
}

SamplerConfig sampler_from_config(const json& root, const CommonOptions& common)
{
    SamplerConfig cfg;
    if (root.contains("sampler")) {
        const json& obj = root.at("sampler");
        check_keys(obj, {"shape", "n_draws", "seed", "disable"}, "sampler");
        if (obj.contains("shape")) cfg.shape = as_number(obj["shape"], "sampler.shape");
        if (obj.contains("n_draws"))
            cfg.n_draws = static_cast<int>(as_number(obj["n_draws"], "sampler.n_draws"));
        if (obj.contains("seed"))
            cfg.seed = obj["seed"].get<std::uint64_t>();
        if (obj.contains("disable")) {
            for (const auto& name : obj["disable"]) {
                const auto s = name.get<std::string>();
                bool found = false;
                const auto& names = ModelParams::parameter_names();
                for (std::size_t j = 0; j < names.size(); ++j) {
                    if (names[j] == s) {
                        cfg.enabled[j] = false;
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw ConfigError("config: sampler.disable has unknown parameter '" +
                                      s + "'");
            }
        }
    }
    if (common.seed) cfg.seed = *common.seed;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: invalid sampler settings: ") + e.what());
    }
    return cfg;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json params_to_json(const ModelParams& p)
{
    json obj;
    for (auto name : ModelParams::parameter_names())
        obj[std::string(name)] = p.get(name);
    obj["seasonality"] = {{"d1", p.seasonality.d1},
                          {"d2", p.seasonality.d2},
                          {"f", p.seasonality.f},
                          {"phi", p.seasonality.phi}};
    return obj;
}

void write_text_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

void write_manifest(const CommonOptions& common, const std::string& mode,
                    const json& effective_config,
                    const std::vector<std::string>& outputs,
                    std::optional<std::uint64_t> seed = std::nullopt)
{
    json manifest;
    manifest["mode"] = mode;
    manifest["version"] = kVersion;
    manifest["generated_utc"] = utc_timestamp();
    if (seed) manifest["seed"] = *seed;
    manifest["config"] = effective_config;
    manifest["outputs"] = outputs;
    write_text_file(fs::path(common.out_dir) / "run_manifest.json",
                    manifest.dump(2) + "\n");
}

struct EquilibriumArtifacts {
    ThresholdReport report;
    EquilibriumPoint point;
    DiseaseFreePopulations df;
};

EquilibriumArtifacts compute_equilibrium(const ModelParams& p)
{
    EquilibriumArtifacts art{threshold_report(p), endemic_equilibrium(p),
                             disease_free_populations(p)};
    return art;
}

json equilibrium_to_json(const EquilibriumArtifacts& art)
{
    json j;
    j["R0"] = art.report.r0;
    j["T_h"] = art.report.t_h;
    j["lambda"] = art.report.lambda;
    j["prevalence"] = art.report.prevalence;
    j["I_M_eq"] = art.report.i_m_eq;
    j["N_H0"] = art.df.n_h0;
    j["N_M"] = art.df.n_m;
    j["N_E"] = art.df.n_e;
    j["mosquito_viable"] = art.df.mosquito_viable;
    j["endemic"] = art.point.endemic;
    j["N_H"] = art.point.n_h;
    const auto arr = art.point.state.to_array();
    for (std::size_t i = 0; i < arr.size(); ++i)
        j[std::string(StateVector::names()[i])] = arr[i];
    return j;
}

std::string equilibrium_to_csv(const EquilibriumArtifacts& art)
{
    const json j = equilibrium_to_json(art);
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += key;
        if (value.is_boolean())
            row += value.get<bool>() ? "1" : "0";
        else
            row += format_double(value.get<double>());
    }
    return header + "\n" + row + "\n";
}

int run_equilibrium(const CommonOptions& common, const json& config)
{
    const ModelParams p = params_from_config(config);
    const auto art = compute_equilibrium(p);

    fs::create_directories(common.out_dir);
    std::vector<std::string> outputs;
    if (common.format == "json") {
        write_text_file(fs::path(common.out_dir) / "equilibrium.json",
                        equilibrium_to_json(art).dump(2) + "\n");
        outputs.push_back("equilibrium.json");
    } else {
        write_text_file(fs::path(common.out_dir) / "equilibrium.csv",
                        equilibrium_to_csv(art));
        outputs.push_back("equilibrium.csv");
    }
    json echo;
    echo["params"] = params_to_json(p);
    write_manifest(common, "equilibrium", echo, outputs);

    std::cout << "R0 = " << format_double(art.report.r0)
              << "  prevalence = " << format_double(art.report.prevalence)
              << "  lambda = " << format_double(art.report.lambda) << "\n";
    return 0;
}

StateVector initial_state_from_config(const json& root, const ModelParams& p)
{
    std::string kind = "disease-free-seeded";
    double seed_infected = 1.0;
    if (root.contains("simulate")) {
        const json& obj = root.at("simulate");
        check_keys(obj, {"initial", "seed_infected"}, "simulate");
        if (obj.contains("seed_infected"))
            seed_infected = as_number(obj["seed_infected"], "simulate.seed_infected");
        if (obj.contains("initial")) {
            if (obj["initial"].is_array()) {
                const auto vals = obj["initial"].get<std::vector<double>>();
                if (vals.size() != 8)
                    throw ConfigError("config: simulate.initial array needs 8 entries");
                std::array<double, 8> arr{};
                std::copy(vals.begin(), vals.end(), arr.begin());
                return StateVector::from_array(arr);
            }
            kind = obj["initial"].get<std::string>();
        }
    }

    ModelParams constant = p;
    constant.seasonality.d2 = 0; // closed forms need the constant regime
    if (kind == "endemic") return endemic_equilibrium(constant).state;

    const auto df = disease_free_populations(constant);
    StateVector x;
    x.S_H = df.n_h0;
    x.S_M = df.n_m;
    x.S_E = df.n_e;
    if (kind == "disease-free") return x;
    if (kind == "disease-free-seeded") {
        x.S_H -= seed_infected;
        x.I_H = seed_infected;
        return x;
    }
    throw ConfigError("config: simulate.initial must be disease-free, "
                      "disease-free-seeded, endemic or an 8-entry array");
}

int run_simulate(const CommonOptions& common, const json& config)
{
    const ModelParams p = params_from_config(config);
    double t0, t1;
    const SolverConfig cfg = solver_from_config(config, t0, t1);
    const StateVector x0 = initial_state_from_config(config, p);

    const Trajectory traj = integrate(x0, p, t0, t1, cfg);

    json steady;
    if (t1 - t0 >= cfg.convergence_window) {
        const auto ss =
            detect_steady_state(traj, cfg.convergence_window, cfg.convergence_tol);
        steady["converged"] = ss.converged;
        const auto arr = ss.state.to_array();
        for (std::size_t i = 0; i < arr.size(); ++i)
            steady[std::string(StateVector::names()[i])] = arr[i];
    } else {
        steady["converged"] = false;
        steady["note"] = "span shorter than the convergence window";
    }

    fs::create_directories(common.out_dir);
    std::ostringstream csv;
    traj.write_csv(csv);
    write_text_file(fs::path(common.out_dir) / "trajectory.csv", csv.str());
    write_text_file(fs::path(common.out_dir) / "steady_state.json",
                    steady.dump(2) + "\n");

    json echo;
    echo["params"] = params_to_json(p);
    echo["t0"] = t0;
    echo["t1"] = t1;
    write_manifest(common, "simulate", echo,
                   {"trajectory.csv", "steady_state.json"});
    std::cout << "simulated " << format_double(t1 - t0) << " days, "
              << traj.times.size() << " samples\n";
    return 0;
}

int run_sensitivity(const CommonOptions& common, const json& config)
{
    const ModelParams p = params_from_config(config);
    double delta = 0.01;
    if (config.contains("sensitivity")) {
        const json& obj = config.at("sensitivity");
        check_keys(obj, {"delta_frac"}, "sensitivity");
        if (obj.contains("delta_frac"))
            delta = as_number(obj["delta_frac"], "sensitivity.delta_frac");
    }
    const SensitivityReport report = elasticity_table(p, delta);

    fs::create_directories(common.out_dir);
    std::ostringstream csv, txt;
    report.write_csv(csv);
    report.write_table(txt);
    write_text_file(fs::path(common.out_dir) / "sensitivity.csv", csv.str());
    write_text_file(fs::path(common.out_dir) / "sensitivity.txt", txt.str());

    json echo;
    echo["params"] = params_to_json(p);
    echo["delta_frac"] = delta;
    write_manifest(common, "sensitivity", echo, {"sensitivity.csv", "sensitivity.txt"});
    report.write_table(std::cout);
    return 0;
}

int run_montecarlo(const CommonOptions& common, const json& config, bool calibrate)
{
    const ModelParams p = params_from_config(config);
    const SamplerConfig cfg = sampler_from_config(config, common);

    fs::create_directories(common.out_dir);
    std::vector<std::string> outputs;

    if (calibrate) {
        // Published 95% CI half-widths the default dispersion was tuned to.
        const auto targets = published_ci_halfwidths();
        std::ostringstream os;
        os << "shape";
        for (auto n : ModelParams::parameter_names()) os << ',' << n;
        os << '\n';
        os << "published";
        for (double t : targets) os << ',' << format_double(t);
        os << '\n';
        for (double shape : {5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0}) {
            const auto half = sampled_halfwidths(p, shape, cfg.n_draws, cfg.seed);
            os << format_double(shape);
            for (double h : half) os << ',' << format_double(h);
            os << '\n';
        }
        write_text_file(fs::path(common.out_dir) / "calibration.csv", os.str());
        outputs.push_back("calibration.csv");
        json echo;
        echo["params"] = params_to_json(p);
        echo["n_draws"] = cfg.n_draws;
        write_manifest(common, "montecarlo-calibrate", echo, outputs, cfg.seed);
        std::cout << "wrote calibration.csv\n";
        return 0;
    }

    const MonteCarloResult result = run_monte_carlo(p, cfg);

    std::ostringstream draws_csv, summary_csv;
    write_draws_csv(draws_csv, result);
    write_summary_csv(summary_csv, result);
    write_text_file(fs::path(common.out_dir) / "montecarlo_draws.csv", draws_csv.str());
    write_text_file(fs::path(common.out_dir) / "montecarlo_summary.csv",
                    summary_csv.str());
    outputs = {"montecarlo_draws.csv", "montecarlo_summary.csv"};

    if (common.format == "json") {
        json j;
        j["seed"] = result.config.seed;
        j["shape"] = result.config.shape;
        j["n_draws"] = result.summary.n_draws;
        j["n_valid"] = result.summary.n_valid;
        j["n_below_threshold"] = result.summary.n_below_threshold;
        auto row = [](const SummaryRow& r) {
            return json{{"mean", r.mean},
                        {"variance", r.variance},
                        {"ci95_low", r.ci_low},
                        {"ci95_high", r.ci_high}};
        };
        const auto& names = ModelParams::parameter_names();
        for (std::size_t j2 = 0; j2 < names.size(); ++j2)
            j["parameters"][std::string(names[j2])] = row(result.summary.parameters[j2]);
        j["R0"] = row(result.summary.r0);
        j["lambda"] = row(result.summary.lambda);
        j["prevalence"] = row(result.summary.prevalence);
        write_text_file(fs::path(common.out_dir) / "montecarlo_summary.json",
                        j.dump(2) + "\n");
        outputs.push_back("montecarlo_summary.json");
    }

    json echo;
    echo["params"] = params_to_json(p);
    echo["sampler"] = {{"shape", cfg.shape}, {"n_draws", cfg.n_draws}};
    write_manifest(common, "montecarlo", echo, outputs, cfg.seed);
    std::cout << "R0 mean = " << format_double(result.summary.r0.mean)
              << "  lambda mean = " << format_double(result.summary.lambda.mean)
              << "  prevalence mean = " << format_double(result.summary.prevalence.mean)
              << "  (below threshold: " << result.summary.n_below_threshold << "/"
              << result.summary.n_draws << ")\n";
    return 0;
}

int run_spatial(const CommonOptions& common, const json& config)
{
    const ModelParams p = params_from_config(config);
    double t0, t1;
    SolverConfig cfg = solver_from_config(config, t0, t1);
    if (!config.contains("solver")) {
        t1 = 120.0; // spatial default horizon
    }

    Grid grid{8, 8, 1.0, true};
    auto profile = KernelProfile::UniformDisk;
    double radius = 2.0;
    std::string initial = "disease-free";
    int intro_i = -1, intro_j = -1;
    std::string intro_comp = "I_M";
    double intro_amount = 10.0;
    std::vector<double> biting_override, kappa_override;

    if (config.contains("spatial")) {
        const json& obj = config.at("spatial");
        check_keys(obj,
                   {"nx", "ny", "spacing", "periodic", "profile", "radius", "initial",
                    "introduce", "biting_rate", "kappa_h"},
                   "spatial");
        if (obj.contains("nx")) grid.nx = static_cast<int>(as_number(obj["nx"], "nx"));
        if (obj.contains("ny")) grid.ny = static_cast<int>(as_number(obj["ny"], "ny"));
        if (obj.contains("spacing"))
            grid.spacing = as_number(obj["spacing"], "spacing");
        if (obj.contains("periodic")) grid.periodic = obj["periodic"].get<bool>();
        if (obj.contains("profile")) {
            const auto s = obj["profile"].get<std::string>();
            if (s == "uniform-disk")
                profile = KernelProfile::UniformDisk;
            else if (s == "gaussian")
                profile = KernelProfile::Gaussian;
            else if (s == "exponential")
                profile = KernelProfile::Exponential;
            else
                throw ConfigError("config: spatial.profile must be uniform-disk, "
                                  "gaussian or exponential");
        }
        if (obj.contains("radius")) radius = as_number(obj["radius"], "radius");
        if (obj.contains("initial")) initial = obj["initial"].get<std::string>();
        if (obj.contains("introduce")) {
            const json& in = obj["introduce"];
            check_keys(in, {"i", "j", "compartment", "amount"}, "spatial.introduce");
            if (in.contains("i")) intro_i = static_cast<int>(as_number(in["i"], "i"));
            if (in.contains("j")) intro_j = static_cast<int>(as_number(in["j"], "j"));
            if (in.contains("compartment"))
                intro_comp = in["compartment"].get<std::string>();
            if (in.contains("amount"))
                intro_amount = as_number(in["amount"], "amount");
        }
        if (obj.contains("biting_rate"))
            biting_override = obj["biting_rate"].get<std::vector<double>>();
        if (obj.contains("kappa_h"))
            kappa_override = obj["kappa_h"].get<std::vector<double>>();
    }

    ModelParams constant = p;
    constant.seasonality.d2 = 0;
    StateVector base;
    if (initial == "endemic") {
        base = endemic_equilibrium(constant).state;
    } else if (initial == "disease-free") {
        const auto df = disease_free_populations(constant);
        base.S_H = df.n_h0;
        base.S_M = df.n_m;
        base.S_E = df.n_e;
    } else {
        throw ConfigError("config: spatial.initial must be disease-free or endemic");
    }

    SpatialField field = SpatialField::uniform(grid, base);
    field.biting_rate = std::move(biting_override);
    field.kappa_h = std::move(kappa_override);

    if (intro_i < 0) intro_i = grid.nx / 2;
    if (intro_j < 0) intro_j = grid.ny / 2;
    if (intro_i >= grid.nx || intro_j >= grid.ny)
        throw ConfigError("config: spatial.introduce cell outside the grid");
    if (intro_amount > 0) {
        auto& cell = field.cells[static_cast<std::size_t>(grid.index(intro_i, intro_j))];
        bool found = false;
        auto arr = cell.to_array();
        const auto& names = StateVector::names();
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (names[k] == intro_comp) {
                arr[k] += intro_amount;
                found = true;
                break;
            }
        }
        if (!found)
            throw ConfigError("config: spatial.introduce.compartment unknown");
        cell = StateVector::from_array(arr);
    }

    const BiteKernel kernel = build_kernel(profile, radius, grid);
    const SpatialTrajectory traj = simulate_spatial(field, kernel, p, t0, t1, cfg);

    fs::create_directories(common.out_dir);
    std::ostringstream csv;
    traj.write_csv(csv);
    write_text_file(fs::path(common.out_dir) / "spatial.csv", csv.str());

    json echo;
    echo["params"] = params_to_json(p);
    echo["grid"] = {{"nx", grid.nx},
                    {"ny", grid.ny},
                    {"spacing", grid.spacing},
                    {"periodic", grid.periodic}};
    echo["kernel"] = {{"radius", radius}};
    write_manifest(common, "spatial", echo, {"spatial.csv"});
    std::cout << "simulated " << grid.cells() << " cells over "
              << format_double(t1 - t0) << " days ("
              << (openmp_enabled() ? "OpenMP" : "serial") << ", kernel sum = "
              << format_double(kernel.weight_sum()) << ")\n";
    return 0;
}

OutputQuantity quantity_from_string(const std::string& s)
{
    if (s == "R0") return OutputQuantity::BasicReproduction;
    if (s == "lambda") return OutputQuantity::ForceOfInfection;
    if (s == "prevalence") return OutputQuantity::Prevalence;
    throw ConfigError("quantity must be R0, lambda or prevalence");
}

int run_compare(const CommonOptions& common, const json& config,
                const std::string& quantity_flag)
{
    const ModelParams p = params_from_config(config);
    std::string quantity = quantity_flag;
    if (config.contains("compare")) {
        const json& obj = config.at("compare");
        check_keys(obj, {"quantity"}, "compare");
        if (quantity.empty() && obj.contains("quantity"))
            quantity = obj["quantity"].get<std::string>();
    }
    if (quantity.empty()) quantity = "lambda";
    const OutputQuantity q = quantity_from_string(quantity);

    const SensitivityReport report = elasticity_table(p);
    const auto ranking = strategy_ranking(report, q);

    std::ostringstream os;
    os << "rank,strategy,parameter,elasticity_" << quantity_name(q)
       << ",elasticity_R0\n";
    for (std::size_t r = 0; r < ranking.size(); ++r) {
        const auto param = strategy_parameter(ranking[r]);
        os << (r + 1) << ',' << strategy_name(ranking[r]) << ','
           << control_parameter_name(param) << ','
           << format_double(report.cell(q, param).elasticity) << ','
           << format_double(
                  report.cell(OutputQuantity::BasicReproduction, param).elasticity)
           << '\n';
    }

    fs::create_directories(common.out_dir);
    write_text_file(fs::path(common.out_dir) / "strategies.csv", os.str());
    json echo;
    echo["params"] = params_to_json(p);
    echo["quantity"] = quantity;
    write_manifest(common, "compare-strategies", echo, {"strategies.csv"});

    std::cout << "strategy ranking by |" << quantity_name(q) << " elasticity|:";
    for (auto s : ranking) std::cout << ' ' << strategy_name(s);
    std::cout << "\n";
    return 0;
}

int run_sweep(const CommonOptions& common, const json& config,
              const std::string& param_flag, const std::vector<double>& values_flag)
{
    const ModelParams p = params_from_config(config);
    std::string param = param_flag;
    std::vector<double> values = values_flag;
    if (config.contains("sweep")) {
        const json& obj = config.at("sweep");
        check_keys(obj, {"param", "values"}, "sweep");
        if (param.empty() && obj.contains("param"))
            param = obj["param"].get<std::string>();
        if (values.empty() && obj.contains("values"))
            values = obj["values"].get<std::vector<double>>();
    }
    if (param.empty())
        throw ConfigError("sweep: missing --param (or sweep.param in the config)");
    bool known = false;
    for (auto n : ModelParams::parameter_names())
        if (n == param) { known = true; break; }
    if (!known)
        throw ConfigError("sweep: unknown parameter '" + param + "'");

    std::ostringstream os;
    os << param << ",R0,lambda,prevalence,error\n";
    for (double v : values) {
        ModelParams pv = p;
        pv.set(param, v);
        os << format_double(v) << ',';
        try {
            pv.validate();
            const auto report = threshold_report(pv);
            os << format_double(report.r0) << ',' << format_double(report.lambda)
               << ',' << format_double(report.prevalence) << ",\n";
        } catch (const std::exception& e) {
            os << ",,," << '"' << e.what() << '"' << '\n';
        }
    }

    fs::create_directories(common.out_dir);
    write_text_file(fs::path(common.out_dir) / "sweep.csv", os.str());
    json echo;
    echo["params"] = params_to_json(p);
    echo["sweep"] = {{"param", param}, {"values", values}};
    write_manifest(common, "sweep", echo, {"sweep.csv"});
    std::cout << "swept " << param << " over " << values.size() << " values\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dengue host-vector-egg transmission model toolkit"};
    app.fallthrough();

    CommonOptions common;
    app.add_option("--config", common.config_path, "JSON scenario configuration");
    app.add_option("--out", common.out_dir, "output directory (default: .)");
    app.add_option("--format", common.format, "artifact format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "sampler seed override");

    auto* eq_cmd = app.add_subcommand("equilibrium", "closed-form steady state and thresholds");
    auto* sim_cmd = app.add_subcommand("simulate", "time integration of the system");
    auto* sens_cmd = app.add_subcommand("sensitivity", "elasticities of R0, lambda, prevalence");
    auto* mc_cmd = app.add_subcommand("montecarlo", "parameter uncertainty resampling");
    bool calibrate = false;
    mc_cmd->add_flag("--calibrate", calibrate, "scan Beta shapes against published CI half-widths");
    auto* spatial_cmd = app.add_subcommand("spatial", "lattice simulation with a bite kernel");
    auto* cmp_cmd = app.add_subcommand("compare-strategies", "rank the four control strategies");
    std::string cmp_quantity;
    cmp_cmd->add_option("--quantity", cmp_quantity, "ranking column: R0, lambda or prevalence");
    auto* sweep_cmd = app.add_subcommand("sweep", "outputs across a list of parameter values");
    std::string sweep_param;
    std::vector<double> sweep_values;
    sweep_cmd->add_option("--param", sweep_param, "parameter name");
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->delimiter(',');

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (seed_opt->count() > 0) common.seed = seed_value;

    try {
        const json config = load_config(common.config_path);
        check_keys(config,
                   {"params", "solver", "simulate", "sampler", "sensitivity",
                    "spatial", "compare", "sweep"},
                   "top level");
        if (eq_cmd->parsed()) return run_equilibrium(common, config);
        if (sim_cmd->parsed()) return run_simulate(common, config);
        if (sens_cmd->parsed()) return run_sensitivity(common, config);
        if (mc_cmd->parsed()) return run_montecarlo(common, config, calibrate);
        if (spatial_cmd->parsed()) return run_spatial(common, config);
        if (cmp_cmd->parsed()) return run_compare(common, config, cmp_quantity);
        if (sweep_cmd->parsed()) return run_sweep(common, config, sweep_param, sweep_values);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const StiffnessError& e) {
        std::cerr << "stiffness error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const InsufficientDataError& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

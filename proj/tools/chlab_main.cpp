// chlab command-line tool: model inspection, invariant checking, torsion
// energy reports and constrained energy minimization on contact 3-manifold
// models. Exit codes: 0 success, 1 usage error, 2 invariant failure,
// 3 optimizer stall.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chlab/chlab.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitStall = 3;

struct GridOptions {
    int n = 32;
    std::string fd_order = "exact";  // 2 | 4 | exact

    chlab::PeriodicGrid3 grid() const {
        chlab::PeriodicGrid3 g;
        g.n = n;
        if (fd_order == "exact") {
            g.kernel = chlab::DerivKernel::Exact;
        } else if (fd_order == "2" || fd_order == "4") {
            g.kernel = chlab::DerivKernel::Stencil;
            g.fd_order = std::stoi(fd_order);
        } else {
            throw std::invalid_argument("--fd-order must be 2, 4 or exact");
        }
        return g;
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Flat `key = value` config support. Keys are the long option names of the
// subcommand; values set on the command line win.
struct ConfigBinding {
    CLI::Option* opt = nullptr;
    std::function<void(const std::string&)> set;
};
using ConfigMap = std::map<std::string, ConfigBinding>;

void parse_into(const std::string& text, std::string& out) { out = text; }
void parse_into(const std::string& text, double& out) { out = std::stod(text); }
void parse_into(const std::string& text, int& out) { out = std::stoi(text); }
void parse_into(const std::string& text, std::uint64_t& out) { out = std::stoull(text); }

template <class T>
void bind_key(ConfigMap& map, CLI::Option* opt, const std::string& key, T& var) {
    map[key] = ConfigBinding{opt, [&var](const std::string& text) { parse_into(text, var); }};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void apply_config(const std::string& path, const ConfigMap& map) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        for (char& ch : key)
            if (ch == '_') ch = '-';
        const std::string value = trim(stripped.substr(eq + 1));
        const auto it = map.find(key);
        if (it == map.end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        if (it->second.opt->count() == 0) it->second.set(value);
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

ordered_json report_to_json(const chlab::Model& model, const chlab::EnergyReport& rep,
                            const GridOptions& grid_opts) {
    ordered_json j;
    j["model"] = model.name;
    j["theta"] = model.contact.theta;
    if (model.spec.kind == chlab::ModelKind::Torus) {
        j["grid"] = {{"n", grid_opts.n}, {"fd_order", grid_opts.fd_order}};
    }
    j["energy"] = rep.energy;
    j["lambda_sq_min"] = rep.lambda_sq_min;
    j["lambda_sq_max"] = rep.lambda_sq_max;
    j["lambda_sq_mean"] = rep.lambda_sq_mean;
    j["tanno_residual_l2"] = rep.tanno_residual_l2;
    j["critical"] = rep.critical;
    j["compatible"] = {{"alpha_norm_defect", rep.compatible.alpha_norm_defect},
                       {"hodge_defect", rep.compatible.hodge_defect},
                       {"volume_defect", rep.compatible.volume_defect}};
    j["covariant_reeb_defect"] = rep.covariant_reeb_defect;
    j["reeb_lambda_sq_sup"] = rep.reeb_lambda_sq_sup;
    if (rep.calibration) {
        j["calibration"] = {{"kappa", rep.calibration->kappa},
                            {"kappa1_defect", rep.calibration->kappa1_defect},
                            {"kappa2_defect", rep.calibration->kappa2_defect},
                            {"mixed_defect", rep.calibration->mixed_defect},
                            {"volume_defect", rep.calibration->volume_defect},
                            {"lie_defect", rep.calibration->lie_defect},
                            {"sign_consistent", rep.calibration->sign_consistent}};
    } else {
        j["calibration"] = nullptr;
    }
    if (rep.curvature) {
        j["curvature"] = {{"k_reeb_stable", rep.curvature->k_reeb_stable},
                          {"k_reeb_unstable", rep.curvature->k_reeb_unstable}};
    } else {
        j["curvature"] = nullptr;
    }
    j["tolerance"] = rep.tolerance;
    return j;
}

int run_models_list(bool as_json) {
    const auto registry = chlab::model_registry();
    if (as_json) {
        ordered_json j = ordered_json::array();
        for (const auto& info : registry)
            j.push_back({{"name", info.name}, {"parameters", info.parameters},
                         {"summary", info.summary}, {"facts", info.facts}});
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& info : registry) {
        std::cout << info.name << "  (" << info.parameters << ")\n    " << info.summary << "\n";
    }
    return kExitOk;
}

int run_model_describe(const std::string& name, bool as_json) {
    const std::string base = name.substr(0, name.find(':'));
    const chlab::ModelInfo* info = chlab::find_model_info(base);
    if (info == nullptr) {
        std::cerr << "unknown model: " << name << "\n";
        return kExitUsage;
    }
    if (as_json) {
        ordered_json j = {{"name", info->name}, {"parameters", info->parameters},
                          {"summary", info->summary}, {"facts", info->facts}};
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << info->name << " (" << info->parameters << ")\n" << info->summary << "\n";
    for (const auto& fact : info->facts) std::cout << "  - " << fact << "\n";
    return kExitOk;
}

int run_check(const std::string& model_str, const GridOptions& grid_opts, double theta,
              double tol, double critical_tol, const std::string& out_path) {
    const chlab::ModelSpec spec = chlab::parse_model_string(model_str);
    const chlab::Model model = chlab::build_model(spec, grid_opts.grid());

    chlab::MetricField g = model.background_metric;
    chlab::Model checked = model;
    if (theta != model.contact.theta) {
        g = chlab::rescale_theta(g, model.contact, model.contact.theta, theta);
        checked.contact.theta = theta;
    }

    chlab::ReportOptions opts;
    opts.critical_tol = critical_tol;
    if (tol > 0.0) opts.tolerances.algebraic = tol;
    const chlab::EnergyReport rep = chlab::build_energy_report(checked, g, opts);

    ordered_json j = report_to_json(checked, rep, grid_opts);
    const bool ok = rep.invariants_ok();
    j["invariants_ok"] = ok;
    write_text(out_path, j.dump(2) + "\n");
    return ok ? kExitOk : kExitInvariant;
}

int run_optimize(const std::string& model_str, const GridOptions& grid_opts,
                 const chlab::OptConfig& config, const chlab::InitOptions& init,
                 const std::string& trace_path, const std::string& out_path) {
    const chlab::ModelSpec spec = chlab::parse_model_string(model_str);
    const chlab::Model model = chlab::build_model(spec, grid_opts.grid());

    const auto t0 = std::chrono::steady_clock::now();
    const chlab::MinimizeResult res = chlab::minimize(model, config, init);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    csv << "iter,energy,grad_norm,residual,step\n";
    for (const auto& row : res.trace)
        csv << row.iter << ',' << fmt17(row.energy) << ',' << fmt17(row.grad_norm) << ','
            << fmt17(row.residual) << ',' << fmt17(row.step) << '\n';
    write_text(trace_path, csv.str());

    ordered_json j;
    j["model"] = model.name;
    if (model.spec.kind == chlab::ModelKind::Torus)
        j["grid"] = {{"n", grid_opts.n}, {"fd_order", grid_opts.fd_order}};
    j["iterations"] = res.state.iter;
    j["initial_energy"] = res.trace.empty() ? res.state.energy : res.trace.front().energy;
    j["final_energy"] = res.state.energy;
    j["grad_norm"] = res.state.grad_norm;
    j["residual"] = res.trace.empty() ? 0.0 : res.trace.back().residual;
    j["converged"] = res.converged;
    j["stalled"] = res.stalled;
    j["constraint_drift"] = res.constraint_drift;
    j["seed"] = init.seed;
    j["wall_time_s"] = wall;
    write_text(out_path, j.dump(2) + "\n");

    return res.stalled ? kExitStall : kExitOk;
}

int run_report(const std::string& trace_path, const std::string& out_path) {
    std::ifstream in(trace_path);
    if (!in) {
        std::cerr << "cannot open trace file: " << trace_path << "\n";
        return kExitUsage;
    }
    std::string header;
    if (!std::getline(in, header) || header != "iter,energy,grad_norm,residual,step") {
        std::cerr << "not a chlab trace file (bad header): " << trace_path << "\n";
        return kExitUsage;
    }
    std::vector<chlab::TraceRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        chlab::TraceRow row;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        row.iter = std::stoi(cell);
        std::getline(ss, cell, ',');
        row.energy = std::stod(cell);
        std::getline(ss, cell, ',');
        row.grad_norm = std::stod(cell);
        std::getline(ss, cell, ',');
        row.residual = std::stod(cell);
        std::getline(ss, cell, ',');
        row.step = std::stod(cell);
        rows.push_back(row);
    }
    if (rows.empty()) {
        std::cerr << "trace has no rows: " << trace_path << "\n";
        return kExitUsage;
    }
    bool monotone = true;
    double max_increase = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].energy > rows[i - 1].energy) {
            monotone = false;
            max_increase = std::max(max_increase, rows[i].energy - rows[i - 1].energy);
        }
    }
    ordered_json j;
    j["rows"] = rows.size();
    j["first_iter"] = rows.front().iter;
    j["last_iter"] = rows.back().iter;
    j["initial_energy"] = rows.front().energy;
    j["final_energy"] = rows.back().energy;
    j["energy_drop"] = rows.front().energy - rows.back().energy;
    j["monotone"] = monotone;
    j["max_increase"] = max_increase;
    j["final_grad_norm"] = rows.back().grad_norm;
    j["final_residual"] = rows.back().residual;
    write_text(out_path, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chlab: compatible metrics, torsion energy and criticality on "
                 "model contact 3-manifolds"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: CHLAB_THREADS or hardware concurrency)");
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output where applicable");

    // models list
    CLI::App* models = app.add_subcommand("models", "model registry");
    CLI::App* models_list = models->add_subcommand("list", "list available models");
    models->require_subcommand(1);

    // model describe <name>
    CLI::App* model_cmd = app.add_subcommand("model", "model details");
    CLI::App* model_describe = model_cmd->add_subcommand("describe", "describe one model");
    std::string describe_name;
    model_describe->add_option("name", describe_name, "model name, e.g. sl2 or torus")
        ->required();
    model_cmd->require_subcommand(1);

    // check
    CLI::App* check = app.add_subcommand("check", "build a model, check invariants, report");
    std::string check_config;
    std::string check_model = "sl2:lambda=1";
    GridOptions check_grid;
    double check_theta = 2.0;
    double check_tol = 0.0;
    double check_critical_tol = 1e-8;
    std::string check_out = "-";
    ConfigMap check_cfg;
    check->add_option("--config", check_config, "flat key = value config file; flags override");
    bind_key(check_cfg,
             check->add_option("--model", check_model,
                               "model string (su2, nil, sl2:lambda=..., family:a=..,b=.., torus:m=..)"),
             "model", check_model);
    bind_key(check_cfg,
             check->add_option("--n", check_grid.n,
                               "torus grid sites per axis (power of two, 8..128)"),
             "n", check_grid.n);
    bind_key(check_cfg,
             check->add_option("--fd-order", check_grid.fd_order,
                               "torus derivative kernel: 2, 4 or exact"),
             "fd-order", check_grid.fd_order);
    bind_key(check_cfg,
             check->add_option("--theta", check_theta,
                               "check against this compatibility constant (rescales the metric)"),
             "theta", check_theta);
    bind_key(check_cfg, check->add_option("--tol", check_tol, "override the algebraic tolerance"),
             "tol", check_tol);
    bind_key(check_cfg,
             check->add_option("--critical-tol", check_critical_tol,
                               "residual threshold for the critical flag"),
             "critical-tol", check_critical_tol);
    bind_key(check_cfg, check->add_option("--out", check_out, "report path ('-' = stdout)"), "out",
             check_out);

    // optimize
    CLI::App* optimize =
        app.add_subcommand("optimize", "minimize the torsion energy over compatible metrics");
    std::string opt_config_path;
    std::string opt_model = "sl2:lambda=1";
    GridOptions opt_grid;
    chlab::OptConfig opt_config;
    chlab::InitOptions opt_init;
    std::string opt_trace = "trace.csv";
    std::string opt_out = "-";
    ConfigMap opt_cfg;
    optimize->add_option("--config", opt_config_path,
                         "flat key = value config file; flags override");
    bind_key(opt_cfg, optimize->add_option("--model", opt_model, "model string"), "model",
             opt_model);
    bind_key(opt_cfg, optimize->add_option("--n", opt_grid.n, "torus grid sites per axis"), "n",
             opt_grid.n);
    bind_key(opt_cfg,
             optimize->add_option("--fd-order", opt_grid.fd_order,
                                  "torus derivative kernel: 2, 4 or exact"),
             "fd-order", opt_grid.fd_order);
    bind_key(opt_cfg, optimize->add_option("--max-iter", opt_config.max_iter, "iteration budget"),
             "max-iter", opt_config.max_iter);
    bind_key(opt_cfg,
             optimize->add_option("--grad-tol", opt_config.grad_tol,
                                  "gradient-norm stopping threshold"),
             "grad-tol", opt_config.grad_tol);
    bind_key(opt_cfg,
             optimize->add_option("--armijo-c", opt_config.armijo_c,
                                  "sufficient-decrease constant"),
             "armijo-c", opt_config.armijo_c);
    bind_key(opt_cfg, optimize->add_option("--shrink", opt_config.shrink, "backtracking factor"),
             "shrink", opt_config.shrink);
    bind_key(opt_cfg,
             optimize->add_option("--initial-step", opt_config.initial_step,
                                  "line-search start step"),
             "initial-step", opt_config.initial_step);
    bind_key(opt_cfg,
             optimize->add_option("--trace-every", opt_config.trace_every, "trace row stride"),
             "trace-every", opt_config.trace_every);
    bind_key(opt_cfg, optimize->add_option("--init-u", opt_init.u0, "initial u = ln p"), "init-u",
             opt_init.u0);
    bind_key(opt_cfg, optimize->add_option("--init-r", opt_init.r0, "initial r"), "init-r",
             opt_init.r0);
    bind_key(opt_cfg,
             optimize->add_option("--perturb", opt_init.perturb_amplitude,
                                  "seeded band-limited perturbation amplitude"),
             "perturb", opt_init.perturb_amplitude);
    bind_key(opt_cfg, optimize->add_option("--seed", opt_init.seed, "perturbation seed"), "seed",
             opt_init.seed);
    bind_key(opt_cfg, optimize->add_option("--trace", opt_trace, "trace CSV path"), "trace",
             opt_trace);
    bind_key(opt_cfg,
             optimize->add_option("--out", opt_out, "summary JSON path ('-' = stdout)"), "out",
             opt_out);

    // report
    CLI::App* report = app.add_subcommand("report", "summarize a trace CSV");
    std::string report_trace;
    std::string report_out = "-";
    report->add_option("trace", report_trace, "trace.csv produced by optimize")->required();
    report->add_option("--out", report_out, "summary path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) chlab::set_thread_count(threads);

    try {
        if (models_list->parsed()) return run_models_list(as_json);
        if (model_describe->parsed()) return run_model_describe(describe_name, as_json);
        if (check->parsed()) {
            apply_config(check_config, check_cfg);
            return run_check(check_model, check_grid, check_theta, check_tol, check_critical_tol,
                             check_out);
        }
        if (optimize->parsed()) {
            apply_config(opt_config_path, opt_cfg);
            return run_optimize(opt_model, opt_grid, opt_config, opt_init, opt_trace, opt_out);
        }
        if (report->parsed()) return run_report(report_trace, report_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}

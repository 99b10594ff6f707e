// sil-sbm — command line front end: run, scan, oracle, fit, basis-info, bath-dump.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "silsbm/config.hpp"
#include "silsbm/errors.hpp"
#include "silsbm/fitting.hpp"
#include "silsbm/io.hpp"
#include "silsbm/oracles.hpp"
#include "silsbm/version.hpp"

namespace {

using namespace silsbm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int worker_count() {
    if (const char* env = std::getenv("SIL_SBM_WORKERS")) {
        const int workers = std::atoi(env);
        if (workers >= 1) return workers;
        throw ConfigError("SIL_SBM_WORKERS must be a positive integer");
    }
    return 1;
}

std::vector<double> parse_grid(const std::string& text, const std::string& what) {
    // "a:b:n" for n points linearly spaced over [a, b]; a single number for one
    std::vector<double> values;
    const auto first = text.find(':');
    try {
        if (first == std::string::npos) {
            values.push_back(std::stod(text));
            return values;
        }
        const auto second = text.find(':', first + 1);
        if (second == std::string::npos) throw std::invalid_argument("need a:b:n");
        const double a = std::stod(text.substr(0, first));
        const double b = std::stod(text.substr(first + 1, second - first - 1));
        const int n = std::stoi(text.substr(second + 1));
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        for (int i = 0; i < n; ++i)
            values.push_back(n == 1 ? a : a + (b - a) * i / static_cast<double>(n - 1));
        return values;
    } catch (const std::exception& e) {
        throw ConfigError(what + ": expected 'a:b:n' or a single number, got '" + text + "' (" +
                          e.what() + ")");
    }
}

RunManifest manifest_for(const ParsedConfig& parsed, const std::string& command) {
    const ExperimentConfig& cfg = parsed.experiment;
    RunManifest m;
    m.version = kVersion;
    m.command = command;
    m.status = "running";
    m.config = parsed.resolved;
    if (!parsed.preset.empty()) m.config["preset"] = parsed.preset;
    m.dimension = truncated_dimension(cfg.modes, cfg.nph);
    const double scale = cfg.kind == ScheduleKind::Static ? cfg.delta : cfg.h;
    const auto gaps = oracles::renormalized_gaps(cfg.bath.alpha, scale, cfg.bath.omega_c);
    m.delta_r = gaps.delta_r;
    m.delta_eff = gaps.delta_eff;
    m.gamma_toulouse = std::numbers::pi * scale * scale / (2.0 * cfg.bath.omega_c);
    return m;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const ParsedConfig parsed = parse_config_file(config_path);
    std::filesystem::create_directories(out_dir);
    const std::string manifest_path = out_dir + "/manifest.json";
    const std::string trajectory_path = out_dir + "/trajectory.csv";
    const std::string modes_path = out_dir + "/modes.csv";

    RunManifest manifest = manifest_for(parsed, "run");
    write_manifest(manifest, manifest_path);  // before results, for crash forensics

    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run_experiment(parsed.experiment);
    manifest.wall_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();

    write_trajectory(result.trajectory, trajectory_path);
    manifest.outputs.emplace_back(trajectory_path,
                                  std::to_string(fnv1a64_file(trajectory_path)));
    if (!result.trajectory.mode_snapshots.empty()) {
        write_mode_snapshots(result.trajectory, discretize(parsed.experiment.bath), modes_path);
        manifest.outputs.emplace_back(modes_path, std::to_string(fnv1a64_file(modes_path)));
    }
    manifest.status = "complete";
    write_manifest(manifest, manifest_path);

    std::cout << "dimension = " << result.dimension << "\n"
              << "delta_r = " << format_double(result.delta_r) << "\n"
              << "delta_eff = " << format_double(result.delta_eff) << "\n"
              << "max_norm_drift = " << format_double(result.trajectory.report.max_norm_drift)
              << "\n";
    if (result.excess)
        std::cout << "eres = " << format_double(*result.excess) << "\n"
                  << "fidelity = " << format_double(*result.fidelity) << "\n";
    std::cout << "trajectory: " << trajectory_path << "\n";
    return kExitOk;
}

int cmd_scan(const std::string& config_path, const std::string& out_dir,
             const std::string& tf_grid_text, const std::string& alpha_grid_text) {
    ParsedConfig parsed = parse_config_file(config_path);
    if (parsed.experiment.kind != ScheduleKind::RotatingSweep)
        throw ConfigError("scan requires kind = sweep in the config");
    const std::vector<double> tf_grid = parse_grid(tf_grid_text, "--tf-grid");
    const std::vector<double> alpha_grid = parse_grid(alpha_grid_text, "--alpha-grid");

    std::filesystem::create_directories(out_dir);
    const std::string manifest_path = out_dir + "/manifest.json";
    const std::string scan_path = out_dir + "/scan.csv";

    RunManifest manifest = manifest_for(parsed, "scan");
    {
        std::string grid;
        for (double v : tf_grid) grid += (grid.empty() ? "" : ",") + format_double(v);
        manifest.config["tf_grid"] = grid;
        grid.clear();
        for (double v : alpha_grid) grid += (grid.empty() ? "" : ",") + format_double(v);
        manifest.config["alpha_grid"] = grid;
    }
    write_manifest(manifest, manifest_path);

    const auto start = std::chrono::steady_clock::now();
    const ScanTable table =
        sweep_scan(parsed.experiment, tf_grid, alpha_grid, worker_count());
    manifest.wall_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();

    write_scan(table, scan_path);
    manifest.outputs.emplace_back(scan_path, std::to_string(fnv1a64_file(scan_path)));
    std::size_t failures = 0;
    for (const ScanCell& cell : table.cells)
        if (!cell.ok) {
            ++failures;
            std::cerr << "cell (tf=" << cell.tf << ", alpha=" << cell.alpha
                      << ") failed: " << cell.error << "\n";
        }
    manifest.status = failures == 0 ? "complete" : "complete-with-failures";
    write_manifest(manifest, manifest_path);
    std::cout << "scan: " << scan_path << " (" << table.cells.size() << " cells, " << failures
              << " failed)\n";
    return kExitOk;
}

struct OracleArgs {
    std::string which;
    double delta = 1.0, omega_c = 5.0, alpha = 0.1, h0 = 0.0, h = 1.0;
    double beta = -1.0;  // <= 0 means T = 0
    double tf = 10.0, t_max = 10.0;
    int points = 201;
    std::string out;
};

int cmd_oracle(const OracleArgs& args) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file) throw ConfigError("cannot open '" + args.out + "' for writing");
        os = &file;
    }
    const int n = args.points;
    if (n < 2) throw ConfigError("--points must be >= 2");
    auto grid = [&](double lo, double hi, int i) {
        return lo + (hi - lo) * i / static_cast<double>(n - 1);
    };
    const double beta = args.beta > 0.0 ? args.beta : oracles::kBetaInfinite;

    if (args.which == "toulouse") {
        *os << "t,sigma_z\n";
        for (int i = 0; i < n; ++i) {
            const double t = grid(0.0, args.t_max, i);
            *os << format_double(t) << ','
                << format_double(oracles::toulouse_sigma_z(t, args.h0, beta, args.delta,
                                                           args.omega_c))
                << '\n';
        }
    } else if (args.which == "weak") {
        *os << "t,sigma_z,sigma_x\n";
        for (int i = 0; i < n; ++i) {
            const double t = grid(0.0, args.t_max, i);
            const auto w =
                oracles::weak_coupling_curves(t, args.alpha, args.delta, args.h0, args.omega_c);
            *os << format_double(t) << ',' << format_double(w.sigma_z) << ','
                << format_double(w.sigma_x) << '\n';
        }
    } else if (args.which == "eres-closed") {
        *os << "t_f,eres\n";
        for (int i = 0; i < n; ++i) {
            const double tf = grid(args.tf / n, args.tf, i);
            *os << format_double(tf) << ','
                << format_double(oracles::closed_excess_energy(tf, args.h)) << '\n';
        }
    } else if (args.which == "qfactor") {
        *os << "alpha,Q\n";
        for (int i = 0; i < n; ++i) {
            const double a = grid(0.01, 0.49, i);
            *os << format_double(a) << ',' << format_double(oracles::quality_factor(a)) << '\n';
        }
    } else if (args.which == "sweep-closed") {
        *os << "t,sx,sy,sz\n";
        for (int i = 0; i < n; ++i) {
            const double t = grid(0.0, args.tf, i);
            const Vec3 b = oracles::closed_sweep_state(t, args.tf, args.h);
            *os << format_double(t) << ',' << format_double(b[0]) << ',' << format_double(b[1])
                << ',' << format_double(b[2]) << '\n';
        }
    } else {
        throw ConfigError("unknown oracle '" + args.which +
                          "' (expected toulouse|weak|eres-closed|qfactor|sweep-closed)");
    }
    return kExitOk;
}

int cmd_fit(const std::string& input, const std::string& column, const std::string& window_text) {
    const TrajectoryFile file = read_trajectory(input);
    const std::size_t tcol = file.column_index("t");
    const std::size_t ycol = file.column_index(column);
    std::vector<double> t, y;
    t.reserve(file.rows.size());
    y.reserve(file.rows.size());
    for (const auto& row : file.rows) {
        t.push_back(row[tcol]);
        y.push_back(row[ycol]);
    }
    TimeWindow window{t.empty() ? 0.0 : t.front(), t.empty() ? 0.0 : t.back()};
    if (!window_text.empty()) {
        const auto colon = window_text.find(':');
        if (colon == std::string::npos)
            throw ConfigError("--window expects 'a:b', got '" + window_text + "'");
        window.begin = std::stod(window_text.substr(0, colon));
        window.end = std::stod(window_text.substr(colon + 1));
    }
    const DampedFit fit = fit_damped_cosine(t, y, window);
    std::cout << "omega = " << format_double(fit.omega) << "\n"
              << "gamma = " << format_double(fit.gamma) << "\n"
              << "amplitude = " << format_double(fit.amplitude) << "\n"
              << "phase = " << format_double(fit.phase) << "\n"
              << "offset = " << format_double(fit.offset) << "\n"
              << "residual_rms = " << format_double(fit.residual_rms) << "\n"
              << "converged = " << (fit.converged ? "true" : "false") << "\n"
              << "degenerate = " << (fit.degenerate ? "true" : "false") << "\n";
    if (fit.converged && !fit.degenerate)
        std::cout << "Q = " << format_double(quality_of(fit)) << "\n";
    return fit.converged ? kExitOk : kExitNumerical;
}

int cmd_basis_info(int modes, int nph, std::size_t max_dim) {
    const long double estimate = truncated_dimension_estimate(modes, nph);
    std::cout << "modes = " << modes << "\nnph = " << nph << "\n";
    if (estimate < 1e18L) {
        const std::uint64_t dim = truncated_dimension(modes, nph);
        std::cout << "dimension = " << dim << "\n"
                  << "state_vector_bytes = " << dim * 16 << "\n";
    } else {
        std::cout << "dimension ~ " << static_cast<double>(estimate) << "\n";
    }
    std::cout << "ceiling = " << max_dim << "\n"
              << "within_ceiling = "
              << (estimate <= static_cast<long double>(max_dim) ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_bath_dump(int modes, double alpha, double s, double omega_c, const std::string& out) {
    BathSpec spec{alpha, s, omega_c, modes};
    const BathModes bath = discretize(spec);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw ConfigError("cannot open '" + out + "' for writing");
        os = &file;
    }
    *os << "k,omega_k,g_k\n";
    for (int k = 0; k < bath.count(); ++k)
        *os << k << ',' << format_double(bath.omegas[k]) << ','
            << format_double(bath.couplings[k]) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative qubit dynamics via short-iterative-Lanczos propagation"};
    app.set_help_flag("--help", "print help");  // keep -h free for field amplitudes
    app.set_version_flag("--version", std::string("sil-sbm ") + silsbm::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    auto add_subcommand = [&app](const std::string& name, const std::string& text) {
        auto* sub = app.add_subcommand(name, text);
        sub->set_help_flag("--help", "print help");
        return sub;
    };
    auto* run = add_subcommand("run", "run one experiment from a config file");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory (default: current)");

    std::string tf_grid = "1:10:10", alpha_grid = "0";
    auto* scan = add_subcommand("scan", "sweep over (tf, alpha) grid cells");
    scan->add_option("--config", config_path, "sweep config file")->required();
    scan->add_option("--out", out_dir, "output directory (default: current)");
    scan->add_option("--tf-grid", tf_grid, "a:b:n or single value")->required();
    scan->add_option("--alpha-grid", alpha_grid, "a:b:n or single value")->required();

    OracleArgs oracle;
    auto* orc = add_subcommand("oracle", "tabulate analytic reference curves");
    orc->add_option("--which", oracle.which,
                    "toulouse|weak|eres-closed|qfactor|sweep-closed")->required();
    orc->add_option("--delta", oracle.delta, "tunnelling energy");
    orc->add_option("--omega-c", oracle.omega_c, "cutoff frequency");
    orc->add_option("--alpha", oracle.alpha, "coupling strength");
    orc->add_option("--h0", oracle.h0, "static bias");
    orc->add_option("--h", oracle.h, "drive amplitude");
    orc->add_option("--beta", oracle.beta, "inverse temperature; <= 0 means T = 0");
    orc->add_option("--tf", oracle.tf, "sweep duration / grid end");
    orc->add_option("--t-max", oracle.t_max, "time grid end");
    orc->add_option("--points", oracle.points, "number of grid points");
    orc->add_option("--out", oracle.out, "output file (default: stdout)");

    std::string fit_input, fit_column = "sz", fit_window;
    auto* fit = add_subcommand("fit", "fit a damped cosine to a trajectory column");
    fit->add_option("--input", fit_input, "trajectory csv")->required();
    fit->add_option("--column", fit_column, "column to fit (default sz)");
    fit->add_option("--window", fit_window, "time window a:b (default: full range)");

    int modes = 0, nph = 0;
    std::size_t max_dim = silsbm::kDefaultMaxDimension;
    auto* info = add_subcommand("basis-info", "print dimension and memory estimate");
    info->add_option("--modes", modes, "number of bath modes")->required();
    info->add_option("--nph", nph, "excitation budget")->required();
    info->add_option("--max-dim", max_dim, "capacity ceiling");

    double bd_alpha = 0.1, bd_s = 1.0, bd_omega_c = 5.0;
    std::string bd_out;
    auto* dump = add_subcommand("bath-dump", "write the discretized (k, omega_k, g_k) table");
    dump->add_option("--modes", modes, "number of bath modes")->required();
    dump->add_option("--alpha", bd_alpha, "coupling strength");
    dump->add_option("--s", bd_s, "spectral exponent");
    dump->add_option("--omega-c", bd_omega_c, "cutoff frequency");
    dump->add_option("--out", bd_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (scan->parsed()) return cmd_scan(config_path, out_dir, tf_grid, alpha_grid);
        if (orc->parsed()) return cmd_oracle(oracle);
        if (fit->parsed()) return cmd_fit(fit_input, fit_column, fit_window);
        if (info->parsed()) return cmd_basis_info(modes, nph, max_dim);
        if (dump->parsed()) return cmd_bath_dump(modes, bd_alpha, bd_s, bd_omega_c, bd_out);
    } catch (const silsbm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}

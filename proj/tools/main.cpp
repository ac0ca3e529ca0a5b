#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmmatch/cli.hpp"
#include "swarmmatch/csv.hpp"
#include "swarmmatch/errors.hpp"

namespace {

namespace fs = std::filesystem;
using swarmmatch::ConfigError;
using swarmmatch::IoError;

struct RunOptions {
    swarmmatch::cli::RunSpec spec;
    std::vector<double> bounds{10.0, 120.0};
    std::vector<double> sweep{1e9, 9e9, 201.0};
    bool deterministic_update = false;
    std::string config_path;
};

struct VerifyOptions {
    std::vector<double> impedances;
    double z_load = 100.0;
    double z_ref = 50.0;
    double f0 = 5e9;
    std::vector<double> sweep{1e9, 9e9, 201.0};
    std::string out_dir;
    std::string config_path;
};

// --- flat config files -------------------------------------------------

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

// key=value per line, keys named after the long flags without dashes.
// '#' starts a comment; values may be single- or double-quoted.
std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                                  (value.front() == '\'' && value.back() == '\''))) {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        if (!entries.emplace(key, value).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
    }
    return entries;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t parsed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value +
                          "' as an integer");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> items;
    std::size_t start = 0;
    while (true) {
        const auto comma = value.find(',', start);
        items.push_back(parse_double(key, trim(value.substr(start, comma - start))));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return items;
}

// Command-line flags win: a key is applied only when its flag is absent.
void apply_run_config(const CLI::App& cmd, RunOptions& opt) {
    for (const auto& [key, value] : read_flat_config(opt.config_path)) {
        if (cmd.count("--" + key) > 0) continue;
        if (key == "trials") opt.spec.trials = parse_u64(key, value);
        else if (key == "seed") opt.spec.base_seed = parse_u64(key, value);
        else if (key == "particles") opt.spec.particles = parse_u64(key, value);
        else if (key == "w") opt.spec.inertia_w = parse_double(key, value);
        else if (key == "c1") opt.spec.cognitive_c1 = parse_double(key, value);
        else if (key == "c2") opt.spec.social_c2 = parse_double(key, value);
        else if (key == "bounds") opt.bounds = parse_list(key, value);
        else if (key == "vclamp") opt.spec.v_clamp = parse_double(key, value);
        else if (key == "max-iters") opt.spec.max_iterations = parse_u64(key, value);
        else if (key == "tol") opt.spec.fitness_tolerance = parse_double(key, value);
        else if (key == "zload") opt.spec.problem.z_load = parse_double(key, value);
        else if (key == "ztarget") opt.spec.problem.z_target = parse_double(key, value);
        else if (key == "sections") opt.spec.problem.n_sections = parse_u64(key, value);
        else if (key == "penalty") opt.spec.problem.penalty_weight = parse_double(key, value);
        else if (key == "f0") opt.spec.sweep.f0_hz = parse_double(key, value);
        else if (key == "sweep") opt.sweep = parse_list(key, value);
        else if (key == "out") opt.spec.out_dir = value;
        else if (key == "deterministic-update")
            opt.deterministic_update = parse_bool(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

void apply_verify_config(const CLI::App& cmd, VerifyOptions& opt) {
    for (const auto& [key, value] : read_flat_config(opt.config_path)) {
        if (cmd.count("--" + key) > 0) continue;
        if (key == "zload") opt.z_load = parse_double(key, value);
        else if (key == "zref") opt.z_ref = parse_double(key, value);
        else if (key == "f0") opt.f0 = parse_double(key, value);
        else if (key == "sweep") opt.sweep = parse_list(key, value);
        else if (key == "out") opt.out_dir = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

// --- subcommand bodies -------------------------------------------------

void apply_sweep_vector(const std::vector<double>& sweep,
                        swarmmatch::matchdesign::SweepSettings& settings) {
    if (sweep.size() != 3) throw ConfigError("--sweep expects START,STOP,POINTS");
    const double points = sweep[2];
    if (!(points >= 1.0) || points != std::floor(points)) {
        throw ConfigError("--sweep POINTS must be a positive integer");
    }
    settings.f_start_hz = sweep[0];
    settings.f_stop_hz = sweep[1];
    settings.n_points = static_cast<std::size_t>(points);
}

int do_run(const CLI::App& cmd, RunOptions& opt) {
    if (!opt.config_path.empty()) apply_run_config(cmd, opt);
    if (opt.bounds.size() != 2) throw ConfigError("--bounds expects LO,HI");
    opt.spec.problem.bound_low = opt.bounds[0];
    opt.spec.problem.bound_high = opt.bounds[1];
    apply_sweep_vector(opt.sweep, opt.spec.sweep);
    opt.spec.stochastic_update = !opt.deterministic_update;

    const auto summary = swarmmatch::cli::run_trials(opt.spec);
    for (const auto& row : summary.rows) {
        std::cout << "trial " << row.trial << ": fitness="
                  << swarmmatch::csv::format_double(row.result.fitness)
                  << " ordering_ok=" << (row.result.ordering_ok ? "true" : "false")
                  << " gamma_db_at_f0="
                  << swarmmatch::csv::format_double(row.result.verified_db_at_f0)
                  << " iterations=" << row.result.iterations << " termination="
                  << swarmmatch::pso::to_string(row.result.termination) << '\n';
    }
    std::cout << "wrote " << summary.rows.size() << " trials to " << opt.spec.out_dir.string()
              << '\n';
    return 0;
}

int do_verify(const CLI::App& cmd, VerifyOptions& opt) {
    if (!opt.config_path.empty()) apply_verify_config(cmd, opt);
    if (opt.impedances.size() < 3) {
        throw ConfigError("verify expects at least three impedances");
    }
    swarmmatch::matchdesign::SweepSettings settings;
    settings.f0_hz = opt.f0;
    apply_sweep_vector(opt.sweep, settings);

    const auto result = swarmmatch::cli::verify_design(
        opt.impedances, opt.z_load, opt.z_ref, settings.f0_hz, settings.f_start_hz,
        settings.f_stop_hz, settings.n_points);

    if (opt.out_dir.empty()) {
        swarmmatch::csv::write_sweep(std::cout, result.points);
    } else {
        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec) throw IoError("cannot create output directory " + opt.out_dir);
        const fs::path path = fs::path(opt.out_dir) / "sweep_verify.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open " + path.string() + " for writing");
        swarmmatch::csv::write_sweep(out, result.points);
        out.flush();
        if (!out) throw IoError("failed writing " + path.string());
    }
    std::cout << "# gamma_db_at_f0 = " << swarmmatch::csv::format_double(result.db_at_f0)
              << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quarter-wave matching designer: swarm search plus two-port verification"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Run seeded design trials and write CSV artifacts");
    run_cmd->add_option("--config", run_opt.config_path,
                        "Flat key=value config file; flags take precedence");
    run_cmd->add_option("--trials", run_opt.spec.trials, "Number of trials");
    run_cmd->add_option("--seed", run_opt.spec.base_seed,
                        "Base seed; trial k runs with seed base+k");
    run_cmd->add_option("--particles", run_opt.spec.particles, "Swarm size");
    run_cmd->add_option("--w", run_opt.spec.inertia_w, "Inertia weight");
    run_cmd->add_option("--c1", run_opt.spec.cognitive_c1, "Cognitive coefficient");
    run_cmd->add_option("--c2", run_opt.spec.social_c2, "Social coefficient");
    run_cmd->add_option("--bounds", run_opt.bounds, "Impedance search bounds as LO,HI (ohm)")
        ->delimiter(',')
        ->expected(1, 2);
    run_cmd->add_option("--vclamp", run_opt.spec.v_clamp,
                        "Velocity clamp (ohm/iter); 0 = 0.1 * bound range");
    run_cmd->add_option("--max-iters", run_opt.spec.max_iterations, "Iteration budget");
    run_cmd->add_option("--tol", run_opt.spec.fitness_tolerance, "Fitness tolerance");
    run_cmd->add_option("--zload", run_opt.spec.problem.z_load, "Load resistance (ohm)");
    run_cmd->add_option("--ztarget", run_opt.spec.problem.z_target,
                        "Target line impedance (ohm)");
    run_cmd->add_option("--sections", run_opt.spec.problem.n_sections,
                        "Number of quarter-wave sections");
    run_cmd->add_option("--penalty", run_opt.spec.problem.penalty_weight,
                        "Ordering penalty weight per ohm of violation");
    run_cmd->add_option("--f0", run_opt.spec.sweep.f0_hz, "Design frequency (Hz)");
    run_cmd->add_option("--sweep", run_opt.sweep,
                        "Verification sweep grid as START,STOP,POINTS (Hz)")
        ->delimiter(',')
        ->expected(1, 3);
    run_cmd->add_option("--out", run_opt.spec.out_dir, "Output directory");
    run_cmd->add_flag("--deterministic-update", run_opt.deterministic_update,
                      "Use the literal update rule with r1 = r2 = 1");

    VerifyOptions verify_opt;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Sweep a finished design (impedances load-adjacent first), no optimization");
    verify_cmd->add_option("--config", verify_opt.config_path,
                           "Flat key=value config file; flags take precedence");
    verify_cmd
        ->add_option("impedances", verify_opt.impedances,
                     "Section impedances, load-adjacent first (ohm)")
        ->expected(-1);
    verify_cmd->add_option("--zload", verify_opt.z_load, "Load resistance (ohm)");
    verify_cmd->add_option("--zref", verify_opt.z_ref, "Reference impedance (ohm)");
    verify_cmd->add_option("--f0", verify_opt.f0, "Design frequency (Hz)");
    verify_cmd
        ->add_option("--sweep", verify_opt.sweep,
                     "Verification sweep grid as START,STOP,POINTS (Hz)")
        ->delimiter(',')
        ->expected(1, 3);
    verify_cmd->add_option("--out", verify_opt.out_dir,
                           "Write sweep_verify.csv here instead of stdout");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return do_run(*run_cmd, run_opt);
        return do_verify(*verify_cmd, verify_opt);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 1;
    } catch (const swarmmatch::DomainError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
}

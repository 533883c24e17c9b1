// nltlab: command-line front end (simulate, validate, sweep, mellin).

#include "nlt/diagnostics.hpp"
#include "nlt/gamma.hpp"
#include "nlt/io/config.hpp"
#include "nlt/io/format.hpp"
#include "nlt/io/manifest.hpp"
#include "nlt/io/sweep.hpp"
#include "nlt/io/validate.hpp"
#include "nlt/solver.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace nlt;
using namespace nlt::io;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

std::ofstream open_out(const fs::path& p)
{
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

int cmd_simulate(const std::string& config_path, const fs::path& out_dir)
{
    SimConfig cfg;
    try {
        cfg = load_sim_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return code(ExitCode::usage);
    }
    fs::create_directories(out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    RunManifest m;
    m.config_echo = cfg;
    m.tool_version = tool_version;
    RunCallbacks cb;
    int snap = 0;
    if (cfg.output_stride > 0) {
        fs::create_directories(out_dir / "snapshots");
        cb.on_output = [&](const Snapshot& s) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "snapshot_%06d", snap++);
            const fs::path rel = fs::path("snapshots") / stem;
            auto csv = open_out(out_dir / rel.string().append(".csv"));
            write_snapshot_csv(csv, s.u, s.drift);
            nlohmann::json side = {{"time", s.time},       {"index", snap - 1},
                                   {"alpha", cfg.alpha},   {"n", cfg.n},
                                   {"length", cfg.length}, {"columns", {"x", "u", "riesz_u"}}};
            open_out(out_dir / rel.string().append(".json")) << side.dump(2) << "\n";
            m.artifact_paths.push_back(rel.string() + ".csv");
            m.artifact_paths.push_back(rel.string() + ".json");
        };
    }
    const RunResult r = run(cfg, cb);

    {
        auto csv = open_out(out_dir / "diagnostics.csv");
        write_record_csv(csv, r.record);
    }
    m.artifact_paths.insert(m.artifact_paths.begin(), "diagnostics.csv");
    m.calibrated_constants = calibrated_constants(cfg);
    if (r.modulus_rescale) m.calibrated_constants["modulus_rescale"] = *r.modulus_rescale;
    m.verdict = r.verdict;
    m.reason = r.reason;
    m.blowup_time_estimate = r.blowup_time;
    m.confirm_blowup_time = r.confirm_blowup_time;
    m.final_time = r.final_time;
    m.steps = r.steps;
    m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, m);

    std::cout << "verdict " << to_string(r.verdict) << " at t = " << format_number(r.final_time) << " after "
              << r.steps << " steps";
    if (r.blowup_time) std::cout << ", blowup time " << format_number(*r.blowup_time);
    std::cout << "\n";
    if (!r.reason.empty()) std::cout << r.reason << "\n";
    return code(exit_code_for(r.verdict));
}

int cmd_validate(const std::string& level_name, const std::string& out, bool inject_gamma_fault)
{
    ValidationLevel level;
    try {
        level = validation_level_from_string(level_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return code(ExitCode::usage);
    }
    if (inject_gamma_fault) set_gamma_fault_injection(true);
    const auto rep = run_validation(level, [](const CheckResult& c) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  value " << format_number(c.value) << "  ("
                  << format_number(c.seconds) << " s)\n"
                  << std::flush;
    });
    const std::string text = to_json(rep).dump(2) + "\n";
    if (!out.empty()) {
        if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
        open_out(out) << text;
    }
    std::size_t failed = 0;
    for (const auto& c : rep.checks) failed += !c.passed;
    std::cout << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
    return code(failed ? ExitCode::failure : ExitCode::ok);
}

int cmd_sweep(const std::string& config_path, const fs::path& out_dir, int workers)
{
    SweepConfig sc;
    try {
        sc = load_sweep_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return code(ExitCode::usage);
    }
    if (workers <= 0) workers = default_workers();
    fs::create_directories(out_dir);
    std::size_t done = 0;
    const std::size_t total = sc.axes.cells();
    const auto r = run_sweep(sc, workers, [&](const SweepCell& c) {
        std::cout << "[" << ++done << "/" << total << "] alpha " << format_number(c.alpha) << " beta "
                  << format_number(c.beta) << " nu " << format_number(c.nu) << " amplitude "
                  << format_number(c.amplitude) << ": " << c.verdict << "\n"
                  << std::flush;
    });
    open_out(out_dir / "sweep.json") << to_json(r).dump(2) << "\n";
    {
        auto csv = open_out(out_dir / "sweep.csv");
        write_sweep_csv(csv, r);
    }
    std::size_t errors = 0;
    for (const auto& c : r.cells) errors += c.verdict == "error";
    for (const auto& b : r.boundary_estimate) {
        std::cout << "alpha " << format_number(b.alpha) << " nu " << format_number(b.nu) << " amplitude "
                  << format_number(b.amplitude) << ": boundary estimate "
                  << (b.estimate ? format_number(*b.estimate) : "none") << " (1 - alpha = "
                  << format_number(1.0 - b.alpha) << ")";
        if (!b.note.empty()) std::cout << " " << b.note;
        std::cout << "\n";
    }
    if (errors) std::cerr << errors << " cell(s) failed; see sweep.json\n";
    return code(errors ? ExitCode::failure : ExitCode::ok);
}

int cmd_mellin(double alpha, double theta, double lambda_max, int points, const std::string& out)
{
    try {
        if (out == "-") {
            write_mellin_csv(std::cout, alpha, theta, lambda_max, points);
        } else {
            std::ostringstream buf;
            write_mellin_csv(buf, alpha, theta, lambda_max, points);
            if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
            open_out(out) << buf.str();
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return code(ExitCode::usage);
    }
    return code(ExitCode::ok);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fractional drift-diffusion laboratory"};
    app.require_subcommand(1);

    std::string config, out, level = "fast";
    int workers = 0;
    bool inject = false;
    double alpha = 0.0, theta = 0.0, lambda_max = 1e4;
    int points = 200;

    auto* sim = app.add_subcommand("simulate", "run one simulation into a run directory");
    sim->add_option("--config", config, "config file")->required();
    sim->add_option("--out", out, "run directory")->required();

    auto* val = app.add_subcommand("validate", "run the certification suite");
    val->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    val->add_option("--out", out, "JSON report path");
    val->add_flag("--inject-gamma-fault", inject, "perturb the Gamma coefficients (self-test of the suite)");

    auto* swp = app.add_subcommand("sweep", "run a parameter sweep");
    swp->add_option("--config", config, "sweep config file")->required();
    swp->add_option("--out", out, "output directory")->required();
    swp->add_option("--workers", workers, "worker threads (default NLT_WORKERS or all cores)")
        ->check(CLI::NonNegativeNumber);

    auto* mel = app.add_subcommand("mellin", "tabulate the Mellin symbol F");
    mel->add_option("--alpha", alpha, "0 < alpha < 1")->required();
    mel->add_option("--theta", theta, "0 < theta < 1 - alpha")->required();
    mel->add_option("--lambda-max", lambda_max, "largest |lambda|");
    mel->add_option("--points", points, "points per side");
    mel->add_option("--out", out, "CSV path, - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::usage);
    }

    try {
        if (*sim) return cmd_simulate(config, out);
        if (*val) return cmd_validate(level, out, inject);
        if (*swp) return cmd_sweep(config, out, workers);
        if (*mel) return cmd_mellin(alpha, theta, lambda_max, points, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return code(ExitCode::failure);
    }
    return code(ExitCode::usage);
}

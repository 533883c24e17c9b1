#pragma once

#include "nlt/io/config.hpp"

#include "json.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlt::io {

struct ResolutionStudy {
    int n = 0;
    std::optional<double> blowup_time;
    int n_doubled = 0;
    std::optional<double> blowup_time_doubled;
};

struct SweepCell {
    double alpha = 0.0, beta = 0.0, nu = 0.0, amplitude = 0.0;
    // A solver verdict name, or "error" when the run threw.
    std::string verdict;
    std::string reason;
    std::optional<double> blowup_time;
    std::optional<double> confirm_blowup_time;
    double final_time = 0.0;
    long steps = 0;
    double u0_sup = 0.0;
    double final_sup = 0.0;
    double final_l1 = 0.0;
    double max_gradient = 0.0;
    // Blowup with beta >= 1 - alpha, which the regularity theory excludes.
    bool anomalous = false;
    std::optional<ResolutionStudy> resolution_study;
};

struct BoundaryEstimate {
    double alpha = 0.0, nu = 0.0, amplitude = 0.0;
    std::optional<double> highest_blowup_beta;
    std::optional<double> lowest_completed_beta;  // above highest_blowup_beta
    std::optional<double> estimate;               // midpoint of the final bracket
    bool non_monotone = false;                    // a completed cell below a blowup cell
    std::vector<SweepCell> refinement;            // bisection runs
    std::string note;
};

struct SweepResult {
    SweepAxes axes;
    std::vector<SweepCell> cells;  // alpha-major, then beta, nu, amplitude
    std::vector<BoundaryEstimate> boundary_estimate;
    int workers = 1;
    double wall_time = 0.0;
};

// NLT_WORKERS when set to a positive integer, else the hardware concurrency.
int default_workers();

// The config of one grid point. The modulus monitor stays on only where it is admissible.
SimConfig cell_config(const SimConfig& base, double alpha, double beta, double nu, double amplitude);

using CellRunner = std::function<RunResult(const SimConfig&)>;

// Runs every cell on `workers` threads; a throwing cell is recorded and the
// sweep continues. progress (if set) is called from worker threads, serialized.
// runner replaces nlt::run (test hook).
SweepResult run_sweep(const SweepConfig& sc, int workers,
                      const std::function<void(const SweepCell&)>& progress = {}, const CellRunner& runner = {});

nlohmann::json to_json(const SweepResult& r);
// Header: alpha,beta,nu,amplitude,verdict,blowup_time,confirm_blowup_time,final_time,steps,
// u0_sup,final_sup,final_l1,max_gradient,anomalous,reason
void write_sweep_csv(std::ostream& os, const SweepResult& r);

}  // namespace nlt::io

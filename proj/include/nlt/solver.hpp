#pragma once

#include "nlt/diagnostics.hpp"
#include "nlt/spectral.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlt {

enum class InitialFamily { odd_gaussian, odd_bump, custom_samples };

const char* to_string(InitialFamily f);
InitialFamily initial_family_from_string(std::string_view s);

struct InitialDataSpec {
    InitialFamily family = InitialFamily::odd_gaussian;
    double amplitude = 1.0;
    double width = 1.0;
    // custom_samples: one value per grid point, x_j = -L/2 + j dx.
    std::vector<double> samples;
    bool odd = true;

    // odd_gaussian: A x e^{-(x/w)^2}; odd_bump: A (x/w) exp(1 - 1/(1 - (x/w)^2)) on |x| < w.
    Field sample(const Grid& grid) const;

    bool operator==(const InitialDataSpec&) const = default;
};

struct SimConfig {
    double alpha = 0.4;  // 0 is accepted as the Burgers control
    double beta = 1.0;
    double nu = 1.0;
    int n = 4096;
    double length = 80.0;
    InitialDataSpec initial;
    double t_end = 1.0;
    double cfl_safety = 0.5;
    double dt_max = 0.05;
    std::optional<double> fixed_dt;  // bypasses adapt_dt (convergence studies)
    double blowup_gradient_threshold = 1e6;
    double spectral_tail_threshold = 1e-3;
    double boundary_threshold = 2e-2;          // during the run
    double initial_boundary_threshold = 1e-8;  // on the initial data
    bool confirm_blowup = true;
    bool drift_enabled = true;  // test hook: false leaves the linear flow only
    // Weight of a(t); 0 picks the middle of the admissible interval.
    double weight_delta = 0.0;
    double lp_exponent = 4.0;
    bool modulus_monitor = false;
    double modulus_delta = 0.1;
    int diag_stride = 1;    // diagnostics every k steps
    int output_stride = 0;  // snapshots every k steps, 0 for none

    Grid grid() const { return Grid(n, length); }
    bool supercritical() const { return beta < 1.0 - alpha - 1e-12; }
    double resolved_weight_delta() const;
    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const SimConfig&) const = default;
};

struct StepState {
    Field field;
    double time = 0.0;
    double dt = 0.0;
    long step_count = 0;
    double drift_sup = 0.0;  // ||d/dx Lambda^{-alpha} u||_inf
    double drift_amp = 0.0;  // ||Lambda^{-alpha} u||_inf
};

// Lawson (integrating-factor) RK4 in the half spectrum. The linear part
// exp(-nu |k|^beta dt) is exact; the drift (Lambda^{-alpha}u) u_x is
// dealiased by the 2/3 rule at every stage. Odd input stays exactly odd.
class Solver {
public:
    explicit Solver(const SimConfig& cfg);

    const SimConfig& config() const { return cfg_; }
    StepState initial_state() const;
    // Advances by state.dt and refreshes drift_sup / drift_amp.
    void step(StepState& s) const;
    // cfl * min(dx / ||v||, 1 / ||v_x||) clamped to [dt_min, dt_max], at most twice prev_dt.
    double adapt_dt(const StepState& s, double prev_dt) const;
    double dt_min() const { return 1e-12 * cfg_.t_end; }
    void refresh_drift(StepState& s) const;

private:
    using Spec = std::vector<cplx>;
    void nonlinear(const Spec& u, Spec& out) const;
    void to_spectrum(const Field& f, Spec& out) const;
    Field to_field(const Spec& s, bool odd) const;

    SimConfig cfg_;
    Grid grid_;
    int half_;
    int cut_;  // highest retained mode, n/3
    std::vector<double> k_;
    std::vector<double> riesz_;   // |k|^{-alpha}
    std::vector<double> decay_;   // |k|^beta nu (rate)
    std::vector<double> filter_;  // nu = 0 only
};

// One step through a temporary Solver.
StepState step(const StepState& state, const SimConfig& cfg);
double adapt_dt(const StepState& state, const SimConfig& cfg, double prev_dt);

struct Snapshot {
    double time;
    const Field& u;
    const Field& drift;  // Lambda^{-alpha} u
};

struct RunCallbacks {
    std::function<void(const Snapshot&)> on_output;
};

struct RunResult {
    DiagnosticsRecord record;
    Verdict verdict = Verdict::completed;
    std::string reason;
    std::optional<double> blowup_time;        // estimate at resolution n
    std::optional<double> confirm_blowup_time;  // the same at 2n
    double final_time = 0.0;
    long steps = 0;
    std::optional<double> modulus_rescale;
    int modulus_stride = 0;
    double weight_delta = 0.0;
    double u0_l1 = 0.0;
    double u0_sup = 0.0;
    Field final_field{Grid(8, 1.0)};
};

// Integrates to t_end or an early verdict. Blowup candidates (gradient above
// threshold with a clean spectral tail) are re-run at 2n; unless the time
// estimate moves by less than 5% the verdict becomes resolution_lost.
RunResult run(const SimConfig& cfg, const RunCallbacks& cb = {});

// Extrapolates 1/g -> 0 with a line through (t, 1/g) for g in [threshold/10, threshold].
std::optional<double> estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& g,
                                           double threshold);

struct KernelReport {
    double beta, nu, t;
    double min_over_max;        // min k / max k
    double symmetry_error;      // max |k(x) - k(-x)| / max k
    double monotone_violation;  // largest increase of k along |x| / max k
    double integral_error;      // |dx sum k - 1|
    std::optional<double> closed_form_error;  // beta = 1 or 2: max deviation / max k
    bool nonnegative, symmetric, monotone, unit_mass, ok;
};

// Fundamental solution exp(-nu |k|^beta t) on the grid.
KernelReport linear_kernel_check(double beta, double nu, double t, const Grid& grid = Grid(16384, 80.0));

}  // namespace nlt

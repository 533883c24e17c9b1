#include "nlt/io/sweep.hpp"

#include "nlt/io/format.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>

namespace nlt::io {

using nlohmann::json;

int default_workers()
{
    if (const char* env = std::getenv("NLT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return int(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SimConfig cell_config(const SimConfig& base, double alpha, double beta, double nu, double amplitude)
{
    SimConfig c = base;
    c.alpha = alpha;
    c.beta = beta;
    c.nu = nu;
    c.initial.amplitude = amplitude;
    if (c.modulus_monitor && (alpha == 0.0 || beta < 1.0 - alpha - 1e-12 || beta >= 2.0)) c.modulus_monitor = false;
    return c;
}

namespace {

// Work-stealing over an index range; every index runs exactly once.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn)
{
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
    };
    const int t = int(std::min<std::size_t>(std::max(1, workers), count));
    if (t <= 1) {
        body();
        return;
    }
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

bool is_blowup(const SweepCell& c) { return c.verdict == to_string(Verdict::blowup_detected); }
bool is_completed(const SweepCell& c) { return c.verdict == to_string(Verdict::completed); }

SweepCell run_cell(const CellRunner& runner, const SimConfig& base, double alpha, double beta, double nu,
                   double amplitude)
{
    SweepCell cell;
    cell.alpha = alpha;
    cell.beta = beta;
    cell.nu = nu;
    cell.amplitude = amplitude;
    try {
        const SimConfig cfg = cell_config(base, alpha, beta, nu, amplitude);
        const RunResult r = runner(cfg);
        cell.verdict = to_string(r.verdict);
        cell.reason = r.reason;
        cell.blowup_time = r.blowup_time;
        cell.confirm_blowup_time = r.confirm_blowup_time;
        cell.final_time = r.final_time;
        cell.steps = r.steps;
        cell.u0_sup = r.u0_sup;
        if (r.record.size()) {
            cell.final_sup = r.record.sup_norm.back();
            cell.final_l1 = r.record.l1_norm.back();
            cell.max_gradient = *std::max_element(r.record.gradient_sup.begin(), r.record.gradient_sup.end());
        }
        cell.anomalous = r.verdict == Verdict::blowup_detected && beta >= 1.0 - alpha - 1e-12;
        if (cell.anomalous) {
            ResolutionStudy rs{cfg.n, r.blowup_time, 2 * cfg.n, r.confirm_blowup_time};
            if (!rs.blowup_time_doubled) {
                SimConfig fine = cfg;
                fine.n = 2 * cfg.n;
                fine.confirm_blowup = false;
                fine.initial.samples.clear();
                if (cfg.initial.family != InitialFamily::custom_samples) rs.blowup_time_doubled = runner(fine).blowup_time;
            }
            cell.resolution_study = rs;
        }
    } catch (const std::exception& e) {
        cell.verdict = "error";
        cell.reason = e.what();
    }
    return cell;
}

std::vector<BoundaryEstimate> bracket(const SweepResult& r)
{
    std::vector<BoundaryEstimate> out;
    for (double a : r.axes.alpha)
        for (double nu : r.axes.nu)
            for (double amp : r.axes.amplitude) {
                BoundaryEstimate b;
                b.alpha = a;
                b.nu = nu;
                b.amplitude = amp;
                std::vector<const SweepCell*> group;
                for (const auto& c : r.cells)
                    if (c.alpha == a && c.nu == nu && c.amplitude == amp) group.push_back(&c);
                for (const auto* c : group)
                    if (is_blowup(*c) && (!b.highest_blowup_beta || c->beta > *b.highest_blowup_beta))
                        b.highest_blowup_beta = c->beta;
                for (const auto* c : group) {
                    if (!is_completed(*c)) continue;
                    if (b.highest_blowup_beta && c->beta < *b.highest_blowup_beta) b.non_monotone = true;
                    if ((!b.highest_blowup_beta || c->beta > *b.highest_blowup_beta) &&
                        (!b.lowest_completed_beta || c->beta < *b.lowest_completed_beta))
                        b.lowest_completed_beta = c->beta;
                }
                if (!b.highest_blowup_beta)
                    b.note = "no blowup cell";
                else if (!b.lowest_completed_beta)
                    b.note = "no completed cell above the highest blowup cell";
                out.push_back(std::move(b));
            }
    return out;
}

void refine(const CellRunner& runner, BoundaryEstimate& b, const SimConfig& base, int steps)
{
    if (!b.highest_blowup_beta || !b.lowest_completed_beta) return;
    double lo = *b.highest_blowup_beta, hi = *b.lowest_completed_beta;
    for (int k = 0; k < steps; ++k) {
        const double mid = 0.5 * (lo + hi);
        SweepCell c = run_cell(runner, base, b.alpha, mid, b.nu, b.amplitude);
        const bool up = is_blowup(c), down = is_completed(c);
        b.refinement.push_back(std::move(c));
        if (up)
            lo = mid;
        else if (down)
            hi = mid;
        else {
            b.note = "bisection stopped at an inconclusive run";
            break;
        }
    }
    b.highest_blowup_beta = lo;
    b.lowest_completed_beta = hi;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json cell_json(const SweepCell& c)
{
    json j = {{"alpha", c.alpha},
              {"beta", c.beta},
              {"nu", c.nu},
              {"amplitude", c.amplitude},
              {"verdict", c.verdict},
              {"reason", c.reason},
              {"blowup_time", opt(c.blowup_time)},
              {"confirm_blowup_time", opt(c.confirm_blowup_time)},
              {"final_time", c.final_time},
              {"steps", c.steps},
              {"u0_sup", c.u0_sup},
              {"final_sup", c.final_sup},
              {"final_l1", c.final_l1},
              {"max_gradient", c.max_gradient},
              {"anomalous", c.anomalous}};
    if (c.resolution_study) {
        const auto& s = *c.resolution_study;
        j["resolution_study"] = {{"n", s.n},
                                 {"blowup_time", opt(s.blowup_time)},
                                 {"n_doubled", s.n_doubled},
                                 {"blowup_time_doubled", opt(s.blowup_time_doubled)}};
    }
    return j;
}

std::string csv_text(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

std::string csv_opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

SweepResult run_sweep(const SweepConfig& sc, int workers, const std::function<void(const SweepCell&)>& progress,
                      const CellRunner& runner_hook)
{
    const CellRunner runner = runner_hook ? runner_hook : CellRunner([](const SimConfig& c) { return run(c); });
    if (sc.axes.cells() == 0) throw std::invalid_argument("sweep: empty axis");
    if (sc.axes.cells() > max_sweep_cells) throw std::invalid_argument("sweep: too many cells");
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult r;
    r.axes = sc.axes;
    r.workers = std::max(1, workers);

    struct Point {
        double a, b, nu, amp;
    };
    std::vector<Point> points;
    for (double a : sc.axes.alpha)
        for (double b : sc.axes.beta)
            for (double nu : sc.axes.nu)
                for (double amp : sc.axes.amplitude) points.push_back({a, b, nu, amp});
    r.cells.resize(points.size());
    std::mutex mu;
    parallel_for(points.size(), r.workers, [&](std::size_t i) {
        const auto& p = points[i];
        r.cells[i] = run_cell(runner, sc.base, p.a, p.b, p.nu, p.amp);
        if (progress) {
            std::lock_guard lock(mu);
            progress(r.cells[i]);
        }
    });

    r.boundary_estimate = bracket(r);
    if (sc.bisect_steps > 0)
        parallel_for(r.boundary_estimate.size(), r.workers,
                     [&](std::size_t i) { refine(runner, r.boundary_estimate[i], sc.base, sc.bisect_steps); });
    for (auto& b : r.boundary_estimate)
        if (b.highest_blowup_beta && b.lowest_completed_beta)
            b.estimate = 0.5 * (*b.highest_blowup_beta + *b.lowest_completed_beta);

    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

json to_json(const SweepResult& r)
{
    json j;
    j["tool_version"] = tool_version;
    j["axes"] = {{"alpha", r.axes.alpha}, {"beta", r.axes.beta}, {"nu", r.axes.nu}, {"amplitude", r.axes.amplitude}};
    j["cells"] = json::array();
    for (const auto& c : r.cells) j["cells"].push_back(cell_json(c));
    j["boundary_estimate"] = json::array();
    for (const auto& b : r.boundary_estimate) {
        json e = {{"alpha", b.alpha},
                  {"nu", b.nu},
                  {"amplitude", b.amplitude},
                  {"highest_blowup_beta", opt(b.highest_blowup_beta)},
                  {"lowest_completed_beta", opt(b.lowest_completed_beta)},
                  {"estimate", opt(b.estimate)},
                  {"critical_beta_theory", 1.0 - b.alpha},
                  {"non_monotone", b.non_monotone},
                  {"note", b.note}};
        e["refinement"] = json::array();
        for (const auto& c : b.refinement) e["refinement"].push_back(cell_json(c));
        j["boundary_estimate"].push_back(std::move(e));
    }
    // Everything above depends only on the config; wall_time and workers do not.
    j["workers"] = r.workers;
    j["wall_time"] = r.wall_time;
    return j;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r)
{
    os << "alpha,beta,nu,amplitude,verdict,blowup_time,confirm_blowup_time,final_time,steps,u0_sup,final_sup,"
          "final_l1,max_gradient,anomalous,reason\n";
    for (const auto& c : r.cells)
        os << format_number(c.alpha) << ',' << format_number(c.beta) << ',' << format_number(c.nu) << ','
           << format_number(c.amplitude) << ',' << c.verdict << ',' << csv_opt(c.blowup_time) << ','
           << csv_opt(c.confirm_blowup_time) << ',' << format_number(c.final_time) << ',' << c.steps << ','
           << format_number(c.u0_sup) << ',' << format_number(c.final_sup) << ',' << format_number(c.final_l1)
           << ',' << format_number(c.max_gradient) << ',' << (c.anomalous ? "true" : "false") << ','
           << csv_text(c.reason) << '\n';
}

}  // namespace nlt::io

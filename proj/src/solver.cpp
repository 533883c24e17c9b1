#include "nlt/solver.hpp"

#include "nlt/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlt {

const char* to_string(InitialFamily f)
{
    switch (f) {
    case InitialFamily::odd_gaussian: return "odd_gaussian";
    case InitialFamily::odd_bump: return "odd_bump";
    case InitialFamily::custom_samples: return "custom_samples";
    }
    return "unknown";
}

InitialFamily initial_family_from_string(std::string_view s)
{
    for (auto f : {InitialFamily::odd_gaussian, InitialFamily::odd_bump, InitialFamily::custom_samples})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown initial data family '" + std::string(s) + "'");
}

namespace {

// u_j <- (u_j - u_{n-j}) / 2, the mirror of x_j = -L/2 + j dx about 0.
void antisymmetrize(std::vector<double>& u)
{
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.5 * (u[j] - u[(n - j) % n]);
    u.swap(out);
}

}  // namespace

Field InitialDataSpec::sample(const Grid& grid) const
{
    const double a = amplitude, w = width;
    std::vector<double> v(grid.size());
    switch (family) {
    case InitialFamily::odd_gaussian:
        for (int j = 0; j < grid.size(); ++j) {
            const double x = grid.x(j);
            v[j] = a * x * std::exp(-(x / w) * (x / w));
        }
        break;
    case InitialFamily::odd_bump:
        for (int j = 0; j < grid.size(); ++j) {
            const double z = grid.x(j) / w;
            v[j] = std::abs(z) < 1.0 ? a * z * std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
        }
        break;
    case InitialFamily::custom_samples:
        if (int(samples.size()) != grid.size())
            throw std::invalid_argument("initial.samples: expected " + std::to_string(grid.size()) + " values, got " +
                                        std::to_string(samples.size()));
        v = samples;
        break;
    }
    if (odd) antisymmetrize(v);
    return Field(grid, std::move(v), odd);
}

// ---------------------------------------------------------------- config

double SimConfig::resolved_weight_delta() const
{
    if (weight_delta != 0.0) return weight_delta;
    // Middle of (2 alpha, 2(1 - beta)) when supercritical, of (2 alpha, 2) otherwise.
    return supercritical() ? alpha + (1.0 - beta) : alpha + 1.0;
}

void SimConfig::validate() const
{
    auto bad = [](const std::string& key, const std::string& why) {
        throw std::invalid_argument("config: " + key + " " + why);
    };
    if (!(alpha >= 0.0 && alpha < 1.0)) bad("alpha", "must lie in [0, 1)");
    if (!(beta >= 0.0 && beta <= 2.0)) bad("beta", "must lie in [0, 2]");
    if (!(nu >= 0.0)) bad("nu", "must be >= 0");
    if (n < 16 || n % 2) bad("n", "must be an even integer >= 16");
    if (!(length > 0.0)) bad("length", "must be positive");
    if (!(t_end > 0.0)) bad("t_end", "must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) bad("cfl_safety", "must lie in (0, 1]");
    if (!(dt_max > 0.0)) bad("dt_max", "must be positive");
    if (fixed_dt && !(*fixed_dt > 0.0)) bad("fixed_dt", "must be positive");
    if (!(blowup_gradient_threshold > 0.0)) bad("blowup_gradient_threshold", "must be positive");
    if (!(spectral_tail_threshold > 0.0)) bad("spectral_tail_threshold", "must be positive");
    if (!(boundary_threshold > 0.0)) bad("boundary_threshold", "must be positive");
    if (!(initial_boundary_threshold > 0.0)) bad("initial_boundary_threshold", "must be positive");
    if (weight_delta != 0.0 && !(weight_delta > 2.0 * alpha && weight_delta < 2.0))
        bad("weight_delta", "must lie in (2 alpha, 2)");
    if (!(lp_exponent >= 1.0)) bad("lp_exponent", "must be >= 1");
    if (modulus_monitor) {
        if (alpha == 0.0) bad("modulus_monitor", "needs alpha > 0");
        if (!(beta >= 1.0 - alpha - 1e-12 && beta < 2.0)) bad("modulus_monitor", "needs 1 - alpha <= beta < 2");
        if (!(modulus_delta > 0.0)) bad("modulus_delta", "must be positive");
    }
    if (diag_stride < 1) bad("diag_stride", "must be >= 1");
    if (output_stride < 0) bad("output_stride", "must be >= 0");
    if (!(initial.width > 0.0)) bad("initial.width", "must be positive");
    if (initial.family == InitialFamily::custom_samples && int(initial.samples.size()) != n)
        bad("initial.samples", "must hold n values");
}

// ---------------------------------------------------------------- solver

Solver::Solver(const SimConfig& cfg) : cfg_(cfg), grid_(cfg.grid())
{
    cfg_.validate();
    const int n = grid_.size();
    half_ = n / 2 + 1;
    cut_ = n / 3;
    k_.resize(half_);
    riesz_.resize(half_);
    decay_.resize(half_);
    const double kappa = 2.0 * std::numbers::pi / grid_.length();
    for (int j = 0; j < half_; ++j) {
        k_[j] = kappa * j;
        riesz_[j] = j == 0 ? 0.0 : std::pow(k_[j], -cfg_.alpha);
        // beta = 0 is the damping -nu u on every mode.
        decay_[j] = cfg_.nu * (cfg_.beta == 0.0 ? 1.0 : (j == 0 ? 0.0 : std::pow(k_[j], cfg_.beta)));
    }
    if (cfg_.nu == 0.0) {
        filter_.resize(half_);
        const double kn = double(n / 2);
        for (int j = 0; j < half_; ++j) filter_[j] = std::exp(-36.0 * std::pow(j / kn, 36.0));
    }
}

void Solver::to_spectrum(const Field& f, Spec& out) const
{
    const int n = grid_.size();
    out.resize(half_);
    thread_fft(n).forward(f.values().data(), out.data());
    for (auto& c : out) c /= double(n);
}

Field Solver::to_field(const Spec& s, bool odd) const
{
    std::vector<double> v(grid_.size());
    Spec tmp = s;
    thread_fft(grid_.size()).inverse(tmp.data(), v.data());
    return Field(grid_, std::move(v), odd);
}

void Solver::nonlinear(const Spec& u, Spec& out) const
{
    out.assign(half_, 0.0);
    if (!cfg_.drift_enabled) return;
    const int n = grid_.size();
    Spec a(half_, 0.0), b(half_, 0.0);
    for (int j = 0; j <= cut_; ++j) {
        a[j] = u[j] * riesz_[j];
        b[j] = u[j] * cplx(0.0, k_[j]);
    }
    std::vector<double> v(n), w(n);
    RealFFT& fft = thread_fft(n);
    fft.inverse(a.data(), v.data());
    fft.inverse(b.data(), w.data());
    for (int i = 0; i < n; ++i) v[i] *= w[i];
    fft.forward(v.data(), out.data());
    for (int j = 0; j < half_; ++j) out[j] = j <= cut_ ? out[j] / double(n) : 0.0;
}

StepState Solver::initial_state() const
{
    StepState s{cfg_.initial.sample(grid_)};
    refresh_drift(s);
    return s;
}

void Solver::refresh_drift(StepState& s) const
{
    const int n = grid_.size();
    Spec u, a(half_), b(half_);
    to_spectrum(s.field, u);
    for (int j = 0; j < half_; ++j) {
        a[j] = u[j] * riesz_[j];
        b[j] = a[j] * cplx(0.0, k_[j]);
    }
    a[n / 2] = b[n / 2] = 0.0;
    std::vector<double> v(n), w(n);
    RealFFT& fft = thread_fft(n);
    fft.inverse(a.data(), v.data());
    fft.inverse(b.data(), w.data());
    s.drift_amp = s.drift_sup = 0.0;
    for (int i = 0; i < n; ++i) {
        s.drift_amp = std::max(s.drift_amp, std::abs(v[i]));
        s.drift_sup = std::max(s.drift_sup, std::abs(w[i]));
    }
}

void Solver::step(StepState& s) const
{
    const double dt = s.dt;
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const bool odd = s.field.is_odd();
    Spec u, k1, k2, k3, k4, tmp(half_);
    to_spectrum(s.field, u);
    std::vector<double> eh(half_), e(half_);
    for (int j = 0; j < half_; ++j) {
        eh[j] = std::exp(-0.5 * dt * decay_[j]);
        e[j] = eh[j] * eh[j];
    }
    nonlinear(u, k1);
    for (int j = 0; j < half_; ++j) tmp[j] = eh[j] * (u[j] + 0.5 * dt * k1[j]);
    nonlinear(tmp, k2);
    for (int j = 0; j < half_; ++j) tmp[j] = eh[j] * u[j] + 0.5 * dt * k2[j];
    nonlinear(tmp, k3);
    for (int j = 0; j < half_; ++j) tmp[j] = e[j] * u[j] + dt * eh[j] * k3[j];
    nonlinear(tmp, k4);
    for (int j = 0; j < half_; ++j)
        u[j] = e[j] * u[j] + dt / 6.0 * (e[j] * k1[j] + 2.0 * eh[j] * (k2[j] + k3[j]) + k4[j]);
    if (!filter_.empty())
        for (int j = 0; j < half_; ++j) u[j] *= filter_[j];
    if (odd)
        for (auto& c : u) c = cplx(0.0, c.imag());
    u[half_ - 1] = cplx(u[half_ - 1].real(), 0.0);
    s.field = to_field(u, odd);
    s.time += dt;
    ++s.step_count;
    refresh_drift(s);
}

double Solver::adapt_dt(const StepState& s, double prev_dt) const
{
    if (cfg_.fixed_dt) return *cfg_.fixed_dt;
    const double eps = 1e-12;
    double dt = cfg_.cfl_safety *
                std::min(grid_.spacing() / std::max(s.drift_amp, eps), 1.0 / std::max(s.drift_sup, eps));
    dt = std::min(dt, cfg_.dt_max);
    if (prev_dt > 0.0) dt = std::min(dt, 2.0 * prev_dt);
    return dt;
}

StepState step(const StepState& state, const SimConfig& cfg)
{
    StepState s = state;
    Solver(cfg).step(s);
    return s;
}

double adapt_dt(const StepState& state, const SimConfig& cfg, double prev_dt)
{
    return Solver(cfg).adapt_dt(state, prev_dt);
}

// ---------------------------------------------------------------- run

std::optional<double> estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& g,
                                           double threshold)
{
    double st = 0, sy = 0, stt = 0, sty = 0;
    int m = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(g[i] >= 0.1 * threshold) || !std::isfinite(g[i])) continue;
        const double y = 1.0 / g[i];
        st += t[i], sy += y, stt += t[i] * t[i], sty += t[i] * y;
        ++m;
    }
    if (m < 3) return std::nullopt;
    const double den = m * stt - st * st;
    if (!(den > 0.0)) return std::nullopt;
    const double slope = (m * sty - st * sy) / den, icpt = (sy - slope * st) / m;
    if (!(slope < 0.0)) return std::nullopt;
    return -icpt / slope;
}

namespace {

struct Recorder {
    const SimConfig& cfg;
    double delta;
    double u0_sup;
    std::optional<ModulusSpec> spec;
    double lambda = 1.0;

    void record(DiagnosticsRecord& r, const StepState& s, double grad, double tail, double bf) const
    {
        const Field& u = s.field;
        const Grid& g = u.grid();
        r.times.push_back(s.time);
        r.dt.push_back(s.dt);
        r.sup_norm.push_back(refined_sup(u));
        r.l1_norm.push_back(l1_norm(u));
        r.lp_norm.push_back(lp_norm(u, cfg.lp_exponent));
        r.gradient_sup.push_back(grad);
        r.drift_criterion_integrand.push_back(s.drift_sup);
        r.alt_criterion_integrand.push_back(frac_laplacian(u, 1.0 - cfg.alpha).sup_norm());
        r.weighted_a.push_back(cfg.alpha > 0.0 ? weighted_functional(u, cfg.alpha, delta).value
                                               : std::numeric_limits<double>::quiet_NaN());
        r.modulus_ratio.push_back(spec ? modulus_ratio(u, *spec, lambda).ratio
                                       : std::numeric_limits<double>::quiet_NaN());
        r.spectral_tail.push_back(tail);
        r.boundary_fraction.push_back(bf);
        double mn = 0.0;
        for (int j = g.size() / 2; j < g.size(); ++j) mn = std::min(mn, u[j]);
        r.min_right.push_back(u0_sup > 0.0 ? mn / u0_sup : 0.0);
        r.parity_error.push_back(u.is_odd() ? u.parity_error() : 0.0);
        const auto& c = u.spectrum();
        double g2 = 0.0, h2 = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            const double k2 = g.wavenumber_at(j) * g.wavenumber_at(j);
            g2 += std::norm(c[j]) * k2;
            h2 += std::norm(c[j]) * k2 * k2;
        }
        r.grad_l2_sq.push_back(g.length() * g2);
        r.hess_l2_sq.push_back(g.length() * h2);
    }
};

bool finite(const Field& f)
{
    for (double v : f.values())
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

RunResult run(const SimConfig& cfg, const RunCallbacks& cb)
{
    cfg.validate();
    const Solver solver(cfg);
    RunResult res;
    res.weight_delta = cfg.resolved_weight_delta();
    StepState s = solver.initial_state();
    res.u0_sup = refined_sup(s.field);
    res.u0_l1 = l1_norm(s.field);
    res.record.lp_exponent = cfg.lp_exponent;

    Recorder rec{cfg, res.weight_delta, res.u0_sup, std::nullopt};
    if (cfg.modulus_monitor) {
        const bool critical = std::abs(cfg.alpha + cfg.beta - 1.0) < 1e-12;
        rec.spec = build_modulus(critical ? ModulusCase::critical : ModulusCase::subcritical, cfg.alpha,
                                 critical ? 1.0 - cfg.alpha : cfg.beta, cfg.modulus_delta);
        rec.lambda = modulus_rescale(s.field, *rec.spec, 0.5);
        res.modulus_rescale = rec.lambda;
        res.modulus_stride = modulus_ratio(s.field, *rec.spec, rec.lambda).stride;
    }
    auto emit = [&]() {
        if (!cb.on_output) return;
        const Field v = frac_laplacian(s.field, -cfg.alpha);
        cb.on_output(Snapshot{s.time, s.field, v});
    };

    std::vector<double> ht, hg;
    double grad = gradient_sup(s.field), tail = spectral_tail_fraction(s.field), bf = boundary_fraction(s.field);
    ht.push_back(0.0);
    hg.push_back(grad);
    rec.record(res.record, s, grad, tail, bf);
    if (cfg.output_stride > 0) emit();

    auto finish = [&](Verdict v, std::string why) {
        res.verdict = v;
        res.reason = std::move(why);
        if (res.record.times.back() < s.time) rec.record(res.record, s, grad, tail, bf);
    };

    if (bf > cfg.initial_boundary_threshold) {
        res.verdict = Verdict::boundary_contaminated;
        res.reason = "initial data reaches the outer 10% of the box";
    }

    bool candidate = false;
    double candidate_threshold = cfg.blowup_gradient_threshold;
    double prev_dt = 0.0;
    while (res.verdict == Verdict::completed && s.time < cfg.t_end * (1.0 - 1e-14)) {
        double dt = solver.adapt_dt(s, prev_dt);
        if (dt < solver.dt_min()) {
            candidate = true;
            candidate_threshold = *std::max_element(hg.begin(), hg.end());
            res.reason = "time step underflow";
            break;
        }
        dt = std::min(dt, cfg.t_end - s.time);
        s.dt = dt;
        solver.step(s);
        prev_dt = dt;
        if (!finite(s.field)) {
            res.verdict = Verdict::resolution_lost;
            res.reason = "non-finite values";
            break;
        }
        grad = gradient_sup(s.field);
        tail = spectral_tail_fraction(s.field);
        bf = boundary_fraction(s.field);
        ht.push_back(s.time);
        hg.push_back(grad);
        if (bf > cfg.boundary_threshold) {
            finish(Verdict::boundary_contaminated, "solution reached the outer 10% of the box");
            break;
        }
        if (tail > cfg.spectral_tail_threshold) {
            finish(Verdict::resolution_lost, "spectral tail above threshold");
            break;
        }
        if (grad > cfg.blowup_gradient_threshold) {
            candidate = true;
            res.reason = "gradient above threshold with a resolved spectrum";
            if (res.record.times.back() < s.time) rec.record(res.record, s, grad, tail, bf);
            break;
        }
        const bool last = s.time >= cfg.t_end * (1.0 - 1e-14);
        if (s.step_count % cfg.diag_stride == 0 || last) rec.record(res.record, s, grad, tail, bf);
        if (cfg.output_stride > 0 && (s.step_count % cfg.output_stride == 0 || last)) emit();
    }

    if (candidate) {
        res.blowup_time = estimate_blowup_time(ht, hg, candidate_threshold);
        res.verdict = Verdict::blowup_detected;
        if (cfg.confirm_blowup) {
            SimConfig fine = cfg;
            fine.n = 2 * cfg.n;
            fine.confirm_blowup = false;
            fine.modulus_monitor = false;
            fine.diag_stride = 1 << 30;
            fine.output_stride = 0;
            if (fine.initial.family == InitialFamily::custom_samples) {
                // Spectral interpolation of the samples onto the finer grid.
                const SpectralInterpolant f(cfg.initial.sample(cfg.grid()));
                const Grid g2 = fine.grid();
                fine.initial.samples.resize(fine.n);
                for (int j = 0; j < fine.n; ++j) fine.initial.samples[j] = f(g2.x(j));
            }
            const RunResult r2 = run(fine);
            res.confirm_blowup_time = r2.blowup_time;
            const bool agree = r2.verdict == Verdict::blowup_detected && res.blowup_time && r2.blowup_time &&
                               std::abs(*r2.blowup_time - *res.blowup_time) < 0.05 * std::abs(*res.blowup_time);
            if (!agree) {
                res.verdict = Verdict::resolution_lost;
                res.reason = "blowup not reproduced at doubled resolution";
            } else {
                res.reason += "; confirmed at doubled resolution";
            }
        }
    }
    res.final_time = s.time;
    res.steps = s.step_count;
    res.final_field = s.field;
    res.record.verdict = res.verdict;
    res.record.blowup_time_estimate = res.blowup_time;
    return res;
}

// ---------------------------------------------------------------- linear kernel

KernelReport linear_kernel_check(double beta, double nu, double t, const Grid& grid)
{
    if (!(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("linear_kernel_check: beta must lie in (0, 2]");
    if (!(nu > 0.0 && t > 0.0)) throw std::invalid_argument("linear_kernel_check: nu and t must be positive");
    const int n = grid.size();
    const double L = grid.length(), kappa = 2.0 * std::numbers::pi / L;
    std::vector<cplx> c(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) {
        // The factor (-1)^j moves the origin of the transform to x = -L/2.
        const double sign = j % 2 ? -1.0 : 1.0;
        c[j] = sign * std::exp(-nu * std::pow(kappa * j, beta) * t) / L;
    }
    std::vector<double> k(n);
    thread_fft(n).inverse(c.data(), k.data());

    KernelReport r{beta, nu, t, 0, 0, 0, 0, std::nullopt, false, false, false, false, false};
    const double mx = *std::max_element(k.begin(), k.end());
    r.min_over_max = *std::min_element(k.begin(), k.end()) / mx;
    double mass = 0.0;
    for (int j = 0; j < n; ++j) {
        mass += k[j];
        r.symmetry_error = std::max(r.symmetry_error, std::abs(k[j] - k[(n - j) % n]) / mx);
    }
    r.integral_error = std::abs(mass * grid.spacing() - 1.0);
    for (int j = n / 2; j + 1 < n; ++j) r.monotone_violation = std::max(r.monotone_violation, (k[j + 1] - k[j]) / mx);
    for (int j = 1; j < n / 2; ++j) r.monotone_violation = std::max(r.monotone_violation, (k[j - 1] - k[j]) / mx);

    if (beta == 1.0 || beta == 2.0) {
        // Closed forms summed over the periodic images of the line kernel.
        const double s = nu * t;
        double dev = 0.0;
        for (int j = 0; j < n; ++j) {
            const double x = grid.x(j);
            double exact = 0.0;
            if (beta == 1.0) {
                exact = std::sinh(kappa * s) / (L * (std::cosh(kappa * s) - std::cos(kappa * x)));
            } else {
                for (int m = -4; m <= 4; ++m)
                    exact += std::exp(-(x + m * L) * (x + m * L) / (4 * s)) / std::sqrt(4 * std::numbers::pi * s);
            }
            dev = std::max(dev, std::abs(k[j] - exact) / mx);
        }
        r.closed_form_error = dev;
    }
    r.nonnegative = r.min_over_max >= -1e-8;
    r.symmetric = r.symmetry_error <= 1e-8;
    r.monotone = r.monotone_violation <= 1e-8;
    r.unit_mass = r.integral_error <= 1e-8;
    r.ok = r.nonnegative && r.symmetric && r.monotone && r.unit_mass &&
           (!r.closed_form_error || *r.closed_form_error <= 1e-6);
    return r;
}

}  // namespace nlt

#include "nlt/diagnostics.hpp"

#include "nlt/closed_forms.hpp"
#include "nlt/fractional.hpp"
#include "nlt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace nlt {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::completed: return "completed";
    case Verdict::blowup_detected: return "blowup_detected";
    case Verdict::resolution_lost: return "resolution_lost";
    case Verdict::boundary_contaminated: return "boundary_contaminated";
    }
    return "unknown";
}

Verdict verdict_from_string(std::string_view s)
{
    for (Verdict v : {Verdict::completed, Verdict::blowup_detected, Verdict::resolution_lost,
                      Verdict::boundary_contaminated})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

void DiagnosticsRecord::check_consistent() const
{
    const std::size_t n = times.size();
    for (const auto* a : {&dt, &sup_norm, &l1_norm, &lp_norm, &gradient_sup, &drift_criterion_integrand,
                          &alt_criterion_integrand, &weighted_a, &modulus_ratio, &spectral_tail,
                          &boundary_fraction, &min_right, &parity_error, &grad_l2_sq, &hess_l2_sq})
        if (a->size() != n) throw std::logic_error("diagnostics record: arrays differ in length");
    for (std::size_t i = 1; i < n; ++i)
        if (!(times[i] > times[i - 1])) throw std::logic_error("diagnostics record: times must increase");
}

// ---------------------------------------------------------------- interpolant

SpectralInterpolant::SpectralInterpolant(const Field& f)
{
    const Grid& g = f.grid();
    const int n = g.size();
    kappa_ = 2.0 * std::numbers::pi / g.length();
    const auto& spec = f.spectrum();
    c0_ = spec[0].real();
    c_.assign(spec.begin() + 1, spec.begin() + n / 2);
}

double SpectralInterpolant::eval(double x, int derivative) const
{
    const cplx z = std::polar(1.0, kappa_ * x);
    cplx p = z, s = 0.0;
    for (std::size_t m = 0; m < c_.size(); ++m) {
        const double k = kappa_ * double(m + 1);
        cplx term = c_[m] * p;
        if (derivative == 1) term *= cplx(0.0, k);
        else if (derivative == 2) term *= -k * k;
        s += term;
        // Re-anchor the phasor now and then so rounding does not accumulate.
        if ((m + 2) % 256 == 0) p = std::polar(1.0, kappa_ * double(m + 2) * x);
        else p *= z;
    }
    return (derivative == 0 ? c0_ : 0.0) + 2.0 * s.real();
}

// ---------------------------------------------------------------- grid quantities

double refined_sup(const Field& u)
{
    const auto& v = u.values();
    const int n = int(v.size());
    int im = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(v[j]) > std::abs(v[im])) im = j;
    const double grid_max = std::abs(v[im]);
    if (grid_max == 0.0) return 0.0;
    const SpectralInterpolant f(u);
    const double dx = u.grid().spacing(), x0 = u.grid().x(im);
    double x = x0;
    for (int it = 0; it < 8; ++it) {
        const double d1 = f.eval(x, 1), d2 = f.eval(x, 2);
        if (d2 == 0.0) break;
        const double step = d1 / d2;
        x = std::clamp(x - step, x0 - dx, x0 + dx);
        if (std::abs(step) < 1e-14 * dx) break;
    }
    return std::max(grid_max, std::abs(f(x)));
}

double l1_norm(const Field& u)
{
    double s = 0.0;
    for (double v : u.values()) s += std::abs(v);
    return s * u.grid().spacing();
}

double lp_norm(const Field& u, double p)
{
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double m = u.sup_norm();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : u.values()) s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s * u.grid().spacing(), 1.0 / p);
}

double gradient_sup(const Field& u) { return spectral_derivative(u).sup_norm(); }

double spectral_tail_fraction(const Field& u)
{
    const auto& spec = u.spectrum();
    const int n = u.grid().size();
    double total = 0.0, tail = 0.0;
    for (int j = 0; j < n; ++j) {
        const double e = std::norm(spec[j]);
        total += e;
        const int m = std::abs(u.grid().mode(j));
        if (4 * m > n && 3 * m <= n) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

double boundary_fraction(const Field& u)
{
    const double m = u.sup_norm();
    if (m == 0.0) return 0.0;
    const Grid& g = u.grid();
    const double edge = 0.4 * g.length();
    double outer = 0.0;
    for (int j = 0; j < g.size(); ++j)
        if (std::abs(g.x(j)) > edge) outer = std::max(outer, std::abs(u[j]));
    return outer / m;
}

// ---------------------------------------------------------------- weighted functional

namespace {

void check_weight(double alpha, double delta)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("weighted functional: alpha must lie in (0, 1)");
    if (!(delta > 2.0 * alpha && delta < 2.0))
        throw std::domain_error("weighted functional: delta must lie in (2 alpha, 2)");
}

// Simpson over grid values g[i0..i1], i1 - i0 even.
double simpson(const std::vector<double>& g, int i0, int i1, double dx)
{
    if (i1 <= i0) return 0.0;
    double s = g[i0] + g[i1];
    for (int i = i0 + 1; i < i1; ++i) s += (i - i0) % 2 ? 4.0 * g[i] : 2.0 * g[i];
    return s * dx / 3.0;
}

double trapezoid(const std::vector<double>& g, int i0, int i1, double dx)
{
    if (i1 <= i0) return 0.0;
    double s = 0.5 * (g[i0] + g[i1]);
    for (int i = i0 + 1; i < i1; ++i) s += g[i];
    return s * dx;
}

}  // namespace

WeightedFunctional weighted_functional(const Field& u, double alpha, double delta, double margin)
{
    check_weight(alpha, delta);
    if (!(margin >= 0.0 && margin < 1.0)) throw std::invalid_argument("weighted functional: margin in [0, 1)");
    const Grid& g = u.grid();
    const int n = g.size(), mid = n / 2;
    const double dx = g.spacing();
    WeightedFunctional out;
    if (u.sup_norm() == 0.0) return out;

    const Field v = frac_laplacian(u, -alpha);
    const SpectralInterpolant vi(v);

    // v ~ c1 x at the origin.
    const double c1 = vi.eval(0.0, 1), x_a = 0.5 * dx;
    double inner = c1 * std::pow(x_a, 2.0 - delta) / (2.0 - delta);
    const double octaves[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    for (int k = 0; k + 1 < 5; ++k)
        inner += quad::gl([&](double x) { return vi(x) * std::pow(x, -delta); }, octaves[k] * dx,
                          octaves[k + 1] * dx, 16);

    std::vector<double> w(n, 0.0);
    for (int i = mid + 8; i < n; ++i) w[i] = v[i] * std::pow(g.x(i), -delta);
    int i1 = mid + int(std::floor(0.5 * g.length() * (1.0 - margin) / dx));
    i1 = std::min(i1, n - 1);
    if ((i1 - mid - 8) % 2) --i1;
    const double body = simpson(w, mid + 8, i1, dx);
    out.value = inner + body;
    out.margin_part = trapezoid(w, i1, n - 1, dx);
    out.contaminated = std::abs(out.margin_part) > 1e-2 * std::abs(out.value);
    return out;
}

WeightedFunctional weighted_functional(const OddProfile& u, double alpha, double delta)
{
    check_weight(alpha, delta);
    // Integrand v x^{1-delta} in t = log x behaves like x^{2-delta} at 0 and x^{alpha-1-delta} at infinity.
    const double decay = 27.6;
    const double t_lo = std::max(-400.0, -decay / (2.0 - delta) - 2.0);
    const double t_hi = std::log(std::max(1.0, u.support_radius)) + decay / (1.0 + delta - alpha) + 2.0;
    const double h = 0.05;
    const auto s = sample_on_log_grid(u, alpha, t_lo, t_hi, h);
    WeightedFunctional out;
    const std::size_t n = s.x.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double term = s.v[j] * std::pow(s.x[j], 1.0 - delta);
        out.value += (j == 0 || j + 1 == n ? 0.5 : 1.0) * term;
    }
    out.value *= h;
    return out;
}

// ---------------------------------------------------------------- Riccati fit

RiccatiReport riccati_check(std::span<const double> t, std::span<const double> a, double u0_l1)
{
    if (t.size() != a.size()) throw std::invalid_argument("riccati_check: t and a differ in length");
    if (t.size() < 20) throw std::invalid_argument("riccati_check: need at least 20 samples");
    RiccatiReport r;
    const std::size_t n = t.size();
    std::vector<double> x, y;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
        if (!(h1 > 0.0 && h2 > 0.0)) throw std::invalid_argument("riccati_check: times must increase");
        const double da = (h1 * h1 * a[i + 1] - h2 * h2 * a[i - 1] - (h1 * h1 - h2 * h2) * a[i]) /
                          (h1 * h2 * (h1 + h2));
        x.push_back(a[i] * a[i]);
        y.push_back(da);
    }
    r.samples = int(x.size());
    bool zero = true;
    for (double v : a) zero = zero && v == 0.0;
    if (zero) {
        r.trivial = true;
        return r;
    }
    const double m = double(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / m, my += y[i] / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    r.c_fit = sxx > 0.0 ? sxy / sxx : 0.0;
    const double k_fit = std::max(0.0, r.c_fit * mx - my);
    const double weight = (1.0 + u0_l1) * (1.0 + u0_l1);
    double need = 0.0;
    r.c_max = INFINITY;
    for (std::size_t i = 0; i < x.size(); ++i) {
        need = std::max(need, r.c_fit * x[i] - y[i]);
        if (x[i] > 0.0) r.c_max = std::min(r.c_max, (y[i] + k_fit) / x[i]);
    }
    r.c_prime = need / weight;
    if (!std::isfinite(r.c_max)) r.c_max = 0.0;
    r.certified = r.c_fit > 0.0 && r.c_max > 0.0;
    return r;
}

RiccatiReport riccati_check(const DiagnosticsRecord& rec, double u0_l1)
{
    return riccati_check(rec.times, rec.weighted_a, u0_l1);
}

// ---------------------------------------------------------------- weighted inequality

WeightedInequality weighted_inequality_check(const OddProfile& u, double alpha, double delta)
{
    check_weight(alpha, delta);
    WeightedInequality w;
    const double decay = 27.6;
    const double t_lo = std::max(-400.0, -decay / (1.0 - 0.5 * delta) - 2.0);
    const double t_hi = std::log(std::max(1.0, u.support_radius)) + decay / (2.0 + 0.5 * delta - alpha) + 2.0;
    const double h = 0.05;
    const auto s = sample_on_log_grid(u, alpha, t_lo, t_hi, h);
    const std::size_t n = s.x.size();
    const double c = riesz_power_constant(alpha, delta).value;

    std::vector<double> ga(n);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = s.x[j], wt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        lhs += wt * s.v[j] * s.du[j] * std::pow(x, 1.0 + alpha - delta);
        rhs += wt * s.v[j] * s.v[j] * std::pow(x, -delta);
        ga[j] = s.v[j] * std::pow(x, -0.5 * delta);
    }
    w.lhs = c * lhs * h;
    w.rhs_raw = rhs * h;
    w.indeterminate = w.rhs_raw < 1e-14;
    if (w.indeterminate) return w;
    w.ratio = w.lhs / w.rhs_raw;

    // The autocorrelation of ga spans 2 (t_hi - t_lo), which sets the lambda step.
    const double span = t_hi - t_lo;
    const double dl = std::min(0.025, 0.9 * std::numbers::pi / span);
    const double lmax = 0.6 * std::numbers::pi / h;
    const int m = int(std::ceil(lmax / dl)) + 1;
    const auto lam = uniform_grid(0.0, dl * (m - 1), m);
    const auto A = mellin_from_log_samples(s.t0, h, ga, lam);
    const double theta = 0.5 * delta - alpha, scale = std::pow(2.0, alpha + 1.0);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double wt = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
        acc += wt * scale * mellin_symbol(alpha, theta, lam[i]).real() * std::norm(A[i]);
    }
    w.lhs_mellin = c * acc * dl / std::numbers::pi;
    w.route_gap = std::abs(w.lhs - w.lhs_mellin) / std::abs(w.lhs);
    return w;
}

OddProfile random_odd_profile(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    struct Pair {
        double a, c, w;
    };
    const int k = 1 + int(rng() % 4);
    std::vector<Pair> pairs;
    double radius = 0.0;
    for (int i = 0; i < k; ++i) {
        const double sign = rng() % 2 ? 1.0 : -1.0;
        Pair p{sign * (0.3 + 0.7 * unit(rng)), 3.0 * unit(rng), 0.3 + 1.2 * unit(rng)};
        radius = std::max(radius, p.c + 8.6 * p.w);
        pairs.push_back(p);
    }
    const double b = 2.0 * unit(rng) - 1.0, w0 = 0.5 + 1.5 * unit(rng);
    radius = std::max(radius, 8.6 * w0 + 2.0);

    OddProfile out;
    out.u = [pairs, b, w0](double x) {
        double s = b * x * std::exp(-(x / w0) * (x / w0));
        for (const auto& p : pairs) {
            const double zm = (x - p.c) / p.w, zp = (x + p.c) / p.w;
            s += p.a * (std::exp(-zm * zm) - std::exp(-zp * zp));
        }
        return s;
    };
    out.du = [pairs, b, w0](double x) {
        const double z = x / w0;
        double s = b * (1.0 - 2.0 * z * z) * std::exp(-z * z);
        for (const auto& p : pairs) {
            const double zm = (x - p.c) / p.w, zp = (x + p.c) / p.w;
            s += p.a * (-2.0 * zm * std::exp(-zm * zm) + 2.0 * zp * std::exp(-zp * zp)) / p.w;
        }
        return s;
    };
    out.support_radius = radius;
    return out;
}

// ---------------------------------------------------------------- modulus of continuity

namespace {

constexpr double r_min = 1e-8, r_max = 1e8;
constexpr int per_decade = 40;

// Cubic Hermite on [t0, t1] with values f and derivatives d (in t).
double hermite(double t, double t0, double t1, double f0, double f1, double d0, double d1)
{
    const double h = t1 - t0, s = (t - t0) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
}

struct Bracket {
    std::size_t i;
    double t, t0, t1;
};

Bracket locate(const std::vector<double>& r, double x)
{
    const double t = std::log(x);
    auto it = std::upper_bound(r.begin(), r.end(), x);
    std::size_t i = std::size_t(std::max<std::ptrdiff_t>(1, it - r.begin())) - 1;
    i = std::min(i, r.size() - 2);
    return {i, t, std::log(r[i]), std::log(r[i + 1])};
}

double omega_second(const ModulusSpec& s, double r)
{
    return -s.delta_param / (std::pow(r, s.alpha) + std::pow(r, s.power));
}

}  // namespace

double ModulusSpec::omega_at(double x) const
{
    if (x <= 0.0) return 0.0;
    if (x <= r.front())
        return omega_prime0 * x - delta_param * std::pow(x, 2.0 - alpha) / ((1.0 - alpha) * (2.0 - alpha));
    if (x >= r.back()) {
        const double R = r.back();
        return omega.back() + omega_prime.back() * R * std::log(x / R);
    }
    const auto b = locate(r, x);
    return hermite(b.t, b.t0, b.t1, omega[b.i], omega[b.i + 1], r[b.i] * omega_prime[b.i],
                   r[b.i + 1] * omega_prime[b.i + 1]);
}

double ModulusSpec::omega_prime_at(double x) const
{
    if (x <= r.front()) return omega_prime0 - delta_param * std::pow(std::max(x, 0.0), 1.0 - alpha) / (1.0 - alpha);
    if (x >= r.back()) return delta_param * std::pow(x, 1.0 - power) / (power - 1.0);
    const auto b = locate(r, x);
    return hermite(b.t, b.t0, b.t1, omega_prime[b.i], omega_prime[b.i + 1], r[b.i] * omega_second(*this, r[b.i]),
                   r[b.i + 1] * omega_second(*this, r[b.i + 1]));
}

double ModulusSpec::omega_tail_at(double x) const
{
    if (x >= r.back()) {
        const double w = omega_at(x);
        const double slope = kase == ModulusCase::critical ? delta_param : 0.0;
        return std::pow(x, alpha - 1.0) * (w / (1.0 - alpha) + slope / ((1.0 - alpha) * (1.0 - alpha)));
    }
    if (x < r.front()) {
        // omega ~ omega'(0) s near the origin.
        return omega_tail.front() + omega_prime0 * (std::pow(r.front(), alpha) - std::pow(x, alpha)) / alpha;
    }
    const auto b = locate(r, x);
    auto d = [&](std::size_t i) { return -omega[i] * std::pow(r[i], alpha - 1.0); };
    return hermite(b.t, b.t0, b.t1, omega_tail[b.i], omega_tail[b.i + 1], d(b.i), d(b.i + 1));
}

ModulusSpec build_modulus(ModulusCase kase, double alpha, double beta, double delta_param)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("build_modulus: alpha must lie in (0, 1)");
    if (!(delta_param > 0.0)) throw std::invalid_argument("build_modulus: delta must be positive");
    const bool critical = std::abs(alpha + beta - 1.0) < 1e-12;
    if (kase == ModulusCase::critical && !critical)
        throw std::invalid_argument("build_modulus: the critical modulus needs alpha + beta = 1");
    if (kase == ModulusCase::subcritical && !(alpha + beta > 1.0 + 1e-12 && beta < 2.0))
        throw std::invalid_argument("build_modulus: the subcritical modulus needs 1 - alpha < beta < 2");

    ModulusSpec s{};
    s.kase = kase;
    s.alpha = alpha;
    s.beta = beta;
    s.delta_param = delta_param;
    s.power = kase == ModulusCase::critical ? 2.0 : 5.0;
    const int m = 16 * per_decade + 1;
    s.r.resize(m);
    for (int i = 0; i < m; ++i) s.r[i] = r_min * std::pow(10.0, double(i) / per_decade);

    const double d = delta_param, p = s.power;
    // Integrals in t = log s, panel by panel.
    auto panel = [&](auto&& f, std::size_t i) {
        return quad::gl([&](double t) { return f(std::exp(t)); }, std::log(s.r[i]), std::log(s.r[i + 1]), 12);
    };
    auto dens = [&](double x) { return d * x / (std::pow(x, alpha) + std::pow(x, p)); };       // (ds) integrand
    auto mom = [&](double x) { return d * x * x / (std::pow(x, alpha) + std::pow(x, p)); };    // (s ds) integrand

    s.omega_prime.assign(m, 0.0);
    s.omega_prime[m - 1] = d * std::pow(r_max, 1.0 - p) / (p - 1.0);
    for (int i = m - 2; i >= 0; --i) s.omega_prime[i] = s.omega_prime[i + 1] + panel(dens, i);
    s.omega_prime0 = s.omega_prime[0] + d * std::pow(r_min, 1.0 - alpha) / (1.0 - alpha);

    std::vector<double> first(m);
    first[0] = d * std::pow(r_min, 2.0 - alpha) / (2.0 - alpha);
    for (int i = 0; i + 1 < m; ++i) first[i + 1] = first[i] + panel(mom, i);
    s.omega.resize(m);
    for (int i = 0; i < m; ++i) s.omega[i] = s.r[i] * s.omega_prime[i] + first[i];
    // Once omega saturates the two terms trade ulps; keep the table monotone.
    for (int i = 1; i < m; ++i) s.omega[i] = std::max(s.omega[i], s.omega[i - 1]);

    s.omega_tail.assign(m, 0.0);
    s.omega_tail[m - 1] = 0.0;  // placeholder so omega_tail_at can use the asymptotic branch
    s.omega_tail[m - 1] = s.omega_tail_at(r_max);
    for (int i = m - 2; i >= 0; --i)
        s.omega_tail[i] = s.omega_tail[i + 1] +
                          panel([&](double x) { return s.omega_at(x) * std::pow(x, alpha - 1.0); }, i);
    s.Omega.resize(m);
    for (int i = 0; i < m; ++i) s.Omega[i] = std::pow(s.r[i], alpha) * s.omega[i] + s.r[i] * s.omega_tail[i];
    return s;
}

ModulusRatio modulus_ratio(const Field& u, const ModulusSpec& spec, double rescale, long max_pairs)
{
    if (!(rescale > 0.0)) throw std::invalid_argument("modulus_ratio: rescale must be positive");
    const auto& v = u.values();
    const int n = int(v.size());
    const double dx = u.grid().spacing();
    int stride = 1;
    auto pairs = [&](int st) {
        const long m = (n + st - 1) / st;
        return m * (m - 1) / 2;
    };
    while (pairs(stride) > max_pairs) ++stride;
    const int m = (n + stride - 1) / stride;
    std::vector<double> sub(m);
    for (int i = 0; i < m; ++i) sub[i] = v[std::size_t(i) * stride];

    ModulusRatio out;
    out.stride = stride;
    const double amp = std::pow(rescale, spec.alpha + spec.beta - 1.0);
    for (int dd = 1; dd < m; ++dd) {
        const double w = spec.omega_at(dd * stride * dx / rescale);
        if (!(w > 0.0)) continue;
        double best = 0.0;
        int bi = -1;
        for (int i = 0; i + dd < m; ++i) {
            const double diff = std::abs(sub[i] - sub[i + dd]);
            if (diff > best) best = diff, bi = i;
        }
        const double ratio = amp * best / w;
        if (bi >= 0 && ratio > out.ratio) {
            out.ratio = ratio;
            const int a = bi * stride, b = (bi + dd) * stride;
            if (v[a] >= v[b]) out.i = a, out.j = b;
            else out.i = b, out.j = a;
        }
    }
    return out;
}

double modulus_rescale(const Field& u, const ModulusSpec& spec, double target)
{
    if (u.sup_norm() == 0.0) return 1.0;
    double lo = std::log(1e-8), hi = std::log(1e8);
    auto f = [&](double t) { return modulus_ratio(u, spec, std::exp(t)).ratio - target; };
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) throw std::runtime_error("modulus_rescale: target ratio not bracketed");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi), fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) lo = mid, flo = fm;
        else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double riesz_modulus_bound(const ModulusSpec& spec, double r)
{
    const double a = spec.alpha, c = riesz_kernel_constant(a);
    const double k1 = 2.0 * c * (std::pow(1.5, a) + std::pow(0.5, a)) / a;
    const double k2 = 2.0 * c * (1.0 - a) * std::pow(2.0, 2.0 - a);
    return k1 * std::pow(r, a) * spec.omega_at(r) + k2 * r * spec.omega_tail_at(r);
}

ContainmentReport riesz_modulus_containment(const Field& u, const ModulusSpec& spec)
{
    ContainmentReport out;
    const auto mr = modulus_ratio(u, spec, 1.0);
    if (mr.ratio == 0.0) {
        out.holds = true;
        return out;
    }
    auto vals = u.values();
    for (double& x : vals) x /= mr.ratio;
    const Field us(u.grid(), std::move(vals), u.is_odd());
    const Field v = frac_laplacian(us, -spec.alpha);
    const int n = u.grid().size();
    const double dx = u.grid().spacing();
    for (int d = 1; d <= n / 2; ++d) {
        double best = 0.0;
        for (int i = 0; i + d < n; ++i) best = std::max(best, std::abs(v[i] - v[i + d]));
        const double ratio = best / riesz_modulus_bound(spec, d * dx);
        if (ratio > out.worst_ratio) out.worst_ratio = ratio, out.worst_r = d * dx;
    }
    out.holds = out.worst_ratio <= 1.05;
    return out;
}

DissipationBound dissipation_bound_check(const Field& u, const ModulusSpec& spec, double beta)
{
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("dissipation_bound_check: beta must lie in (0, 2)");
    DissipationBound out;
    const auto mr = modulus_ratio(u, spec, 1.0);
    if (mr.ratio == 0.0) {
        out.holds = true;
        return out;
    }
    auto vals = u.values();
    for (double& x : vals) x /= mr.ratio;
    const Field us(u.grid(), std::move(vals), u.is_odd());
    const Field lb = frac_laplacian(us, beta);
    out.lhs = -lb[mr.i] + lb[mr.j];
    const double r = std::abs(u.grid().x(mr.i) - u.grid().x(mr.j));
    out.r = r;

    const double wr = spec.omega_at(r), w2 = omega_second(spec, r);
    auto near = [&](double s) {
        // Second difference by Taylor where the direct form cancels.
        const double diff = s < 5e-4 * r ? 4.0 * s * s * w2
                                         : spec.omega_at(r + 2 * s) + spec.omega_at(r - 2 * s) - 2.0 * wr;
        return diff * std::pow(s, -1.0 - beta);
    };
    auto far = [&](double s) {
        return (spec.omega_at(2 * s + r) - spec.omega_at(2 * s - r) - 2.0 * wr) * std::pow(s, -1.0 - beta);
    };
    double i4 = 0.0, i5 = 0.0;
    double hi = 0.5 * r;
    for (int k = 0; k < 80; ++k) {
        i4 += quad::gl(near, 0.5 * hi, hi, 16);
        hi *= 0.5;
    }
    double lo = 0.5 * r;
    for (int k = 0; k < 60; ++k) {
        i5 += quad::gl(far, lo, 2.0 * lo, 16);
        lo *= 2.0;
    }
    i5 += -2.0 * wr * std::pow(lo, -beta) / beta;
    out.rhs = laplacian_kernel_constant(beta) * (i4 + i5);
    out.holds = out.lhs <= out.rhs + 0.05 * std::abs(out.rhs);
    return out;
}

Field random_smooth_field(const Grid& grid, std::uint64_t seed, int modes)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> a(modes + 1), b(modes + 1);
    for (int m = 1; m <= modes; ++m) {
        a[m] = nd(rng) / m;
        b[m] = nd(rng) / m;
    }
    const double kappa = 2.0 * std::numbers::pi / grid.length();
    return Field::sample(grid, [&](double x) {
        double s = 0.0;
        for (int m = 1; m <= modes; ++m) s += a[m] * std::cos(m * kappa * x) + b[m] * std::sin(m * kappa * x);
        return s;
    });
}

double positivity_pairing(const Field& th, double p, double beta)
{
    if (!(p >= 1.0)) throw std::invalid_argument("positivity_pairing: p must be >= 1");
    const auto lb = frac_laplacian(th, beta).values();
    double lhs = 0.0, norm = 0.0;
    for (int j = 0; j < th.grid().size(); ++j) {
        const double t = th[j];
        const double a = std::abs(t);
        if (a == 0.0) continue;
        lhs += std::pow(a, p - 2.0) * t * lb[j];
        norm += std::pow(a, p);
    }
    return norm > 0.0 ? lhs / norm : 0.0;
}

CriterionIntegral continuation_criterion_integral(const DiagnosticsRecord& rec)
{
    CriterionIntegral c;
    for (std::size_t i = 1; i < rec.size(); ++i) {
        const double h = rec.times[i] - rec.times[i - 1];
        c.main += 0.5 * h * (rec.drift_criterion_integrand[i] + rec.drift_criterion_integrand[i - 1]);
        c.alt += 0.5 * h * (rec.alt_criterion_integrand[i] + rec.alt_criterion_integrand[i - 1]);
    }
    return c;
}

}  // namespace nlt

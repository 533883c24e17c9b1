#include "nlt/mellin.hpp"

#include "nlt/fractional.hpp"
#include "nlt/gamma.hpp"
#include "nlt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlt {

namespace {

void check_symbol_domain(double alpha, double theta)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("mellin symbol: alpha must lie in (0, 1)");
    if (!(theta > 0.0 && theta < 1.0 - alpha))
        throw std::domain_error("mellin symbol: theta must lie in (0, 1 - alpha)");
}

// Partial sums of G at N = base 2^m, m = 0..levels-1.
std::vector<cplx> partial_sums_G(double alpha, double theta, double lambda, int base, int levels)
{
    std::vector<cplx> out;
    const double l2 = lambda * lambda;
    double re = 0.0, im = 0.0;
    double ck = 1.0;  // C_k
    int N = base;
    for (int k = 0; static_cast<int>(out.size()) < levels; k += 2) {
        if (k >= N) {
            out.emplace_back(re, im);
            N *= 2;
        }
        const double ck1 = ck * (alpha + k + 1.0) / (k + 1.0);
        const double a = k + 1.0 - theta;
        const double b = k + theta + alpha + 2.0;
        re += ck * (1.0 / (k + 1.0) + 1.0 / (k + alpha) -
                    (k + alpha + 1.0) / (k + 1.0) * (a / (a * a + l2) + b / (b * b + l2)));
        im += lambda * ck1 * (1.0 / (a * a + l2) - 1.0 / (b * b + l2));
        ck = ck1 * (alpha + k + 2.0) / (k + 2.0);
    }
    return out;
}

cplx series_G(double alpha, double theta, double lambda, int n_terms, bool accelerate)
{
    if (!accelerate) return partial_sums_G(alpha, theta, lambda, n_terms, 1).front();
    constexpr int levels = 6;
    const int base = std::max(2, (n_terms >> (levels - 1)) & ~1);
    const auto sums = partial_sums_G(alpha, theta, lambda, base, levels);
    std::vector<double> re, im, ex;
    for (const auto& s : sums) {
        re.push_back(s.real());
        im.push_back(s.imag());
    }
    for (int j = 0; j < levels - 1; ++j) ex.push_back(1.0 + j - alpha);
    return {quad::richardson(re, 0.5, ex), quad::richardson(im, 0.5, ex)};
}

}  // namespace

cplx mellin_symbol(double alpha, double theta, double lambda)
{
    check_symbol_domain(alpha, theta);
    const cplx il(0.0, lambda);
    const cplx lg = log_gamma(0.5 * (1.0 - theta + il)) - log_gamma(0.5 * (theta - il)) +
                    log_gamma(1.0 + 0.5 * (theta + alpha - il)) - log_gamma(0.5 * (1.0 - theta - alpha + il));
    return std::exp(lg);
}

double series_coefficient(int k, double alpha)
{
    if (k < 0) throw std::invalid_argument("series_coefficient: negative index");
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c *= (alpha + j) / j;
    return c;
}

cplx mellin_symbol_series(double alpha, double theta, double lambda, int n_terms, bool accelerate)
{
    check_symbol_domain(alpha, theta);
    if (n_terms < 10) throw std::invalid_argument("mellin_symbol_series: n_terms must be at least 10");
    const cplx g0 = series_G(alpha, theta, 0.0, n_terms, accelerate);
    const double c = mellin_symbol(alpha, theta, 0.0).real() / (theta * g0.real());
    return c * cplx(theta, -lambda) * series_G(alpha, theta, lambda, n_terms, accelerate);
}

SharpBound sharp_bound_check(double alpha, double theta, double lambda_max, int samples)
{
    check_symbol_domain(alpha, theta);
    if (!(lambda_max >= 100.0)) throw std::invalid_argument("sharp_bound_check: lambda_max must be >= 100");
    SharpBound b{};
    const double f0 = mellin_symbol(alpha, theta, 0.0).real();
    b.c_low = b.c_high = b.min_re = f0;
    b.argmin = 0.0;
    const double l0 = std::log(1e-3), l1 = std::log(lambda_max);
    for (int i = 0; i < samples; ++i) {
        const double lam = std::exp(l0 + (l1 - l0) * i / (samples - 1));
        const double re = mellin_symbol(alpha, theta, lam).real();
        const double r = re / (1.0 + std::pow(lam, alpha));
        b.c_low = std::min(b.c_low, r);
        b.c_high = std::max(b.c_high, r);
        if (re < b.min_re) {
            b.min_re = re;
            b.argmin = lam;
        }
    }
    b.ratio_1e3 = mellin_symbol(alpha, theta, 1e3).real() / std::pow(1e3, alpha);
    b.ratio_1e4 = mellin_symbol(alpha, theta, 1e4).real() / std::pow(1e4, alpha);
    return b;
}

std::vector<double> uniform_grid(double lo, double hi, int n)
{
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least two points");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<cplx> mellin_from_log_samples(double t0, double h, std::span<const double> g,
                                          std::span<const double> lambda_grid)
{
    std::vector<cplx> out;
    out.reserve(lambda_grid.size());
    const std::size_t n = g.size();
    for (double lam : lambda_grid) {
        const cplx step = std::polar(1.0, lam * h);
        cplx ph = std::polar(1.0, lam * t0);
        cplx s = 0.5 * g[0] * ph;
        for (std::size_t j = 1; j < n; ++j) {
            // Re-anchor now and then so the recurrence does not drift.
            ph = (j % 512 == 0) ? std::polar(1.0, lam * (t0 + h * static_cast<double>(j))) : ph * step;
            s += (j + 1 == n ? 0.5 : 1.0) * g[j] * ph;
        }
        out.push_back(s * h);
    }
    return out;
}

MellinSample mellin_transform(const std::function<double(double)>& f, double line_abscissa,
                              std::span<const double> lambda_grid, const MellinOptions& opt)
{
    const double h = opt.step;
    auto g = [&](double t) { return f(std::exp(t)) * std::exp(line_abscissa * t); };
    const int block = std::max(1, static_cast<int>(std::lround(1.0 / h)));
    int lo = -8 * block, hi = 8 * block;  // t = j h for lo <= j <= hi
    std::vector<double> left, right;      // left[i] at j = -1 - i, right[i] at j = i
    for (int j = 0; j <= hi; ++j) right.push_back(g(j * h));
    for (int j = -1; j >= lo; --j) left.push_back(g(j * h));
    double peak = 0.0;
    for (double v : left) peak = std::max(peak, std::abs(v));
    for (double v : right) peak = std::max(peak, std::abs(v));
    auto edge_max = [&](const std::vector<double>& v) {
        double m = 0.0;
        for (std::size_t i = v.size() - std::min<std::size_t>(v.size(), block); i < v.size(); ++i)
            m = std::max(m, std::abs(v[i]));
        return m;
    };
    const int jmax = static_cast<int>(opt.t_limit / h);
    while (edge_max(left) > opt.tail_tol * peak) {
        if (-lo > jmax) throw std::domain_error("mellin_transform: integrand does not decay as x -> 0");
        for (int k = 0; k < 4 * block; ++k) {
            left.push_back(g(--lo * h));
            peak = std::max(peak, std::abs(left.back()));
        }
    }
    while (edge_max(right) > opt.tail_tol * peak) {
        if (hi > jmax) throw std::domain_error("mellin_transform: integrand does not decay as x -> inf");
        for (int k = 0; k < 4 * block; ++k) {
            right.push_back(g(++hi * h));
            peak = std::max(peak, std::abs(right.back()));
        }
    }
    std::vector<double> samples(left.rbegin(), left.rend());
    samples.insert(samples.end(), right.begin(), right.end());

    MellinSample s;
    s.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    s.line_abscissa = line_abscissa;
    s.t0 = lo * h;
    s.h = h;
    s.n = static_cast<int>(samples.size());
    s.values = mellin_from_log_samples(s.t0, h, samples, lambda_grid);
    return s;
}

double mellin_parseval(const MellinSample& s)
{
    const auto& l = s.lambda_grid;
    if (l.size() < 2) throw std::invalid_argument("mellin_parseval: need a lambda grid");
    double sum = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double w = (i == 0 || i + 1 == l.size()) ? 0.5 : 1.0;
        sum += w * std::norm(s.values[i]);
    }
    return sum * (l[1] - l[0]) / (2.0 * std::numbers::pi);
}

LogGridSamples sample_on_log_grid(const OddProfile& u, double alpha, double t_lo, double t_hi, double h,
                                  double x_inner)
{
    LogGridSamples s;
    s.t0 = t_lo;
    s.h = h;
    const int n = static_cast<int>(std::floor((t_hi - t_lo) / h)) + 1;
    s.x.resize(n);
    for (int j = 0; j < n; ++j) s.x[j] = std::exp(t_lo + j * h);
    LineFunction lf;
    lf.f = u.u;
    lf.support_radius = u.support_radius;
    const HalflineOptions opt{0.25, 0.0, 20};

    // Below x_inner the potential is odd and smooth: v = c1 x + c3 x^3 to
    // double precision, with c1, c3 matched at x_inner and 2 x_inner.
    std::vector<double> xq;
    for (double x : s.x)
        if (x >= x_inner) xq.push_back(x);
    const bool model = xq.size() < s.x.size();
    if (model) {
        xq.push_back(x_inner);
        xq.push_back(2.0 * x_inner);
    }
    const auto vq = riesz_potential_odd(lf, xq, alpha, opt);
    double c1 = 0.0, c3 = 0.0;
    if (model) {
        const double q1 = vq[vq.size() - 2] / x_inner, q2 = vq.back() / (2.0 * x_inner);
        c3 = (q2 - q1) / (3.0 * x_inner * x_inner);
        c1 = q1 - c3 * x_inner * x_inner;
    }
    s.v.resize(n);
    std::size_t k = 0;
    for (int j = 0; j < n; ++j) {
        const double x = s.x[j];
        s.v[j] = x >= x_inner ? vq[k++] : x * (c1 + c3 * x * x);
    }
    s.du.resize(n);
    for (int j = 0; j < n; ++j) s.du[j] = s.x[j] <= u.support_radius ? u.du(s.x[j]) : 0.0;
    return s;
}

SymbolRelationReport verify_symbol_relation(const OddProfile& u, double alpha, double delta, double lambda_max)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("verify_symbol_relation: alpha must lie in (0, 1)");
    if (!(delta > 2.0 * alpha && delta < 2.0))
        throw std::domain_error("verify_symbol_relation: delta must lie in (2 alpha, 2)");
    SymbolRelationReport r{};
    r.alpha = alpha;
    r.delta = delta;
    r.theta = 0.5 * delta - alpha;

    // Lambda^{-alpha}u ~ x near 0 and ~ x^{alpha-2} at infinity; pick the
    // window where x^{-delta/2} times those falls to ~1e-12.
    const double decay = 27.6;
    const double t_lo = std::max(-400.0, -decay / (1.0 - 0.5 * delta) - 2.0);
    const double t_hi = std::log(std::max(1.0, u.support_radius)) + decay / (2.0 + 0.5 * delta - alpha) + 2.0;
    const double h = 0.05;
    const auto s = sample_on_log_grid(u, alpha, t_lo, t_hi, h);
    const std::size_t n = s.x.size();
    std::vector<double> ga(n), gb(n);
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        ga[j] = s.v[j] * std::pow(s.x[j], -0.5 * delta);
        gb[j] = s.du[j] * std::pow(s.x[j], 1.0 + alpha - 0.5 * delta);
        peak = std::max(peak, std::abs(ga[j]));
    }
    if (peak == 0.0) {
        r.trivial = true;
        r.decay_ok = true;
        for (double v : gb) r.trivial = r.trivial && v == 0.0;
        r.max_rel_deviation = r.trivial ? 0.0 : INFINITY;
        return r;
    }
    r.decay_ok = std::abs(ga.front()) < 1e-10 * peak && std::abs(ga.back()) < 1e-10 * peak;

    const auto lam = uniform_grid(0.0, lambda_max, 401);
    const auto A = mellin_from_log_samples(s.t0, h, ga, lam);
    const auto B = mellin_from_log_samples(s.t0, h, gb, lam);
    double amax = 0.0;
    for (const auto& a : A) amax = std::max(amax, std::abs(a));
    const double scale = std::pow(2.0, alpha + 1.0);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (std::abs(A[i]) <= 1e-6 * amax) continue;
        const cplx pred = scale * mellin_symbol(alpha, r.theta, lam[i]) * A[i];
        const double dev = std::abs(B[i] - pred) / std::max(std::abs(pred), std::abs(B[i]));
        r.max_rel_deviation = std::max(r.max_rel_deviation, dev);
        r.band = lam[i];
        ++r.resolved_points;
    }
    return r;
}

}  // namespace nlt

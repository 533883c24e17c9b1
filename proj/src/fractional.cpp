#include "nlt/fractional.hpp"

#include "nlt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace nlt {

// ---------------------------------------------------------------- spectral

FractionalMultiplier::FractionalMultiplier(const Grid& grid, double s, ZeroModePolicy policy)
    : grid_(grid), s_(s), policy_(policy), symbol_(grid.size())
{
    if (!(s > -1.0 && s <= 2.0)) throw std::invalid_argument("fractional multiplier: exponent must lie in (-1, 2]");
    const int n = grid.size();
    for (int j = 0; j < n; ++j) {
        const double k = std::abs(grid.wavenumber_at(j));
        symbol_[j] = j == 0 ? 0.0 : std::pow(k, s);
    }
    symbol_[n / 2] = s == 0.0 ? 1.0 : 0.0;
}

Field FractionalMultiplier::apply(const Field& f) const
{
    if (!(f.grid() == grid_)) throw std::invalid_argument("fractional multiplier: grid mismatch");
    const int n = grid_.size();
    const auto& spec = f.spectrum();
    if (s_ < 0.0 && policy_ == ZeroModePolicy::reject_nonzero_mean) {
        const double mean = spec[0].real();
        if (std::abs(mean) > 1e-10 * f.sup_norm())
            throw std::invalid_argument("fractional multiplier: nonzero mean with negative exponent");
    }
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) out[j] = spec[j] * symbol_[j];
    return Field(grid_, inverse(grid_, out), f.is_odd());
}

Field frac_laplacian(const Field& f, double s, ZeroModePolicy policy)
{
    return FractionalMultiplier(f.grid(), s, policy).apply(f);
}

Field spectral_derivative(const Field& f)
{
    const Grid& g = f.grid();
    const int n = g.size();
    const auto& spec = f.spectrum();
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) out[j] = spec[j] * cplx(0.0, g.wavenumber_at(j));
    out[n / 2] = 0.0;
    return Field(g, inverse(g, out), false);
}

Field drift_term(const Field& u, double alpha)
{
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("drift_term: alpha must lie in [0, 1)");
    const Grid& g = u.grid();
    const int n = g.size();
    const auto& spec = u.spectrum();
    std::vector<cplx> a(n), b(n);
    for (int j = 0; j < n; ++j) {
        const int m = std::abs(g.mode(j));
        if (j == 0 || 3 * m > n || j == n / 2) continue;
        const double k = g.wavenumber_at(j);
        a[j] = spec[j] * (alpha == 0.0 ? 1.0 : std::pow(std::abs(k), -alpha));
        b[j] = spec[j] * cplx(0.0, k);
    }
    const auto va = inverse(g, a);
    const auto vb = inverse(g, b);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = va[j] * vb[j];
    return Field(g, std::move(out), false);
}

// ---------------------------------------------------------------- real space helpers

namespace {

// Breakpoints of [a, b] graded away from one end. Widths start at w0, at most
// double per panel and are capped by max(W, growth * y).
std::vector<double> outward_panels(double a, double b, bool from_left, double w0, double W, double growth)
{
    std::vector<double> pts;
    if (!(b > a)) return pts;
    double w = w0;
    if (from_left) {
        pts.push_back(a);
        double y = a;
        while (b - y > 1.25 * w) {
            y += w;
            pts.push_back(y);
            w = std::min(2.0 * w, std::max(W, growth * y));
        }
        pts.push_back(b);
    } else {
        pts.push_back(b);
        double y = b;
        while (y - a > 1.25 * w) {
            y -= w;
            pts.push_back(y);
            w = std::min(2.0 * w, std::max(W, growth * y));
        }
        pts.push_back(a);
        std::reverse(pts.begin(), pts.end());
    }
    return pts;
}

void insert_breaks(std::vector<double>& pts, const std::vector<double>& extra)
{
    if (pts.size() < 2) return;
    const double lo = pts.front(), hi = pts.back();
    const double tol = 1e-13 * std::max(std::abs(hi), 1.0);
    for (double e : extra)
        if (e > lo + tol && e < hi - tol) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [&](double p, double q) { return std::abs(p - q) <= tol; }),
              pts.end());
}

// [(1+t)^q - (1-t)^q] / t for 0 < t < 1, without cancellation.
double odd_power_difference_over_t(double q, double t)
{
    return (std::expm1(q * std::log1p(t)) - std::expm1(q * std::log1p(-t))) / t;
}

// c * int_R^inf y^-p [(y+x)^q - (y-x)^q] dy for 0 <= x < R, as a series in x/R.
double power_tail_series(double q, double c, double p, double R, double x)
{
    double s = 0.0;
    double binom = 1.0;
    const double r = x / R;
    double rp = 1.0;
    for (int j = 1; j < 400; ++j) {
        binom *= (q - j + 1.0) / j;
        rp *= r;
        if (j % 2 == 0) continue;
        const double term = binom * rp / (j + p - q - 1.0);
        s += term;
        if (std::abs(term) < 1e-17 * std::abs(s) && j > 5) break;
    }
    return 2.0 * c * std::pow(R, q - p + 1.0) * s;
}

std::vector<double> near_breaks(const LineFunction& u) { return u.breakpoints; }

// Half-width of the singular panels around x, shrunk so no breakpoint falls inside.
double singular_halfwidth(const LineFunction& u, double x, double W)
{
    double d = std::min(0.5 * x, W);
    for (double b : u.breakpoints) {
        const double gap = std::abs(x - b);
        if (gap > 1e-14 * x) d = std::min(d, gap);
    }
    return d;
}

double riesz_raw(const LineFunction& u, double x, double alpha, const HalflineOptions& o)
{
    const double q = alpha - 1.0;
    const double R = u.support_radius;
    const auto& f = u.f;
    const double W = o.panel_width;
    const double g = o.relative_growth;
    const int n = o.order;
    const double d0 = u.origin_exponent;
    if (u.tail_exponent && x > 0.5 * R)
        throw std::invalid_argument("riesz_potential_odd: evaluation point too close to the power tail");

    auto kernel = [&](double y) {
        if (y < 0.5 * x) return -y * std::pow(x, q - 1.0) * odd_power_difference_over_t(q, y / x);
        // Far from x the two powers nearly cancel; expand in x/y instead.
        if (y > 2.0 * x) return -x * std::pow(y, q - 1.0) * odd_power_difference_over_t(q, x / y);
        return std::pow(std::abs(x - y), q) - std::pow(x + y, q);
    };
    auto full = [&](double y) { return f(y) * kernel(y); };
    auto far = [&](double y) { return -f(y) * std::pow(x + y, q); };

    double total = 0.0;
    const double top_a = std::min(0.5 * x, R);
    if (top_a > 0.0) {
        auto pts = outward_panels(0.0, top_a, true, std::min(W, top_a), W, g);
        insert_breaks(pts, near_breaks(u));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (i == 0 && d0 != 0.0) {
                auto smooth = [&](double y) {
                    return -f(y) * std::pow(y, d0) * std::pow(x, q - 1.0) * odd_power_difference_over_t(q, y / x);
                };
                total += quad::gj_left(smooth, pts[0], pts[1], 1.0 - d0, n);
            } else {
                total += quad::gl(full, pts[i], pts[i + 1], n);
            }
        }
    }
    if (0.5 * x < R) {
        const double d = singular_halfwidth(u, x, W);
        // Left of x.
        total += quad::gj_right(f, x - d, x, q, n) + quad::gl(far, x - d, x, n);
        auto left = outward_panels(0.5 * x, x - d, false, d, W, g);
        insert_breaks(left, near_breaks(u));
        for (std::size_t i = 0; i + 1 < left.size(); ++i) total += quad::gl(full, left[i], left[i + 1], n);
        // Right of x.
        total += quad::gj_left(f, x, x + d, q, n) + quad::gl(far, x, x + d, n);
        auto right = outward_panels(x + d, std::max(R, x + d), true, d, W, g);
        insert_breaks(right, near_breaks(u));
        for (std::size_t i = 0; i + 1 < right.size(); ++i) total += quad::gl(full, right[i], right[i + 1], n);
    }
    if (u.tail_exponent) {
        const double p = *u.tail_exponent;
        const double c = f(R) * std::pow(R, p);
        total -= power_tail_series(q, c, p, R, x);
    }
    return total;
}

double laplacian_halfline_raw(const LineFunction& u, double x, double beta, const HalflineOptions& o)
{
    const double q = -1.0 - beta;
    const double R = u.support_radius;
    const auto& f = u.f;
    const double W = o.panel_width;
    const double g = o.relative_growth;
    const int n = o.order;
    const double d0 = u.origin_exponent;
    if (u.tail_exponent && x > 0.5 * R)
        throw std::invalid_argument("frac_laplacian_odd_halfline: evaluation point too close to the power tail");
    const double fx = x <= R ? f(x) : 0.0;

    double total = 0.0;
    // [0, x/2]: the f(x) part in closed form, the f(y) part by quadrature.
    total += fx * ((std::pow(0.5 * x, -beta) - std::pow(x, -beta)) + (std::pow(x, -beta) - std::pow(1.5 * x, -beta))) /
             beta;
    const double top_a = std::min(0.5 * x, R);
    if (top_a > 0.0) {
        auto k_over_y = [&](double y) { return std::pow(x, q - 1.0) * odd_power_difference_over_t(q, y / x); };
        auto part = [&](double y) { return f(y) * y * k_over_y(y); };
        auto pts = outward_panels(0.0, top_a, true, std::min(W, top_a), W, g);
        insert_breaks(pts, near_breaks(u));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (i == 0 && d0 != 0.0) {
                auto smooth = [&](double y) { return f(y) * std::pow(y, d0) * k_over_y(y); };
                total += quad::gj_left(smooth, pts[0], pts[1], 1.0 - d0, n);
            } else {
                total += quad::gl(part, pts[i], pts[i + 1], n);
            }
        }
    }
    if (0.5 * x >= R) return total;

    auto fy = [&](double y) { return y <= R ? f(y) : 0.0; };
    auto full = [&](double y) {
        const double v = fy(y);
        return (fx - v) * std::pow(std::abs(x - y), q) + (fx + v) * std::pow(x + y, q);
    };
    auto plus = [&](double y) { return (fx + fy(y)) * std::pow(x + y, q); };
    const double d = singular_halfwidth(u, x, W);
    const double Y = std::max(R, x + d);

    total += quad::gj_right([&](double y) { return (fx - fy(y)) / (x - y); }, x - d, x, -beta, n);
    total += quad::gl(plus, x - d, x, n);
    auto left = outward_panels(0.5 * x, x - d, false, d, W, g);
    insert_breaks(left, near_breaks(u));
    for (std::size_t i = 0; i + 1 < left.size(); ++i) total += quad::gl(full, left[i], left[i + 1], n);

    total += quad::gj_left([&](double y) { return (fx - fy(y)) / (y - x); }, x, x + d, -beta, n);
    total += quad::gl(plus, x, x + d, n);
    auto right = outward_panels(x + d, Y, true, d, W, g);
    insert_breaks(right, near_breaks(u));
    for (std::size_t i = 0; i + 1 < right.size(); ++i) total += quad::gl(full, right[i], right[i + 1], n);

    // Beyond Y only f(x) survives, plus the analytic power tail if any.
    total += fx * (std::pow(Y - x, -beta) + std::pow(Y + x, -beta)) / beta;
    if (u.tail_exponent) {
        const double p = *u.tail_exponent;
        total += power_tail_series(q, f(R) * std::pow(R, p), p, R, x);
    }
    return total;
}

struct PvOutcome {
    double value;
    double correction;
    bool cauchy;
};

PvOutcome realspace_raw(const std::function<double(double)>& gfun, double R, double x, double beta,
                        const RealspaceOptions& o)
{
    const double gx = gfun(x);
    const double H = R + std::abs(x);
    auto F = [&](double h) { return (2.0 * gx - gfun(x + h) - gfun(x - h)) * std::pow(h, -1.0 - beta); };
    const double eps0 = std::min(o.eps0, 0.25 * H);
    const auto pts = quad::graded_panels(eps0, H, eps0, 2.0, o.panel_width);
    double base = quad::gl_panels(F, std::span<const double>(pts), o.order) + 2.0 * gx * std::pow(H, -beta) / beta;

    std::vector<double> vals{base};
    double eps = eps0;
    for (int m = 1; m < o.levels; ++m) {
        base += quad::gl(F, 0.5 * eps, eps, o.order);
        eps *= 0.5;
        vals.push_back(base);
    }
    bool cauchy = true;
    const double scale = std::max(std::abs(vals.back()), std::abs(gx));
    for (std::size_t m = 2; m < vals.size(); ++m) {
        const double d1 = std::abs(vals[m] - vals[m - 1]);
        const double d0 = std::abs(vals[m - 1] - vals[m - 2]);
        if (d1 > d0 * (1.0 + 1e-6) && d1 > 1e-13 * scale) cauchy = false;
    }
    std::vector<double> exps;
    for (int i = 0; i + 1 < o.levels; ++i) exps.push_back(2.0 * (i + 1) - beta);
    double corr = 0.0;
    const double v = quad::richardson(vals, 0.5, exps, &corr);
    return {v, corr, cauchy};
}

}  // namespace

RealspaceResult frac_laplacian_realspace(const std::function<double(double)>& g, double support_radius,
                                         std::span<const double> x, double beta, const RealspaceOptions& opt)
{
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("frac_laplacian_realspace: beta must lie in (0, 2)");
    if (!(support_radius > 0.0)) throw std::invalid_argument("frac_laplacian_realspace: support radius must be positive");
    const double c = laplacian_kernel_constant(beta);
    RealspaceResult r;
    r.values.reserve(x.size());
    for (double xi : x) {
        const auto out = realspace_raw(g, support_radius, xi, beta, opt);
        r.values.push_back(c * out.value);
        r.correction.push_back(c * out.correction);
        r.converged = r.converged && out.cauchy;
    }
    return r;
}

std::vector<double> frac_laplacian_odd_halfline(const LineFunction& g, std::span<const double> x, double beta,
                                                const HalflineOptions& opt)
{
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("frac_laplacian_odd_halfline: beta must lie in (0, 1)");
    if (!(g.origin_exponent < 2.0)) throw std::invalid_argument("frac_laplacian_odd_halfline: origin exponent must be < 2");
    const double c = laplacian_kernel_constant(beta);
    std::vector<double> out;
    out.reserve(x.size());
    for (double xi : x) {
        if (xi == 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double v = laplacian_halfline_raw(g, std::abs(xi), beta, opt);
        out.push_back(xi > 0 ? c * v : -c * v);
    }
    return out;
}

std::vector<double> riesz_potential_odd(const LineFunction& u, std::span<const double> x, double alpha,
                                        const HalflineOptions& opt)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("riesz_potential_odd: alpha must lie in (0, 1)");
    if (!(u.support_radius > 0.0)) throw std::invalid_argument("riesz_potential_odd: support radius must be positive");
    if (!(u.origin_exponent < 2.0)) throw std::invalid_argument("riesz_potential_odd: origin exponent must be < 2");
    const double c = riesz_kernel_constant(alpha);
    std::vector<double> out;
    out.reserve(x.size());
    for (double xi : x) {
        if (xi == 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double v = riesz_raw(u, std::abs(xi), alpha, opt);
        out.push_back(xi > 0 ? c * v : -c * v);
    }
    return out;
}

// ---------------------------------------------------------------- calibration

namespace {

// Large box so periodic images sit far below the quadrature error.
constexpr int calib_n = 1 << 18;
constexpr double calib_length = 8192.0;
constexpr double calib_x = 0.6875;  // a grid point: 22 * dx with dx = 1/32

double calib_profile(double x) { return x * std::exp(-x * x); }

double spectral_at_calib_point(double s)
{
    const Grid grid(calib_n, calib_length);
    const Field u = Field::sample(grid, calib_profile, true);
    const Field v = frac_laplacian(u, s);
    const int j = static_cast<int>(std::lround((calib_x + 0.5 * calib_length) / grid.spacing()));
    return v[j];
}

double memoized(std::map<double, double>& cache, std::mutex& m, double key, const std::function<double()>& make)
{
    std::lock_guard lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = make();
    cache.emplace(key, v);
    return v;
}

}  // namespace

double riesz_kernel_constant(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("riesz_kernel_constant: alpha must lie in (0, 1)");
    static std::mutex m;
    static std::map<double, double> cache;
    return memoized(cache, m, alpha, [alpha] {
        LineFunction u;
        u.f = calib_profile;
        u.support_radius = 9.0;
        const double raw = riesz_raw(u, calib_x, alpha, HalflineOptions{});
        return spectral_at_calib_point(-alpha) / raw;
    });
}

double laplacian_kernel_constant(double beta)
{
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("laplacian_kernel_constant: beta must lie in (0, 2)");
    static std::mutex m;
    static std::map<double, double> cache;
    return memoized(cache, m, beta, [beta] {
        const auto raw = realspace_raw(calib_profile, 9.0, calib_x, beta, RealspaceOptions{});
        return spectral_at_calib_point(beta) / raw.value;
    });
}

}  // namespace nlt

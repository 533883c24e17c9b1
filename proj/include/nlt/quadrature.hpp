#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace nlt::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b,
// a, b > -1. Nodes come from the Golub-Welsch eigenproblem. Rules are
// cached per (n, a, b); the returned reference stays valid.
const Rule& gauss_jacobi(int n, double a, double b);
inline const Rule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

inline constexpr int default_order = 20;

// Integral of f over [lo, hi] with an n-point Gauss-Legendre rule.
template <class F>
auto gl(F&& f, double lo, double hi, int n = default_order)
{
    const Rule& r = gauss_legendre(n);
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    decltype(f(c)) s{};
    for (int i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

// Integral over [lo, hi] of f(y) * (y - lo)^p: f smooth, p > -1.
template <class F>
auto gj_left(F&& f, double lo, double hi, double p, int n = default_order)
{
    const Rule& r = gauss_jacobi(n, 0.0, p);
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    decltype(f(c)) s{};
    for (int i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * std::pow(h, p + 1.0);
}

// Integral over [lo, hi] of f(y) * (hi - y)^p: f smooth, p > -1.
template <class F>
auto gj_right(F&& f, double lo, double hi, double p, int n = default_order)
{
    const Rule& r = gauss_jacobi(n, p, 0.0);
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    decltype(f(c)) s{};
    for (int i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * std::pow(h, p + 1.0);
}

// Breakpoints of [lo, hi] graded geometrically away from `lo`: panel widths
// start at `first` and grow by `ratio`, capped at `max_width`.
std::vector<double> graded_panels(double lo, double hi, double first, double ratio, double max_width);

// Composite Gauss-Legendre over consecutive breakpoints.
template <class F>
auto gl_panels(F&& f, std::span<const double> breaks, int n = default_order)
{
    decltype(f(breaks[0])) s{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += gl(f, breaks[i], breaks[i + 1], n);
    return s;
}

// Richardson extrapolation of values[m] computed at step h_m = h_0 * r^m
// (r < 1) whose error expands as sum_i c_i h^{p_i}. Returns the
// extrapolated value; `last_change` receives the size of the final correction.
double richardson(std::span<const double> values, double r, std::span<const double> exponents,
                  double* last_change = nullptr);

}  // namespace nlt::quad

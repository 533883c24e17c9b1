#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace nlt {

using cplx = std::complex<double>;

// F(lambda) = G((1-th+il)/2)/G((th-il)/2) * G(1+(th+a-il)/2)/G((1-th-a+il)/2),
// 0 < alpha < 1, 0 < theta < 1 - alpha. Evaluated through log Gamma so large
// |lambda| neither overflows nor underflows.
cplx mellin_symbol(double alpha, double theta, double lambda);

// C_{k,alpha} = (-1)^k binom(-alpha-1, k) = prod_{j=1..k} (alpha+j)/j.
double series_coefficient(int k, double alpha);

// The same symbol from the binomial series: const * (theta - i lambda) G(lambda),
// summed over k < n_terms. The constant is fixed at lambda = 0 against
// mellin_symbol. With `accelerate`, partial sums at n_terms 2^-m are
// Richardson-extrapolated (the tail decays like N^{alpha-1}).
cplx mellin_symbol_series(double alpha, double theta, double lambda, int n_terms, bool accelerate = true);

struct SharpBound {
    double c_low;   // min of Re F / (1 + |lambda|^alpha)
    double c_high;  // max of the same
    double min_re;  // min of Re F over the sweep
    double argmin;
    // Re F(lambda) / lambda^alpha at lambda = 1e3 and 1e4.
    double ratio_1e3;
    double ratio_1e4;
};

// Sweep over lambda = 0 and a log-spaced grid in [1e-3, lambda_max].
SharpBound sharp_bound_check(double alpha, double theta, double lambda_max, int samples = 4000);

struct MellinSample {
    std::vector<double> lambda_grid;
    std::vector<cplx> values;
    double line_abscissa = 0.0;
    // Log grid actually used: t = t0 + j h, j < n.
    double t0 = 0.0;
    double h = 0.0;
    int n = 0;
};

struct MellinOptions {
    double step = 0.02;       // spacing of the t = log x grid
    double tail_tol = 1e-10;  // integrand at the grid edges relative to its peak
    double t_limit = 400.0;   // give up (non-decay) past |t| = t_limit
};

// int_0^inf f(x) x^{sigma + i lambda - 1} dx by the trapezoidal rule in
// t = log x. The grid grows until the integrand falls below tail_tol of its
// peak at both ends; throws std::domain_error if it never does.
MellinSample mellin_transform(const std::function<double(double)>& f, double line_abscissa,
                              std::span<const double> lambda_grid, const MellinOptions& opt = {});

// Same sum for samples g_j = f(e^{t_j}) e^{sigma t_j} already on a uniform log grid.
std::vector<cplx> mellin_from_log_samples(double t0, double h, std::span<const double> g,
                                          std::span<const double> lambda_grid);

// Uniform grid of n points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);

// Trapezoidal (1/2pi) int |values|^2 d lambda over a uniform grid.
double mellin_parseval(const MellinSample& s);

// An odd function through its restriction to [0, inf).
struct OddProfile {
    std::function<double(double)> u;
    std::function<double(double)> du;
    // u vanishes (below double precision) past this radius.
    double support_radius = 0.0;
};

struct SymbolRelationReport {
    double alpha;
    double delta;
    double theta;              // delta/2 - alpha
    double max_rel_deviation;  // over the resolved band
    double band;               // largest |lambda| in the resolved band
    int resolved_points;
    bool decay_ok;             // the integrand of A fell below 1e-10 of its peak at both grid ends
    bool trivial;              // u = 0: both sides vanish identically
};

// A(lambda) = int Lambda^{-alpha}u x^{i lambda - delta/2 - 1} dx,
// B(lambda) = int u_x x^{i lambda - delta/2 + alpha} dx, and the deviation of
// B from 2^{alpha+1} F_{alpha,theta}(lambda) A on |lambda| <= lambda_max where
// |A| > 1e-6 max|A|. 0 < alpha < 1, 2 alpha < delta < 2.
SymbolRelationReport verify_symbol_relation(const OddProfile& u, double alpha, double delta,
                                            double lambda_max = 20.0);

// Lambda^{-alpha}u and u_x sampled at x = e^{t0 + j h}; shared by the
// symbol check and the weighted-inequality certification. Nodes below
// x_inner use an odd cubic model matched to the quadrature at x_inner.
struct LogGridSamples {
    double t0;
    double h;
    std::vector<double> x;
    std::vector<double> v;   // Lambda^{-alpha} u
    std::vector<double> du;  // u_x
};
LogGridSamples sample_on_log_grid(const OddProfile& u, double alpha, double t_lo, double t_hi, double h,
                                  double x_inner = 1e-4);

}  // namespace nlt

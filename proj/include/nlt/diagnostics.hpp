#pragma once

#include "nlt/mellin.hpp"
#include "nlt/spectral.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nlt {

enum class Verdict { completed, blowup_detected, resolution_lost, boundary_contaminated };

const char* to_string(Verdict v);
// Throws std::invalid_argument on an unknown name.
Verdict verdict_from_string(std::string_view s);

// Time series of one run. Every array has one entry per recorded step.
struct DiagnosticsRecord {
    std::vector<double> times;
    std::vector<double> dt;
    std::vector<double> sup_norm;
    std::vector<double> l1_norm;
    std::vector<double> lp_norm;
    std::vector<double> gradient_sup;
    std::vector<double> drift_criterion_integrand;  // ||d/dx Lambda^{-alpha} u||_inf
    std::vector<double> alt_criterion_integrand;    // ||Lambda^{1-alpha} u||_inf
    std::vector<double> weighted_a;
    std::vector<double> modulus_ratio;  // NaN when the monitor is off
    std::vector<double> spectral_tail;
    std::vector<double> boundary_fraction;
    // min over x >= 0 of u, divided by ||u_0||_inf (0 when u >= 0 there).
    std::vector<double> min_right;
    std::vector<double> parity_error;
    std::vector<double> grad_l2_sq;  // ||u_x||_2^2
    std::vector<double> hess_l2_sq;  // ||u_xx||_2^2

    double lp_exponent = 2.0;
    Verdict verdict = Verdict::completed;
    std::optional<double> blowup_time_estimate;

    std::size_t size() const { return times.size(); }
    // Throws std::logic_error unless all arrays share a length and times increase.
    void check_consistent() const;
};

// ------------------------------------------------------------ grid quantities

// Trigonometric interpolant of a grid field, evaluated anywhere.
class SpectralInterpolant {
public:
    explicit SpectralInterpolant(const Field& f);
    double operator()(double x) const { return eval(x, 0); }
    // derivative order 0, 1 or 2
    double eval(double x, int derivative) const;

private:
    double kappa_;  // 2 pi / L
    double c0_;
    std::vector<cplx> c_;  // modes 1 .. n/2 - 1
};

// max |u| refined off the grid by Newton steps on the interpolant.
double refined_sup(const Field& u);
double l1_norm(const Field& u);
double lp_norm(const Field& u, double p);
double gradient_sup(const Field& u);
// Energy in |j| in (n/4, n/3] over total energy.
double spectral_tail_fraction(const Field& u);
// max |u| over the outer 10% of the box divided by max |u|.
double boundary_fraction(const Field& u);

// ------------------------------------------------------------ weighted functional

struct WeightedFunctional {
    double value = 0.0;
    // Share of the integral coming from the boundary margin (not included in value).
    double margin_part = 0.0;
    bool contaminated = false;  // |margin_part| > 1% of |value|
};

// int_0^Xmax Lambda^{-alpha}u x^-delta dx for an odd grid field, Xmax = L/2 (1 - margin).
// Linear model on [0, dx/2], log-graded Gauss panels on the interpolant up to
// 8 dx, Simpson on grid values beyond. 2 alpha < delta < 2.
WeightedFunctional weighted_functional(const Field& u, double alpha, double delta, double margin = 0.1);
// Same integral over (0, inf) for an odd function on the line.
WeightedFunctional weighted_functional(const OddProfile& u, double alpha, double delta);

// ------------------------------------------------------------ Riccati fit

struct RiccatiReport {
    int samples = 0;
    double c_fit = 0.0;    // least-squares C in da/dt ~ C a^2 - K
    double c_prime = 0.0;  // smallest C' making da/dt >= C a^2 - C'(1+l1)^2 hold everywhere
    double c_max = 0.0;    // largest C that holds everywhere with C' from the fit
    bool trivial = false;  // a == 0 throughout
    bool certified = false;
};

// Throws std::invalid_argument with fewer than 20 samples.
RiccatiReport riccati_check(std::span<const double> t, std::span<const double> a, double u0_l1);
RiccatiReport riccati_check(const DiagnosticsRecord& rec, double u0_l1);

// ------------------------------------------------------------ weighted inequality

struct WeightedInequality {
    double lhs = 0.0;         // C_{alpha,delta} int Lambda^{-alpha}u u_x x^{alpha-delta} dx
    double lhs_mellin = 0.0;  // same through (1/2pi) int Re(2^{alpha+1} F) |A|^2
    double rhs_raw = 0.0;     // int (Lambda^{-alpha}u)^2 x^{-1-delta} dx
    double ratio = 0.0;
    double route_gap = 0.0;   // |lhs - lhs_mellin| / |lhs|
    bool indeterminate = false;
};

WeightedInequality weighted_inequality_check(const OddProfile& u, double alpha, double delta);

// Seeded random odd C^1 profile: a few odd pairs of Gaussian bumps with
// random centres, widths and signs, plus a dipole term.
OddProfile random_odd_profile(std::uint64_t seed);

// ------------------------------------------------------------ modulus of continuity

enum class ModulusCase { critical, subcritical };

// omega'' = -d / (r^alpha + r^p), p = 2 (critical) or 5 (subcritical),
// omega'(r) = -int_r^inf omega'', omega(0) = 0, on a log grid over [1e-8, 1e8].
struct ModulusSpec {
    ModulusCase kase;
    double alpha;
    double beta;
    double delta_param;
    double power;
    std::vector<double> r;
    std::vector<double> omega;
    std::vector<double> omega_prime;
    std::vector<double> omega_tail;  // int_r^inf omega(s) s^{alpha-2} ds
    std::vector<double> Omega;       // r^alpha omega + r omega_tail (constant set to 1)
    double omega_prime0;

    double omega_at(double r) const;
    double omega_prime_at(double r) const;
    double omega_tail_at(double r) const;
};

// Throws std::invalid_argument when the case does not match (alpha, beta).
ModulusSpec build_modulus(ModulusCase kase, double alpha, double beta, double delta_param);

struct ModulusRatio {
    double ratio = 0.0;
    int stride = 1;
    int i = -1, j = -1;  // maximizing pair, u_i - u_j > 0
};

// sup over pairs of a stride subgrid (at most 1e7 pairs) of (u_l(x) - u_l(y)) / omega(|x-y|)
// with u_l(x) = l^{alpha+beta-1} u(l x), l = rescale.
ModulusRatio modulus_ratio(const Field& u, const ModulusSpec& spec, double rescale, long max_pairs = 10000000);
// The rescale at which the ratio equals target (bisection in log l).
double modulus_rescale(const Field& u, const ModulusSpec& spec, double target = 0.5);

// Explicit form of the Riesz-potential modulus bound with the constants of
// its two estimates: K1 r^alpha omega(r) + K2 r int_r^inf omega s^{alpha-2} ds,
// K1 = 2 c ((3/2)^alpha + (1/2)^alpha) / alpha, K2 = 2 c (1-alpha) 2^{2-alpha}, c the kernel constant.
double riesz_modulus_bound(const ModulusSpec& spec, double r);

struct ContainmentReport {
    double worst_ratio = 0.0;  // max over r of measured modulus of Lambda^{-alpha}u / bound
    double worst_r = 0.0;
    bool holds = false;        // worst_ratio <= 1.05
};

// Scales u so that it has modulus omega (ratio 1 at rescale 1), then compares the
// measured modulus of Lambda^{-alpha}u with riesz_modulus_bound at every grid distance.
ContainmentReport riesz_modulus_containment(const Field& u, const ModulusSpec& spec);

struct DissipationBound {
    double lhs = 0.0;  // -Lambda^beta u(x) + Lambda^beta u(y) at the touching pair
    double rhs = 0.0;  // the two omega-integrals times the kernel constant
    double r = 0.0;
    bool holds = false;  // lhs <= rhs + 0.05 |rhs|
};

// Scales u to touch omega, then evaluates both sides at the maximizing pair. 0 < beta < 2.
DissipationBound dissipation_bound_check(const Field& u, const ModulusSpec& spec, double beta);

// ------------------------------------------------------------ positivity
// Seeded smooth periodic field, coefficients N(0,1)/m on modes 1..modes.
Field random_smooth_field(const Grid& grid, std::uint64_t seed, int modes);
// int |th|^{p-2} th Lambda^beta th dx over int |th|^p dx. Nonnegative for p >= 2, 0 < beta <= 2.
double positivity_pairing(const Field& th, double p, double beta);

// ------------------------------------------------------------ continuation criterion

struct CriterionIntegral {
    double main = 0.0;  // int ||d/dx Lambda^{-alpha} u||_inf dt
    double alt = 0.0;   // int ||Lambda^{1-alpha} u||_inf dt
};
CriterionIntegral continuation_criterion_integral(const DiagnosticsRecord& rec);

}  // namespace nlt

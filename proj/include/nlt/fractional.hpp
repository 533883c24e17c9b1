#pragma once

#include "nlt/spectral.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nlt {

enum class ZeroModePolicy { zero, reject_nonzero_mean };

// Spectral symbol |k|^s on a grid, s in (-1, 2].
//
// The k = 0 entry is 0. The Nyquist entry is 0 except for s = 0, where the
// operator is the projection onto mean-zero fields and leaves Nyquist alone.
class FractionalMultiplier {
public:
    FractionalMultiplier(const Grid& grid, double s, ZeroModePolicy policy = ZeroModePolicy::zero);

    double exponent() const { return s_; }
    ZeroModePolicy policy() const { return policy_; }
    const Grid& grid() const { return grid_; }
    const std::vector<double>& symbol() const { return symbol_; }
    Field apply(const Field& f) const;

private:
    Grid grid_;
    double s_;
    ZeroModePolicy policy_;
    std::vector<double> symbol_;
};

Field frac_laplacian(const Field& f, double s, ZeroModePolicy policy = ZeroModePolicy::zero);

// d/dx by spectral differentiation (Nyquist dropped).
Field spectral_derivative(const Field& f);

// (Lambda^{-alpha} u) * u_x with both factors truncated to |j| <= n/3.
Field drift_term(const Field& u, double alpha);

// A function on the real line, described on [0, inf) when odd.
struct LineFunction {
    std::function<double(double)> f;
    // f vanishes for |y| > support_radius, unless tail_exponent is set, in
    // which case f(y) = f(R) (R/y)^p exactly for y > R.
    double support_radius = 0.0;
    // f(y) y^origin_exponent stays smooth as y -> 0+ (0 for regular f).
    double origin_exponent = 0.0;
    std::optional<double> tail_exponent;
    // Points in (0, R) where f has a jump or kink.
    std::vector<double> breakpoints;
};

struct RealspaceOptions {
    double eps0 = 0.1;       // largest principal-value cutoff
    int levels = 7;          // cutoffs eps0 * 2^-m, m = 0..levels-1
    double panel_width = 0.1;
    int order = 20;
};

struct RealspaceResult {
    std::vector<double> values;
    // Size of the last Richardson correction at each point.
    std::vector<double> correction;
    // True when every point showed shrinking differences over the cutoff schedule.
    bool converged = true;
};

// Lambda^beta g by the singular integral C_beta int (g(x) - g(y)) |x-y|^{-1-beta} dy,
// beta in (0, 2). g is C^2 and vanishes outside [-R, R].
RealspaceResult frac_laplacian_realspace(const std::function<double(double)>& g, double support_radius,
                                         std::span<const double> x, double beta,
                                         const RealspaceOptions& opt = {});

struct HalflineOptions {
    double panel_width = 0.25;
    // Panels may grow to relative_growth * y away from the singular points;
    // use ~0.5 for power-law inputs, 0 for inputs with a fixed length scale.
    double relative_growth = 0.0;
    int order = 20;
};

// Lambda^beta of an odd function given on the half line, beta in (0, 1).
// Handles f(y) ~ y^{-d}, d < 2, at the origin. Odd extension for x < 0.
// With a power tail, |x| must not exceed R/2.
std::vector<double> frac_laplacian_odd_halfline(const LineFunction& g, std::span<const double> x, double beta,
                                                const HalflineOptions& opt = {});

// Lambda^{-alpha} u = C_alpha int_0^inf u(y) (|x-y|^{alpha-1} - (x+y)^{alpha-1}) dy
// for odd u, alpha in (0, 1). Returns exactly 0 at x = 0.
std::vector<double> riesz_potential_odd(const LineFunction& u, std::span<const double> x, double alpha,
                                        const HalflineOptions& opt = {});

// Kernel constants of the two singular-integral representations, fixed by
// matching the spectral operator on a calibration profile. Memoized.
double riesz_kernel_constant(double alpha);
double laplacian_kernel_constant(double beta);

}  // namespace nlt

#pragma once

#include <complex>

namespace nlt {

enum class PowerLawKind { riesz, laplacian };
enum class QuadScheme { gauss_jacobi, tanh_sinh };

// Constant C in  Lambda^{-alpha} g = C |x|^{alpha-delta} sgn(x)  (riesz) or
// Lambda^beta g = C |x|^{-delta-beta} sgn(x)  (laplacian), g = |x|^{-delta} sgn(x).
struct PowerLawConstant {
    PowerLawKind kind;
    double exponent;  // alpha or beta
    double delta;
    double value;     // kernel constant times the scaling integral
    double integral;  // the scaling integral alone
    // Relative change of the primary scheme under doubled order.
    double quadrature_error_estimate;
    // Relative gap between the Gauss-Jacobi and tanh-sinh schemes.
    double scheme_disagreement;
};

// int_0^inf y^-delta (|1-y|^{alpha-1} - (1+y)^{alpha-1}) dy, 0 < alpha < 1, 0 < delta < 2.
double riesz_scaling_integral(double alpha, double delta, QuadScheme scheme = QuadScheme::gauss_jacobi,
                              int order = 30);

// int_0^inf ((1-y^-delta)/|1-y|^{1+beta} + (1+y^-delta)/(1+y)^{1+beta}) dy,
// 0 < beta < 1, 0 < Re delta < 2. The complex form drives the symbol check of
// the Mellin module, where delta = 1 + theta - i lambda.
std::complex<double> laplacian_scaling_integral(double beta, std::complex<double> delta, int order = 30);
double laplacian_scaling_integral(double beta, double delta, QuadScheme scheme, int order = 30);

// Throw std::domain_error outside the convergent parameter range.
PowerLawConstant riesz_power_constant(double alpha, double delta);
// beta = 0 returns value 1 exactly (identity operator).
PowerLawConstant laplacian_power_constant(double beta, double delta);

struct TruncatedRieszBound {
    double sup;          // max |Lambda^{-alpha} g| over (0, x_max]
    double argmax;
    double sup_inner;    // same over (0, x_max / 10]
    bool stabilized;     // sup_inner within 1% of sup
    bool edge_growth;    // sup attained at the outer edge of the window
    double lp_exponent;  // 1/alpha1 + 0.01
    double lp_norm;      // ||g||_{lp_exponent}
};

// Sup of Lambda^{-alpha} g for g = |x|^{-alpha1} sgn(x) 1_{|x| >= 1}, 0 < alpha < alpha1 < 1.
TruncatedRieszBound truncated_riesz_bound(double alpha, double alpha1, double x_max = 1e3);

// Right side of  int |x|^{-z} e^{-i x xi} dx = sqrt(pi) 2^{1-z} Gamma((1-z)/2)/Gamma(z/2) |xi|^{z-1},
// 0 < Re z < 1, xi != 0.
std::complex<double> fourier_power_law(std::complex<double> z, double xi);

// Left side of the same identity by oscillatory quadrature: series on the
// first half period, Gauss-Legendre per half period after that, and repeated
// averaging of the alternating partial sums for the tail.
std::complex<double> fourier_power_law_quadrature(std::complex<double> z, double xi);

}  // namespace nlt

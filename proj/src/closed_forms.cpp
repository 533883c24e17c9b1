#include "nlt/closed_forms.hpp"

#include "nlt/fractional.hpp"
#include "nlt/gamma.hpp"
#include "nlt/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nlt {

namespace {

using C = std::complex<double>;

// sum over odd j of binom(q, j) a^{j+s} / (j+s): the integral over [0, a] of
// t^{s-1} ((1+t)^q - (1-t)^q) / 2, valid for Re s > -1 and a < 1.
template <class S>
S odd_binomial_moment(double q, S s, double a)
{
    S sum{};
    double binom = 1.0;
    double ap = 1.0;
    for (int j = 1; j < 400; ++j) {
        binom *= (q - j + 1.0) / j;
        ap *= a;
        if (j % 2 == 0) continue;
        const S term = binom * ap * std::pow(a, s) / (static_cast<double>(j) + s);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && j > 9) break;
    }
    return sum;
}

// e^w - 1 without cancellation for small |w|.
C cexpm1(C w)
{
    const double a = w.real(), b = w.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// ((1+t)^q - (1-t)^q) / t for 0 < t < 1.
double odd_difference_over_t(double q, double t)
{
    if (t < 1e-5) return 2.0 * q + q * (q - 1.0) * (q - 2.0) / 3.0 * t * t;
    return (std::expm1(q * std::log1p(t)) - std::expm1(q * std::log1p(-t))) / t;
}

void check_riesz_domain(double alpha, double delta)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("riesz power constant: alpha must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 2.0)) throw std::domain_error("riesz power constant: delta must lie in (0, 2)");
}

void check_laplacian_domain(double beta, C delta)
{
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("laplacian power constant: beta must lie in (0, 1)");
    if (!(delta.real() > 0.0 && delta.real() < 2.0))
        throw std::domain_error("laplacian power constant: Re delta must lie in (0, 2)");
}

double riesz_gj(double alpha, double delta, int n)
{
    const double q = alpha - 1.0;
    // [0, 1/2] and [2, inf) (after y = 1/t) by exact binomial moments.
    double total = -2.0 * odd_binomial_moment(q, 1.0 - delta, 0.5);
    total += -2.0 * odd_binomial_moment(q, delta - alpha, 0.5);
    // Around y = 1 the weight |1-y|^q goes to Gauss-Jacobi.
    auto p = [&](double y) { return std::pow(y, -delta); };
    auto plus = [&](double y) { return std::pow(y, -delta) * std::pow(1.0 + y, q); };
    total += quad::gj_right(p, 0.5, 1.0, q, n) - quad::gl(plus, 0.5, 1.0, n);
    total += quad::gj_left(p, 1.0, 2.0, q, n) - quad::gl(plus, 1.0, 2.0, n);
    return total;
}

double riesz_tanh_sinh(double alpha, double delta)
{
    const double q = alpha - 1.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    // t^p ((1-t)^q - (1+t)^q), with t and the complement 1-t supplied separately.
    auto weighted_diff = [q](double p, double t, double one_minus_t) {
        if (t <= 0.0 || one_minus_t <= 0.0) return 0.0;
        if (t < 0.1) return -std::pow(t, p + 1.0) * odd_difference_over_t(q, t);
        return std::pow(t, p) * (std::pow(one_minus_t, q) - std::pow(1.0 + t, q));
    };
    auto inner = [&](double y, double yc) { return weighted_diff(-delta, y, y < 0.5 ? 1.0 - y : yc); };
    // y = 1/t on [1, inf): y^-delta ((y-1)^q - (y+1)^q) dy = t^{delta-q-2} ((1-t)^q - (1+t)^q) dt
    auto outer = [&](double t, double tc) { return weighted_diff(delta - q - 2.0, t, t < 0.5 ? 1.0 - t : tc); };
    return ts.integrate(inner, 0.0, 1.0, 1e-14) + ts.integrate(outer, 0.0, 1.0, 1e-14);
}

C laplacian_gj(double beta, C delta, int n)
{
    const double q = -1.0 - beta;
    auto ypow = [&](double y) { return std::exp(-delta * std::log(y)); };
    C total = 0.0;
    // [0, 1/2]: the delta-free part is smooth, the rest is y^{1-delta} times an even series.
    total += quad::gl([&](double y) { return std::pow(1.0 - y, q) + std::pow(1.0 + y, q); }, 0.0, 0.5, n);
    total += 2.0 * odd_binomial_moment(q, C(1.0) - delta, 0.5);
    // [2, inf): closed form for the delta-free part; y = 1/t for the rest.
    total += (1.0 + std::pow(3.0, -beta)) / beta;
    total += 2.0 * odd_binomial_moment(q, delta + beta, 0.5);
    // [1/2, 2]: divided difference (1 - y^-delta)/(1 - y) against |1-y|^{-beta}.
    auto divided = [&](double y) { return -cexpm1(-delta * std::log(y)) / (1.0 - y); };
    auto plus = [&](double y) { return (1.0 + ypow(y)) * std::pow(1.0 + y, q); };
    total += quad::gj_right(divided, 0.5, 1.0, -beta, n);
    total -= quad::gj_left(divided, 1.0, 2.0, -beta, n);
    total += quad::gl(plus, 0.5, 1.0, n) + quad::gl(plus, 1.0, 2.0, n);
    return total;
}

double laplacian_tanh_sinh(double beta, double delta)
{
    const double q = -1.0 - beta;
    boost::math::quadrature::tanh_sinh<double> ts;
    // On (0, 1): (1 - y^-d)(1-y)^q + (1 + y^-d)(1+y)^q, split so nothing cancels.
    auto inner = [&](double y) {
        const double omy = 1.0 - y;
        const double smooth = std::pow(omy, q) + std::pow(1.0 + y, q);
        double sing;
        if (y < 0.1)
            sing = std::pow(y, 1.0 - delta) * odd_difference_over_t(q, y);
        else
            sing = std::pow(y, -delta) * (std::pow(1.0 + y, q) - std::pow(omy, q));
        return smooth + sing;
    };
    // Near y = 1 the two pieces above cancel to O(|1-y|^{-beta}); integrate
    // [1/2, 1] with the divided difference instead.
    auto near_one = [&](double y, double yc) {
        const double omy = y < 0.75 ? 1.0 - y : yc;
        // log y from the complement: y itself has rounded to 1 near the endpoint.
        const double dd = -std::expm1(-delta * std::log1p(-omy)) / omy;
        return dd * std::pow(omy, -beta) + (1.0 + std::pow(y, -delta)) * std::pow(1.0 + y, q);
    };
    // y = 1/t on (1, inf): (1 - t^d)(1/t - 1)^q + (1 + t^d)(1/t + 1)^q over t^2
    //                    = t^{-q-2} [ (1 - t^d)(1-t)^q + (1 + t^d)(1+t)^q ].
    auto outer = [&](double t, double tc) {
        if (t <= 0.0) return 0.0;
        const double omt = t < 0.5 ? 1.0 - t : tc;
        double v;
        if (omt < 0.25) {
            const double dd = -std::expm1(delta * std::log1p(-omt)) / omt;  // (1 - t^d)/(1-t)
            v = dd * std::pow(omt, -beta) + (1.0 + std::pow(t, delta)) * std::pow(1.0 + t, q);
        } else {
            v = (1.0 - std::pow(t, delta)) * std::pow(omt, q) + (1.0 + std::pow(t, delta)) * std::pow(1.0 + t, q);
        }
        return std::pow(t, -q - 2.0) * v;
    };
    return ts.integrate(inner, 0.0, 0.5, 1e-14) + ts.integrate(near_one, 0.5, 1.0, 1e-14) +
           ts.integrate(outer, 0.0, 1.0, 1e-14);
}

}  // namespace

double riesz_scaling_integral(double alpha, double delta, QuadScheme scheme, int order)
{
    check_riesz_domain(alpha, delta);
    return scheme == QuadScheme::gauss_jacobi ? riesz_gj(alpha, delta, order) : riesz_tanh_sinh(alpha, delta);
}

C laplacian_scaling_integral(double beta, C delta, int order)
{
    check_laplacian_domain(beta, delta);
    return laplacian_gj(beta, delta, order);
}

double laplacian_scaling_integral(double beta, double delta, QuadScheme scheme, int order)
{
    check_laplacian_domain(beta, delta);
    return scheme == QuadScheme::gauss_jacobi ? laplacian_gj(beta, delta, order).real()
                                              : laplacian_tanh_sinh(beta, delta);
}

PowerLawConstant riesz_power_constant(double alpha, double delta)
{
    check_riesz_domain(alpha, delta);
    const double i1 = riesz_gj(alpha, delta, 30);
    const double i2 = riesz_gj(alpha, delta, 60);
    const double ts = riesz_tanh_sinh(alpha, delta);
    PowerLawConstant c{PowerLawKind::riesz, alpha, delta, 0.0, i2, 0.0, 0.0};
    c.value = riesz_kernel_constant(alpha) * i2;
    c.quadrature_error_estimate = std::abs(i1 - i2) / std::abs(i2);
    c.scheme_disagreement = std::abs(ts - i2) / std::abs(i2);
    return c;
}

PowerLawConstant laplacian_power_constant(double beta, double delta)
{
    if (beta == 0.0) {
        if (!(delta > 0.0 && delta < 2.0)) throw std::domain_error("laplacian power constant: delta must lie in (0, 2)");
        return {PowerLawKind::laplacian, 0.0, delta, 1.0, 1.0, 0.0, 0.0};
    }
    check_laplacian_domain(beta, delta);
    const double i1 = laplacian_gj(beta, delta, 30).real();
    const double i2 = laplacian_gj(beta, delta, 60).real();
    const double ts = laplacian_tanh_sinh(beta, delta);
    PowerLawConstant c{PowerLawKind::laplacian, beta, delta, 0.0, i2, 0.0, 0.0};
    c.value = laplacian_kernel_constant(beta) * i2;
    c.quadrature_error_estimate = std::abs(i1 - i2) / std::abs(i2);
    c.scheme_disagreement = std::abs(ts - i2) / std::abs(i2);
    return c;
}

TruncatedRieszBound truncated_riesz_bound(double alpha, double alpha1, double x_max)
{
    if (!(alpha > 0.0 && alpha < alpha1 && alpha1 < 1.0))
        throw std::domain_error("truncated_riesz_bound: need 0 < alpha < alpha1 < 1");
    if (!(x_max >= 10.0)) throw std::invalid_argument("truncated_riesz_bound: x_max must be at least 10");

    LineFunction g;
    g.f = [alpha1](double y) { return y >= 1.0 ? std::pow(y, -alpha1) : 0.0; };
    g.support_radius = 2.0 * x_max;
    g.tail_exponent = alpha1;
    g.breakpoints = {1.0};

    std::vector<double> xs;
    const int per_decade = 40;
    for (int i = 0;; ++i) {
        const double x = 1e-2 * std::pow(10.0, static_cast<double>(i) / per_decade);
        if (x > x_max * (1 + 1e-12)) break;
        xs.push_back(x);
    }
    for (int i = 0; i <= 250; ++i) xs.push_back(0.5 + 2.5 * i / 250.0);
    xs.push_back(x_max);

    const auto v = riesz_potential_odd(g, xs, alpha, HalflineOptions{0.25, 0.5, 20});
    TruncatedRieszBound out{};
    double edge = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > out.sup) {
            out.sup = a;
            out.argmax = xs[i];
        }
        if (xs[i] <= 0.1 * x_max) out.sup_inner = std::max(out.sup_inner, a);
        if (xs[i] == x_max) edge = a;
    }
    out.stabilized = out.sup_inner >= 0.99 * out.sup;
    out.edge_growth = edge >= out.sup;
    out.lp_exponent = 1.0 / alpha1 + 0.01;
    // ||g||_p^p = 2 int_1^inf y^{-alpha1 p} dy
    out.lp_norm = std::pow(2.0 / (alpha1 * out.lp_exponent - 1.0), 1.0 / out.lp_exponent);
    return out;
}

C fourier_power_law(C z, double xi)
{
    if (!(z.real() > 0.0 && z.real() < 1.0)) throw std::domain_error("fourier_power_law: Re z must lie in (0, 1)");
    if (xi == 0.0) throw std::domain_error("fourier_power_law: xi must be nonzero");
    const double pi = std::numbers::pi;
    const C lg = log_gamma(0.5 * (1.0 - z)) - log_gamma(0.5 * z);
    return std::sqrt(pi) * std::exp((1.0 - z) * std::log(2.0) + lg + (z - 1.0) * std::log(std::abs(xi)));
}

C fourier_power_law_quadrature(C z, double xi)
{
    if (!(z.real() > 0.0 && z.real() < 1.0)) throw std::domain_error("fourier_power_law: Re z must lie in (0, 1)");
    if (xi == 0.0) throw std::domain_error("fourier_power_law: xi must be nonzero");
    const double pi = std::numbers::pi;
    const double k = std::abs(xi);
    const double half = pi / k;

    // int_0^a x^-z cos(k x) dx termwise, a = half period / 2 (first zero of cos).
    const double a = 0.5 * half;
    C head = 0.0;
    double fact = 1.0;  // (2m)!
    double ka = 1.0;    // (k a)^{2m}
    for (int m = 0; m < 60; ++m) {
        if (m > 0) {
            fact *= (2.0 * m - 1.0) * (2.0 * m);
            ka *= (k * a) * (k * a);
        }
        const C term = (m % 2 ? -1.0 : 1.0) * ka / fact * std::exp((1.0 - z) * std::log(a)) / (2.0 * m + 1.0 - z);
        head += term;
        if (std::abs(term) < 1e-18 * std::abs(head)) break;
    }

    // Half periods between consecutive zeros alternate in sign.
    const int terms = 400;
    std::vector<C> partial;
    partial.reserve(terms);
    C s = head;
    auto f = [&](double x) { return std::exp(-z * std::log(x)) * std::cos(k * x); };
    for (int j = 0; j < terms; ++j) {
        const double lo = a + j * half;
        s += quad::gl(f, lo, lo + half, 24);
        partial.push_back(s);
    }
    // Repeated averaging of the last partial sums.
    const int depth = 40;
    std::vector<C> avg(partial.end() - depth - 1, partial.end());
    for (int d = 0; d < depth; ++d)
        for (std::size_t i = 0; i + 1 < avg.size() - d; ++i) avg[i] = 0.5 * (avg[i] + avg[i + 1]);
    return 2.0 * avg.front();
}

}  // namespace nlt

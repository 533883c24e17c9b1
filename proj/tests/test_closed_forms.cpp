#include "doctest.h"

#include "nlt/closed_forms.hpp"
#include "nlt/fractional.hpp"

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

using namespace nlt;
using C = std::complex<double>;

namespace {

const double grid_a[] = {0.1, 0.3, 0.5, 0.7, 0.9};
const double grid_d[] = {0.2, 0.6, 1.0, 1.4, 1.8};

LineFunction power_law(double delta, double R)
{
    LineFunction g;
    g.f = [delta](double y) { return std::pow(y, -delta); };
    g.support_radius = R;
    g.origin_exponent = delta;
    g.tail_exponent = delta;
    return g;
}

// 2 int_0^inf x^-z cos(xi x) dx by Ooura's double-exponential Fourier rule.
C ooura_oracle(C z, double xi)
{
    boost::math::quadrature::ooura_fourier_cos<double> oc;
    const double a = z.real(), b = z.imag();
    auto re = [&](double x) { return std::pow(x, -a) * std::cos(b * std::log(x)); };
    auto im = [&](double x) { return -std::pow(x, -a) * std::sin(b * std::log(x)); };
    return 2.0 * C(oc.integrate(re, xi).first, oc.integrate(im, xi).first);
}

// Closed forms from the Fourier side, used only as oracles:
// Lambda^s (|x|^-d sgn x) = 2^s G((1+d+s)/2) G((2-d)/2) / (G((1+d)/2) G((2-d-s)/2)) |x|^{-d-s} sgn x.
double odd_power_oracle(double s, double d)
{
    using boost::math::tgamma;
    return std::pow(2.0, s) * tgamma(0.5 * (1 + d + s)) * tgamma(0.5 * (2 - d)) /
           (tgamma(0.5 * (1 + d)) * tgamma(0.5 * (2 - d - s)));
}

}  // namespace

TEST_CASE("Riesz power-law constants are positive and reproducible")
{
    for (double a : grid_a)
        for (double d : grid_d) {
            const auto c = riesz_power_constant(a, d);
            INFO("alpha " << a << " delta " << d);
            CHECK(c.value > 0.0);
            CHECK(c.quadrature_error_estimate < 1e-8);
            CHECK(c.scheme_disagreement < 1e-8);
        }
    CHECK_THROWS_AS(riesz_power_constant(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(riesz_power_constant(0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(riesz_power_constant(0.5, 0.0), std::domain_error);
}

TEST_CASE("constants against the Fourier-side closed forms")
{
    for (double a : grid_a)
        for (double d : grid_d) {
            CHECK(riesz_power_constant(a, d).value == doctest::Approx(odd_power_oracle(-a, d)).epsilon(1e-7));
            CHECK(laplacian_power_constant(a, d).value == doctest::Approx(odd_power_oracle(a, d)).epsilon(1e-7));
        }
}

TEST_CASE("Riesz constant stays finite as alpha shrinks")
{
    const double c1 = riesz_power_constant(0.01, 0.8).value;
    const double c2 = riesz_power_constant(0.02, 0.8).value;
    CHECK(std::abs(c1 / c2 - 1.0) < 0.2);
}

TEST_CASE("Riesz potential of the exact power law")
{
    for (auto [a, d] : {std::pair{0.3, 0.8}, {0.5, 1.0}, {0.4, 1.2}, {0.6, 1.5}}) {
        const auto c = riesz_power_constant(a, d);
        std::vector<double> xs;
        for (int i = 0; i <= 12; ++i) xs.push_back(0.5 + 1.5 * i / 12);
        const auto v = riesz_potential_odd(power_law(d, 1e4), xs, a, HalflineOptions{0.25, 0.5, 20});
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(v[i] / (c.value * std::pow(xs[i], a - d)) - 1.0));
        INFO("alpha " << a << " delta " << d << " worst " << worst);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("Laplacian power-law constants")
{
    CHECK(laplacian_power_constant(0.0, 0.7).value == 1.0);
    for (double b : grid_a)
        for (double d : grid_d) {
            const auto c = laplacian_power_constant(b, d);
            INFO("beta " << b << " delta " << d);
            // Positive only while delta + beta < 2; past that the constant
            // changes sign (Gamma((2-delta-beta)/2) < 0), see the oracle case.
            if (b + d < 2.0)
                CHECK(c.value > 0.0);
            else
                CHECK(c.value < 0.0);
            CHECK(c.quadrature_error_estimate < 1e-8);
            CHECK(c.scheme_disagreement < 1e-8);
        }
    CHECK_THROWS_AS(laplacian_power_constant(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(laplacian_power_constant(0.5, 2.5), std::domain_error);
}

TEST_CASE("half-line Lambda^beta of the exact power law")
{
    for (auto [b, d] : {std::pair{0.3, 0.5}, {0.5, 0.8}, {0.7, 1.2}, {0.4, 1.5}}) {
        const auto c = laplacian_power_constant(b, d);
        std::vector<double> xs;
        for (int i = 0; i <= 12; ++i) xs.push_back(0.5 + 1.5 * i / 12);
        const auto v = frac_laplacian_odd_halfline(power_law(d, 1e4), xs, b, HalflineOptions{0.25, 0.5, 20});
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(v[i] / (c.value * std::pow(xs[i], -d - b)) - 1.0));
        INFO("beta " << b << " delta " << d << " worst " << worst);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("composition of the two closed forms")
{
    // Lambda^alpha Lambda^-alpha g = g forces C_{alpha,delta} C^Lambda_{alpha,delta-alpha} = 1.
    for (auto [a, d] : {std::pair{0.3, 0.8}, {0.5, 1.0}, {0.4, 1.2}, {0.6, 1.5}}) {
        const double prod = riesz_power_constant(a, d).value * laplacian_power_constant(a, d - a).value;
        CHECK(prod == doctest::Approx(1.0).epsilon(1e-8));
    }
    // Operator chain: Lambda^alpha applied by quadrature to C |x|^{alpha-delta} recovers |x|^-delta.
    const double a = 0.4, d = 0.9;
    const double c = riesz_power_constant(a, d).value;
    LineFunction out = power_law(d - a, 1e4);
    out.f = [c, a, d](double y) { return c * std::pow(y, a - d); };
    const std::vector<double> xs = {0.6, 1.0, 1.7};
    const auto back = frac_laplacian_odd_halfline(out, xs, a, HalflineOptions{0.25, 0.5, 20});
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(back[i] == doctest::Approx(std::pow(xs[i], -d)).epsilon(1e-2));
}

TEST_CASE("truncated Riesz bound")
{
    const auto b = truncated_riesz_bound(0.3, 0.5);
    CHECK(std::isfinite(b.sup));
    CHECK(b.sup > 0.0);
    CHECK(b.stabilized);
    CHECK_FALSE(b.edge_growth);
    const auto b2 = truncated_riesz_bound(0.3, 0.9);
    CHECK(std::isfinite(b2.sup));
    CHECK(b2.stabilized);
    CHECK(b2.lp_exponent == doctest::Approx(1.0 / 0.9 + 0.01));
    CHECK_THROWS_AS(truncated_riesz_bound(0.5, 0.3), std::domain_error);
}

TEST_CASE("Fourier transform of |x|^-z")
{
    const double pi = std::numbers::pi;
    CHECK(std::abs(fourier_power_law(0.5, 1.0) - std::sqrt(2 * pi)) < 1e-13);
    for (C z : {C(0.4), C(0.7, 1.3), C(0.2, -2.0)}) {
        const C r = fourier_power_law(z, 2.0) / fourier_power_law(z, 1.0);
        CHECK(std::abs(r - std::pow(2.0, z - 1.0)) < 1e-13);
        CHECK(std::abs(fourier_power_law(z, -3.0) - fourier_power_law(z, 3.0)) < 1e-13);
    }
    CHECK_THROWS_AS(fourier_power_law(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(fourier_power_law(0.5, 0.0), std::domain_error);
}

TEST_CASE("oscillatory quadrature of the Fourier integral")
{
    for (auto [z, xi] : {std::pair{C(0.4), 2.0}, {C(0.25, 0.5), 1.0}, {C(0.7, -1.0), 3.5}}) {
        const C rhs = fourier_power_law(z, xi);
        const C lhs = fourier_power_law_quadrature(z, xi);
        const C ooura = ooura_oracle(z, xi);
        INFO("z " << z << " xi " << xi);
        CHECK(std::abs(lhs - rhs) < 1e-4 * std::abs(rhs));
        CHECK(std::abs(ooura - rhs) < 1e-4 * std::abs(rhs));
        CHECK(std::abs(lhs - ooura) < 1e-6 * std::abs(rhs));
    }
}

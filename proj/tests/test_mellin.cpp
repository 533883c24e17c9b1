#include "doctest.h"

#include "nlt/closed_forms.hpp"
#include "nlt/fractional.hpp"
#include "nlt/gamma.hpp"
#include "nlt/mellin.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>

using namespace nlt;

namespace {

OddProfile gauss_dipole()
{
    OddProfile p;
    p.u = [](double x) { return x * std::exp(-x * x); };
    p.du = [](double x) { return (1.0 - 2.0 * x * x) * std::exp(-x * x); };
    p.support_radius = 6.5;
    return p;
}

}  // namespace

TEST_CASE("symbol at lambda = 0 against real Gamma values")
{
    using boost::math::tgamma;
    const double a = 0.5, th = 0.2;
    const double oracle = tgamma(0.5 * (1 - th)) / tgamma(0.5 * th) * tgamma(1 + 0.5 * (th + a)) /
                          tgamma(0.5 * (1 - th - a));
    const cplx f0 = mellin_symbol(a, th, 0.0);
    CHECK(f0.real() == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(f0.imag()) < 1e-14);
}

TEST_CASE("reality symmetry and positivity")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> L(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double l = L(rng);
        const cplx p = mellin_symbol(0.4, 0.3, l), m = mellin_symbol(0.4, 0.3, -l);
        CHECK(std::abs(p - std::conj(m)) < 1e-12 * std::abs(p));
        CHECK(p.real() > 0.0);
    }
}

TEST_CASE("Re F is minimal at lambda = 0")
{
    for (double a : {0.2, 0.5, 0.8})
        for (double frac : {0.2, 0.5, 0.8}) {
            const double th = frac * (1.0 - a);
            const double f0 = mellin_symbol(a, th, 0.0).real();
            double worst = INFINITY;
            const int n = 100000;
            for (int i = 0; i < n; ++i) {
                const double l = -1e4 + 2e4 * i / (n - 1);
                worst = std::min(worst, mellin_symbol(a, th, l).real() - f0);
            }
            INFO("alpha " << a << " theta " << th);
            CHECK(worst >= -1e-12 * f0);
        }
}

TEST_CASE("domain checks")
{
    CHECK_THROWS_AS(mellin_symbol(0.0, 0.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(mellin_symbol(0.5, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(mellin_symbol(0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mellin_symbol_series(0.5, 0.2, 1.0, 5), std::invalid_argument);
}

TEST_CASE("binomial series coefficients")
{
    const double a = 0.37;
    CHECK(series_coefficient(0, a) == 1.0);
    CHECK(series_coefficient(1, a) == doctest::Approx(a + 1));
    CHECK(series_coefficient(2, a) == doctest::Approx((a + 1) * (a + 2) / 2));
    const int k = 100000;
    const double ratio = series_coefficient(k, a) / std::pow(k, a);
    CHECK(ratio == doctest::Approx(1.0 / std::tgamma(a + 1)).epsilon(1e-4));
}

TEST_CASE("series form against the Gamma product")
{
    for (auto [a, th] : {std::pair{0.5, 0.2}, {0.3, 0.5}, {0.7, 0.1}})
        for (double l : {0.0, 1.0, 10.0}) {
            const cplx s = mellin_symbol_series(a, th, l, 10000);
            const cplx f = mellin_symbol(a, th, l);
            INFO("alpha " << a << " theta " << th << " lambda " << l);
            CHECK(std::abs(s - f) < 1e-6 * std::abs(f));
        }
    // Without acceleration the partial sums only creep towards the limit.
    const cplx raw = mellin_symbol_series(0.5, 0.2, 1.0, 10000, false);
    const cplx f = mellin_symbol(0.5, 0.2, 1.0);
    CHECK(std::abs(raw - f) < 1e-1 * std::abs(f));
}

TEST_CASE("sharp two-sided bound")
{
    const auto b = sharp_bound_check(0.5, 0.2, 1e4);
    CHECK(b.c_low > 0.0);
    CHECK(std::isfinite(b.c_high));
    CHECK(b.c_high >= b.c_low);
    CHECK(std::abs(b.ratio_1e4 / b.ratio_1e3 - 1.0) < 0.05);
    CHECK(b.argmin == 0.0);
    for (double th : {0.1, 0.2, 0.3}) {
        const auto c = sharp_bound_check(0.5, th, 1e3);
        CHECK(c.c_low > 0.0);
        CHECK(c.c_high > 0.0);
    }
    CHECK_THROWS_AS(sharp_bound_check(0.5, 0.2, 10.0), std::invalid_argument);
}

TEST_CASE("Mellin transform of exponentials")
{
    const auto lam = uniform_grid(-15.0, 15.0, 1201);
    for (double sigma : {0.5, 1.3}) {
        const auto s = mellin_transform([](double x) { return std::exp(-x); }, sigma, lam);
        // Trapezoidal sums carry an absolute error floor set by int |integrand| = Gamma(sigma).
        const double mass = boost::math::tgamma(sigma);
        double worst = 0.0;
        for (std::size_t i = 0; i < lam.size(); i += 40) {
            const cplx g = complex_gamma({sigma, lam[i]});
            worst = std::max(worst, std::abs(s.values[i] - g) / std::max(std::abs(g), mass));
        }
        CHECK(worst < 1e-10);
        // Parseval against the exact weighted L2 norm Gamma(2 sigma) / 4^sigma.
        const double l2 = boost::math::tgamma(2 * sigma) / std::pow(4.0, sigma);
        CHECK(mellin_parseval(s) == doctest::Approx(l2).epsilon(1e-6));
    }
    const double a = 0.7, sigma = 0.4;
    const auto s = mellin_transform([a](double x) { return std::pow(x, a) * std::exp(-x); }, sigma, lam);
    const double mass = boost::math::tgamma(sigma + a);
    for (std::size_t i = 0; i < lam.size(); i += 100) {
        const cplx g = complex_gamma({sigma + a, lam[i]});
        CHECK(std::abs(s.values[i] - g) < 1e-10 * std::max(std::abs(g), mass));
    }
}

TEST_CASE("dilation rule")
{
    const auto lam = uniform_grid(-8.0, 8.0, 161);
    const double sigma = 0.6, a = 2.5;
    auto f = [](double x) { return x * std::exp(-x * x); };
    const auto s = mellin_transform(f, sigma, lam);
    const auto d = mellin_transform([&](double x) { return f(a * x); }, sigma, lam);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const cplx pred = std::pow(cplx(a), -cplx(sigma, lam[i])) * s.values[i];
        CHECK(std::abs(d.values[i] - pred) < 1e-8 * std::abs(s.values[i]) + 1e-14);
    }
}

TEST_CASE("non-decaying integrand is rejected")
{
    const std::vector<double> lam = {0.0, 1.0};
    CHECK_THROWS_AS(mellin_transform([](double) { return 1.0; }, 0.5, lam), std::domain_error);
    CHECK_THROWS_AS(mellin_transform([](double x) { return std::exp(-x); }, -0.2, lam), std::domain_error);
}

TEST_CASE("symbol relation between the two Mellin transforms")
{
    for (auto [a, d] : {std::pair{0.4, 0.9}, {0.3, 0.7}}) {
        const auto r = verify_symbol_relation(gauss_dipole(), a, d);
        INFO("alpha " << a << " delta " << d << " deviation " << r.max_rel_deviation << " band " << r.band);
        CHECK(r.decay_ok);
        CHECK(r.resolved_points > 100);
        CHECK(r.max_rel_deviation < 1e-3);
    }
    OddProfile zero;
    zero.u = [](double) { return 0.0; };
    zero.du = [](double) { return 0.0; };
    zero.support_radius = 1.0;
    const auto z = verify_symbol_relation(zero, 0.4, 0.9);
    CHECK(z.trivial);
    CHECK(z.max_rel_deviation == 0.0);
    CHECK_THROWS_AS(verify_symbol_relation(gauss_dipole(), 0.4, 0.7), std::domain_error);
}

TEST_CASE("symbol against the power-law Laplacian constant")
{
    // d/dx |x|^{i l - th} = (i l - th) |x|^{-(1 + th - i l)} sgn x, then Lambda^alpha of that
    // odd power law; the two routes must agree with 2^{alpha+1} F.
    for (auto [a, th] : {std::pair{0.5, 0.2}, {0.3, 0.4}})
        for (double l : {0.0, 1.0, 5.0}) {
            const cplx via = cplx(th, -l) * laplacian_kernel_constant(a) *
                             laplacian_scaling_integral(a, cplx(1.0 + th, -l));
            const cplx f = std::pow(2.0, a + 1.0) * mellin_symbol(a, th, l);
            INFO("alpha " << a << " theta " << th << " lambda " << l);
            CHECK(std::abs(via - f) < 1e-3 * std::abs(f));
        }
}

#include "doctest.h"

#include "nlt/fractional.hpp"
#include "nlt/solver.hpp"

#include <cmath>
#include <numbers>

using namespace nlt;

namespace {

SimConfig base(double alpha, double beta, double nu, double amp, int n, double length, double t_end)
{
    SimConfig c;
    c.alpha = alpha;
    c.beta = beta;
    c.nu = nu;
    c.initial.amplitude = amp;
    c.n = n;
    c.length = length;
    c.t_end = t_end;
    return c;
}

double l2_diff(const Field& a, const Field& b)
{
    double s = 0.0;
    for (int j = 0; j < a.grid().size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s * a.grid().spacing());
}

// Max principle with a per-sample allowance, L1 monotonicity and sign on x >= 0.
void check_monotone(const RunResult& r)
{
    const auto& R = r.record;
    for (std::size_t i = 1; i < R.size(); ++i) {
        CHECK(R.sup_norm[i] <= R.sup_norm[i - 1] + 1e-8 * r.u0_sup);
        CHECK(R.l1_norm[i] <= R.l1_norm[i - 1] * (1.0 + 1e-10));
        if (i >= 100) CHECK(R.sup_norm[i] <= R.sup_norm[i - 100]);
    }
    for (double m : R.min_right) CHECK(m >= -1e-8);
    for (double p : R.parity_error) CHECK(p <= 1e-10 * r.u0_sup);
}

}  // namespace

TEST_CASE("initial data families")
{
    const Grid g(512, 20.0);
    InitialDataSpec s;
    s.amplitude = 2.0;
    s.width = 1.5;
    const Field u = s.sample(g);
    CHECK(u.is_odd());
    CHECK(u.parity_error() == 0.0);
    const int j = 300;
    CHECK(u[j] == doctest::Approx(2.0 * g.x(j) * std::exp(-std::pow(g.x(j) / 1.5, 2))).epsilon(1e-14));
    s.family = InitialFamily::odd_bump;
    const Field b = s.sample(g);
    for (int i = 0; i < g.size(); ++i) {
        if (std::abs(g.x(i)) >= 1.5) CHECK(b[i] == 0.0);
        if (g.x(i) >= 0) CHECK(b[i] >= 0.0);
    }
    s.family = InitialFamily::custom_samples;
    CHECK_THROWS_AS(s.sample(g), std::invalid_argument);
    for (int i = 0; i < g.size(); ++i) s.samples.push_back(g.x(i) + 1.0);
    const Field c = s.sample(g);  // antisymmetrized, so the constant drops out
    CHECK(c[0] == 0.0);           // x = -L/2 is its own mirror
    CHECK(c[17] == doctest::Approx(g.x(17)).epsilon(1e-14));
    CHECK(initial_family_from_string("odd_bump") == InitialFamily::odd_bump);
    CHECK_THROWS_AS(initial_family_from_string("square"), std::invalid_argument);
}

TEST_CASE("config validation names the field")
{
    SimConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.supercritical() == false);
    c.beta = 0.1;
    CHECK(c.supercritical());
    CHECK(c.resolved_weight_delta() == doctest::Approx(0.4 + 0.9));
    c.alpha = 1.2;
    try {
        c.validate();
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
    c = SimConfig{};
    c.n = 15;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SimConfig{};
    c.modulus_monitor = true;
    c.beta = 0.3;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SimConfig{};
    c.weight_delta = 0.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("zero data stays zero")
{
    SimConfig c = base(0.4, 0.5, 1.0, 0.0, 256, 40.0, 1.0);
    const Solver s(c);
    StepState st = s.initial_state();
    CHECK(s.adapt_dt(st, 0.0) == c.dt_max);
    const auto r = run(c);
    CHECK(r.verdict == Verdict::completed);
    CHECK(r.final_field.sup_norm() == 0.0);
    CHECK(r.record.weighted_a.back() == 0.0);
    CHECK(r.final_time == doctest::Approx(1.0));
}

TEST_CASE("linear flow is exact")
{
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
        SimConfig c = base(0.4, beta, 0.7, 1.0, 256, 2 * std::numbers::pi, 1.0);
        c.drift_enabled = false;
        c.initial.family = InitialFamily::custom_samples;
        const Grid g = c.grid();
        for (int j = 0; j < g.size(); ++j) c.initial.samples.push_back(std::sin(5 * g.x(j)));
        const Solver s(c);
        StepState st = s.initial_state();
        st.dt = 0.137;
        for (int i = 0; i < 5; ++i) s.step(st);
        const double factor = std::exp(-0.7 * std::pow(5.0, beta) * 0.137 * 5);
        double err = 0.0;
        for (int j = 0; j < g.size(); ++j) err = std::max(err, std::abs(st.field[j] - factor * std::sin(5 * g.x(j))));
        INFO("beta " << beta);
        CHECK(err < 1e-12);
    }
}

TEST_CASE("fourth-order self-convergence")
{
    auto final_field = [](double dt) {
        SimConfig c = base(0.4, 1.0, 0.5, 2.0, 512, 20.0, 1.0);
        c.fixed_dt = dt;
        c.confirm_blowup = false;
        return run(c).final_field;
    };
    const Field a = final_field(0.1), b = final_field(0.05), d = final_field(0.025);
    const double ratio = l2_diff(a, b) / l2_diff(b, d);
    MESSAGE("self-convergence ratio " << ratio);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("time step rule")
{
    SimConfig c = base(0.4, 0.1, 1.0, 20.0, 1024, 80.0, 1.0);
    c.dt_max = 1e9;
    const Solver s1(c);
    const StepState a = s1.initial_state();
    c.initial.amplitude = 40.0;
    const Solver s2(c);
    const StepState b = s2.initial_state();
    // Both limits scale like 1 / amplitude.
    CHECK(s2.adapt_dt(b, 0.0) / s1.adapt_dt(a, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    // Rate limiter.
    CHECK(s1.adapt_dt(a, 1e-6) == 2e-6);
    // Free-function wrapper agrees.
    CHECK(adapt_dt(a, base(0.4, 0.1, 1.0, 20.0, 1024, 80.0, 1.0), 0.0) <= 0.05);
    c.fixed_dt = 0.003;
    CHECK(Solver(c).adapt_dt(b, 0.0) == 0.003);
}

TEST_CASE("blowup time estimator")
{
    std::vector<double> t, g;
    for (int i = 0; i < 50; ++i) {
        t.push_back(0.01 * i);
        g.push_back(3.0 / (0.8 - t.back()));
    }
    const auto est = estimate_blowup_time(t, g, 10.0);
    REQUIRE(est);
    CHECK(*est == doctest::Approx(0.8).epsilon(1e-10));
    CHECK_FALSE(estimate_blowup_time({0.0, 1.0}, {1.0, 1.0}, 1.0));
    std::vector<double> flat(50, 20.0);
    CHECK_FALSE(estimate_blowup_time(t, flat, 100.0));
}

TEST_CASE("inviscid Burgers control blows up at 1/A")
{
    // alpha = 0 turns the drift into u u_x; along x = 0 the slope obeys s' = s^2, so s = A / (1 - A t).
    for (double amp : {1.0, 2.0}) {
        SimConfig c = base(0.0, 0.0, 0.0, amp, 4096, 40.0, 2.0);
        c.blowup_gradient_threshold = 10.0 * amp;
        const auto r = run(c);
        INFO("A " << amp << " reason " << r.reason);
        CHECK(r.verdict == Verdict::blowup_detected);
        REQUIRE(r.blowup_time);
        CHECK(*r.blowup_time == doctest::Approx(1.0 / amp).epsilon(2e-3));
        REQUIRE(r.confirm_blowup_time);
        CHECK(*r.confirm_blowup_time == doctest::Approx(1.0 / amp).epsilon(2e-3));
    }
}

TEST_CASE("subcritical run completes with a bounded gradient")
{
    SimConfig c = base(0.4, 1.0, 1.0, 5.0, 4096, 160.0, 10.0);
    c.modulus_monitor = true;
    const auto r = run(c);
    CHECK(r.verdict == Verdict::completed);
    CHECK(r.final_time == doctest::Approx(10.0));
    const auto& R = r.record;
    CHECK(R.gradient_sup.back() < R.gradient_sup.front());
    for (double m : R.modulus_ratio) CHECK(m < 1.0);
    CHECK(R.modulus_ratio.front() == doctest::Approx(0.5).epsilon(1e-6));
    for (double a : R.weighted_a) CHECK(std::isfinite(a));
    CHECK_NOTHROW(R.check_consistent());
    check_monotone(r);

    // The continuation integral is a converged quantity: doubling n moves it by under 2%.
    c.n = 8192;
    c.modulus_monitor = false;
    const auto fine = run(c);
    const double coarse_int = continuation_criterion_integral(R).main;
    const double fine_int = continuation_criterion_integral(fine.record).main;
    CHECK(std::isfinite(coarse_int));
    CHECK(std::abs(fine_int / coarse_int - 1.0) < 0.02);
}

TEST_CASE("supercritical runs blow up earlier for larger data")
{
    double prev = INFINITY;
    for (double amp : {5.0, 7.0, 10.0}) {
        SimConfig c = base(0.4, 0.1, 1.0, amp, 4096, 80.0, 10.0);
        c.blowup_gradient_threshold = 2.6 * amp;
        const auto r = run(c);
        INFO("A " << amp << " reason " << r.reason);
        REQUIRE(r.verdict == Verdict::blowup_detected);
        REQUIRE(r.blowup_time);
        REQUIRE(r.confirm_blowup_time);
        CHECK(std::abs(*r.confirm_blowup_time / *r.blowup_time - 1.0) < 0.05);
        CHECK(*r.blowup_time < prev);
        prev = *r.blowup_time;
        const auto q = riccati_check(r.record, r.u0_l1);
        CHECK(q.certified);
        check_monotone(r);
    }
}

TEST_CASE("under-resolved and boxed-in runs get their own verdicts")
{
    SimConfig c = base(0.4, 0.1, 1.0, 5.0, 256, 80.0, 10.0);
    const auto r = run(c);
    CHECK(r.verdict == Verdict::resolution_lost);

    SimConfig w = base(0.4, 1.0, 1.0, 1.0, 256, 40.0, 1.0);
    w.initial.width = 8.0;
    CHECK(run(w).verdict == Verdict::boundary_contaminated);
}

TEST_CASE("snapshots follow the output stride")
{
    SimConfig c = base(0.4, 1.0, 1.0, 1.0, 256, 40.0, 0.5);
    c.fixed_dt = 0.05;
    c.output_stride = 2;
    std::vector<double> times;
    const auto r = run(c, {[&](const Snapshot& s) {
                       times.push_back(s.time);
                       CHECK(s.drift.is_odd());
                   }});
    REQUIRE(times.size() == 6);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == doctest::Approx(0.5));
    CHECK(r.steps == 10);
}

TEST_CASE("energy and Lp growth for beta = 2 stay under the Gronwall exponential")
{
    // d/dt |u_x|^2 + 2 nu |u_xx|^2 = int v_x u_x^2 and d/dt |u|_p^p = -int v_x |u|^p, so
    // C = sup |v_x| bounds both growth rates.
    SimConfig c = base(0.4, 2.0, 0.5, 3.0, 1024, 40.0, 2.0);
    const auto r = run(c);
    REQUIRE(r.verdict == Verdict::completed);
    const auto& R = r.record;
    double C = 0.0;
    for (double v : R.drift_criterion_integrand) C = std::max(C, v);
    double dissipated = 0.0;
    for (std::size_t i = 0; i < R.size(); ++i) {
        if (i) dissipated += (R.times[i] - R.times[i - 1]) * 0.5 * (R.hess_l2_sq[i] + R.hess_l2_sq[i - 1]);
        const double lhs = R.grad_l2_sq[i] + 2 * c.nu * dissipated;
        CHECK(lhs <= R.grad_l2_sq[0] * std::exp(C * R.times[i]) * (1 + 1e-6));
        CHECK(R.lp_norm[i] <= R.lp_norm[0] * std::exp(C * R.times[i] / c.lp_exponent) * (1 + 1e-10));
    }
    check_monotone(r);
}

TEST_CASE("fundamental solution of the linear flow")
{
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto k = linear_kernel_check(beta, 1.0, 1.0);
        INFO("beta " << beta << " min " << k.min_over_max << " mono " << k.monotone_violation << " mass "
                     << k.integral_error);
        CHECK(k.nonnegative);
        CHECK(k.symmetric);
        CHECK(k.monotone);
        CHECK(k.unit_mass);
        if (beta != 0.5) {
            REQUIRE(k.closed_form_error);
            CHECK(*k.closed_form_error < 1e-6);
        }
        CHECK(k.ok);
    }
    CHECK_THROWS_AS(linear_kernel_check(0.0, 1.0, 1.0), std::invalid_argument);
}

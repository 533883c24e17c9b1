#include "nlt/io/validate.hpp"

#include "nlt/closed_forms.hpp"
#include "nlt/diagnostics.hpp"
#include "nlt/fractional.hpp"
#include "nlt/io/format.hpp"
#include "nlt/mellin.hpp"
#include "nlt/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlt::io {

using nlohmann::json;

ValidationLevel validation_level_from_string(std::string_view s)
{
    if (s == "fast") return ValidationLevel::fast;
    if (s == "full") return ValidationLevel::full;
    throw std::invalid_argument("level must be fast or full, got '" + std::string(s) + "'");
}

const char* to_string(ValidationLevel l) { return l == ValidationLevel::fast ? "fast" : "full"; }

bool ValidationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    double value;
    double tolerance;
    bool passed;
    std::string detail;
};

// value <= tol
Outcome at_most(double value, double tol, std::string detail = {})
{
    return {value, tol, std::isfinite(value) && value <= tol, std::move(detail)};
}

std::string fmt(double v) { return format_number(v); }

// ---------------------------------------------------------------- operators

Outcome operator_eigenvalues(bool)
{
    const Grid g(64, 10.0);
    double worst = 0.0;
    for (double s : {-0.7, -0.3, 0.5, 1.0, 1.5, 2.0})
        for (int m : {1, 3, 17}) {
            const double k = 2.0 * pi * m / g.length();
            for (int phase = 0; phase < 2; ++phase) {
                const Field f = Field::sample(g, [&](double x) { return phase ? std::sin(k * x) : std::cos(k * x); });
                const Field r = frac_laplacian(f, s);
                const double ev = std::pow(k, s);
                for (int j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(r[j] - ev * f[j]) / ev);
            }
        }
    return at_most(worst, 1e-12, "max relative deviation from |k|^s over 6 exponents and 3 modes");
}

LineFunction truncated_power_law(double delta, double R)
{
    LineFunction g;
    g.f = [delta, R](double y) { return std::pow(y, -delta) * lp_bump(y / R); };
    g.support_radius = 2.0 * R;
    g.origin_exponent = delta;
    return g;
}

std::vector<double> interior_points()
{
    std::vector<double> xs;
    for (int i = 0; i <= 12; ++i) xs.push_back(0.5 + 1.5 * i / 12);
    return xs;
}

Outcome riesz_power_law(bool full)
{
    std::vector<std::pair<double, double>> pairs = {{0.4, 1.2}};
    if (full) pairs = {{0.3, 0.8}, {0.5, 1.0}, {0.4, 1.2}, {0.6, 1.5}};
    const auto xs = interior_points();
    double worst = 0.0;
    for (auto [a, d] : pairs) {
        const double c = riesz_power_constant(a, d).value;
        const auto v = riesz_potential_odd(truncated_power_law(d, 1e4), xs, a, HalflineOptions{0.25, 0.5, 20});
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(v[i] / (c * std::pow(xs[i], a - d)) - 1.0));
    }
    return at_most(worst, 1e-3, std::to_string(pairs.size()) + " (alpha, delta) pairs, x in [0.5, 2]");
}

Outcome laplacian_power_law(bool full)
{
    std::vector<std::pair<double, double>> pairs = {{0.5, 0.8}};
    if (full) pairs = {{0.3, 0.5}, {0.5, 0.8}, {0.7, 1.2}, {0.4, 1.5}};
    const auto xs = interior_points();
    double worst = 0.0;
    for (auto [b, d] : pairs) {
        const double c = laplacian_power_constant(b, d).value;
        const auto v = frac_laplacian_odd_halfline(truncated_power_law(d, 1e4), xs, b, HalflineOptions{0.25, 0.5, 20});
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(v[i] / (c * std::pow(xs[i], -d - b)) - 1.0));
    }
    return at_most(worst, 1e-3, std::to_string(pairs.size()) + " (beta, delta) pairs, x in [0.5, 2]");
}

// x^-d on [1, 20], switched on over [0.5, 1] and off over [20, 40].
double cut_power(double x, double d)
{
    if (x <= 0.5 || x >= 40.0) return 0.0;
    return std::pow(x, -d) * (1.0 - lp_bump(2.0 * x)) * lp_bump(x / 20.0);
}

Outcome spectral_vs_realspace(bool full)
{
    const double L = full ? 800.0 : 400.0;
    const Grid g(full ? 65536 : 32768, L);
    double worst = 0.0;
    for (auto [a, d] : {std::pair{0.4, 0.9}, {0.6, 1.5}}) {
        const Field f = Field::sample(g, [d](double x) { return x >= 0 ? cut_power(x, d) : -cut_power(-x, d); }, true);
        LineFunction h;
        h.f = [d](double y) { return cut_power(y, d); };
        h.support_radius = 40.0;
        std::vector<int> idx;
        std::vector<double> px;
        for (double p : {1.0, 2.0, 5.0, 10.0}) {
            idx.push_back(int(std::lround((p + 0.5 * L) / g.spacing())));
            px.push_back(g.x(idx.back()));
        }
        const Field sr = frac_laplacian(f, -a), sl = frac_laplacian(f, a);
        const auto rr = riesz_potential_odd(h, px, a);
        const auto rl = frac_laplacian_odd_halfline(h, px, a);
        for (std::size_t i = 0; i < px.size(); ++i) {
            worst = std::max(worst, std::abs(sr[idx[i]] / rr[i] - 1.0));
            worst = std::max(worst, std::abs(sl[idx[i]] / rl[i] - 1.0));
        }
    }
    return at_most(worst, 1e-3, "spectral Lambda^{-alpha} and Lambda^alpha against the singular integrals, L = " + fmt(L));
}

Outcome constant_composition(bool)
{
    double worst = 0.0;
    for (auto [a, d] : {std::pair{0.3, 0.8}, {0.5, 1.0}, {0.4, 1.2}, {0.6, 1.5}})
        worst = std::max(worst, std::abs(riesz_power_constant(a, d).value * laplacian_power_constant(a, d - a).value - 1.0));
    return at_most(worst, 1e-8, "|C_{alpha,delta} C^Lambda_{alpha,delta-alpha} - 1|");
}

Outcome truncated_bound(bool full)
{
    std::vector<std::pair<double, double>> pairs = {{0.3, 0.5}};
    if (full) pairs = {{0.3, 0.5}, {0.3, 0.9}, {0.5, 0.7}};
    double worst = 0.0;
    bool ok = true;
    std::string detail;
    for (auto [a, a1] : pairs) {
        const auto b = truncated_riesz_bound(a, a1);
        ok = ok && std::isfinite(b.sup) && b.stabilized && !b.edge_growth;
        worst = std::max(worst, b.sup);
        detail += "alpha " + fmt(a) + " alpha1 " + fmt(a1) + " sup " + fmt(b.sup) + "; ";
    }
    return {worst, INFINITY, ok, detail + "finite, attained inside the window"};
}

Outcome fourier_identity(bool)
{
    double worst = 0.0;
    for (auto [z, xi] : {std::pair{cplx(0.4), 2.0}, {cplx(0.25, 0.5), 1.0}, {cplx(0.7, -1.0), 3.5}}) {
        const cplx rhs = fourier_power_law(z, xi);
        worst = std::max(worst, std::abs(fourier_power_law_quadrature(z, xi) - rhs) / std::abs(rhs));
    }
    return at_most(worst, 1e-4, "oscillatory quadrature against the Gamma product, 3 (z, xi) pairs");
}

// ---------------------------------------------------------------- Mellin symbol

std::vector<std::pair<double, double>> symbol_pairs(bool full)
{
    std::vector<std::pair<double, double>> out;
    const std::vector<double> alphas = full ? std::vector<double>{0.2, 0.5, 0.8} : std::vector<double>{0.5};
    for (double a : alphas)
        for (double f : {0.2, 0.5, 0.8}) out.emplace_back(a, f * (1.0 - a));
    return out;
}

Outcome symbol_positivity(bool full)
{
    double worst = INFINITY;
    double asym = 0.0;
    for (auto [a, th] : symbol_pairs(full)) {
        const double f0 = mellin_symbol(a, th, 0.0).real();
        const auto b = sharp_bound_check(a, th, 1e4);
        if (!(f0 > 0.0)) return {f0, 0.0, false, "Re F(0) not positive at alpha " + fmt(a)};
        worst = std::min(worst, b.min_re / f0 - 1.0);
        for (double l : {0.3, 7.0, 900.0})
            asym = std::max(asym, std::abs(mellin_symbol(a, th, -l) - std::conj(mellin_symbol(a, th, l))) /
                                      std::abs(mellin_symbol(a, th, l)));
    }
    const bool ok = worst >= -1e-12 && asym < 1e-12;
    return {worst, -1e-12, ok,
            "min over lambda in [-1e4, 1e4] of Re F / Re F(0) - 1; conjugate symmetry deviation " + fmt(asym)};
}

Outcome symbol_sharp_bound(bool full)
{
    double worst = 0.0;
    bool ok = true;
    for (auto [a, th] : symbol_pairs(full)) {
        const auto b = sharp_bound_check(a, th, 1e4);
        ok = ok && b.c_low > 0.0 && std::isfinite(b.c_high);
        worst = std::max(worst, std::abs(b.ratio_1e4 / b.ratio_1e3 - 1.0));
    }
    return {worst, 0.05, ok && worst < 0.05,
            "Re F / (1 + |lambda|^alpha) in a positive interval; value is the drift of Re F / lambda^alpha from 1e3 to 1e4"};
}

Outcome symbol_series(bool full)
{
    double worst = 0.0;
    std::vector<std::pair<double, double>> pairs = {{0.5, 0.2}};
    if (full) pairs = {{0.5, 0.2}, {0.3, 0.5}, {0.7, 0.1}};
    for (auto [a, th] : pairs)
        for (double l : {0.0, 1.0, 10.0}) {
            const cplx f = mellin_symbol(a, th, l);
            worst = std::max(worst, std::abs(mellin_symbol_series(a, th, l, 10000) - f) / std::abs(f));
        }
    return at_most(worst, 1e-6, "accelerated binomial series against the Gamma form");
}

Outcome symbol_real_axis(bool)
{
    double worst = 0.0;
    for (auto [a, th] : {std::pair{0.5, 0.2}, {0.3, 0.4}, {0.8, 0.1}}) {
        const double ref = std::tgamma(0.5 * (1 - th)) / std::tgamma(0.5 * th) * std::tgamma(1 + 0.5 * (th + a)) /
                           std::tgamma(0.5 * (1 - th - a));
        worst = std::max(worst, std::abs(mellin_symbol(a, th, 0.0) - ref) / std::abs(ref));
    }
    return at_most(worst, 1e-12, "F at lambda = 0 against real Gamma values");
}

Outcome symbol_power_law(bool)
{
    double worst = 0.0;
    for (auto [a, th] : {std::pair{0.5, 0.2}, {0.3, 0.4}})
        for (double l : {0.0, 1.0, 5.0}) {
            const cplx via = cplx(th, -l) * laplacian_kernel_constant(a) * laplacian_scaling_integral(a, cplx(1.0 + th, -l));
            const cplx f = std::pow(2.0, a + 1.0) * mellin_symbol(a, th, l);
            worst = std::max(worst, std::abs(via - f) / std::abs(f));
        }
    return at_most(worst, 1e-3, "d/dx Lambda^alpha on |x|^{i lambda - theta} against 2^{alpha+1} F");
}

OddProfile gauss_dipole()
{
    OddProfile p;
    p.u = [](double x) { return x * std::exp(-x * x); };
    p.du = [](double x) { return (1.0 - 2.0 * x * x) * std::exp(-x * x); };
    p.support_radius = 6.5;
    return p;
}

Outcome symbol_relation(bool full)
{
    double worst = 0.0;
    int members = full ? 5 : 1;
    bool ok = true;
    for (auto [a, d] : {std::pair{0.4, 0.9}, {0.3, 0.7}}) {
        for (int s = 0; s < members; ++s) {
            const auto r = verify_symbol_relation(s == 0 ? gauss_dipole() : random_odd_profile(s), a, d);
            ok = ok && r.decay_ok && r.resolved_points > 100;
            worst = std::max(worst, r.max_rel_deviation);
        }
    }
    return {worst, 1e-3, ok && worst < 1e-3, "Mellin transform of u_x against 2^{alpha+1} F times that of Lambda^{-alpha}u"};
}

Outcome mellin_parseval_check(bool)
{
    const auto lam = uniform_grid(-15.0, 15.0, 1201);
    double worst = 0.0;
    for (double sigma : {0.5, 1.3}) {
        const auto s = mellin_transform([](double x) { return std::exp(-x); }, sigma, lam);
        const double l2 = std::tgamma(2 * sigma) / std::pow(4.0, sigma);
        worst = std::max(worst, std::abs(mellin_parseval(s) / l2 - 1.0));
    }
    return at_most(worst, 1e-6, "Parseval for e^{-x} on two vertical lines");
}

// ---------------------------------------------------------------- inequalities

Outcome weighted_inequality(bool full)
{
    std::vector<std::pair<double, double>> pairs = {{0.4, 0.9}};
    if (full) pairs = {{0.3, 0.7}, {0.4, 0.9}, {0.45, 1.0}};
    const int members = full ? 200 : 10;
    double min_ratio = INFINITY, max_gap = 0.0;
    for (auto [a, d] : pairs)
        for (int s = 1; s <= members; ++s) {
            const auto w = weighted_inequality_check(random_odd_profile(s), a, d);
            if (w.indeterminate) return {0.0, 0.0, false, "indeterminate member seed " + std::to_string(s)};
            min_ratio = std::min(min_ratio, w.ratio);
            max_gap = std::max(max_gap, w.route_gap);
        }
    return {min_ratio, 0.0, min_ratio > 0.0 && max_gap < 1e-2,
            std::to_string(members) + " profiles x " + std::to_string(pairs.size()) +
                " pairs; value is the smallest lhs/rhs ratio; largest route gap " + fmt(max_gap)};
}

Outcome positivity(bool full)
{
    const Grid g(1024, 30.0);
    const int fields = full ? 50 : 10;
    double worst = INFINITY;
    for (int s = 1; s <= fields; ++s) {
        const Field th = random_smooth_field(g, s, 40);
        for (double beta : {0.5, 1.0, 1.5, 2.0})
            for (double p : {2.0, 3.0, 4.0}) worst = std::min(worst, positivity_pairing(th, p, beta));
    }
    return {worst, -1e-9, worst >= -1e-9,
            std::to_string(fields) + " random fields, p in {2,3,4}, beta in {0.5,1,1.5,2}; normalized pairing"};
}

Outcome linear_kernels(bool)
{
    double worst = 0.0;
    bool ok = true;
    for (double b : {0.5, 1.0, 2.0}) {
        const auto k = linear_kernel_check(b, 1.0, 1.0);
        ok = ok && k.ok;
        if (k.closed_form_error) worst = std::max(worst, *k.closed_form_error);
    }
    return {worst, 1e-6, ok && worst <= 1e-6,
            "nonnegative, symmetric, radially decreasing, unit mass; value is the closed-form deviation"};
}

Outcome modulus_containment(bool full)
{
    const Grid g(1024, 80.0);
    const int seeds = full ? 20 : 3;
    double worst = 0.0;
    for (auto [kase, a, b] : {std::tuple{ModulusCase::subcritical, 0.4, 1.0}, {ModulusCase::critical, 0.4, 0.6},
                              {ModulusCase::subcritical, 0.7, 0.5}}) {
        const auto spec = build_modulus(kase, a, b, 0.1);
        for (int s = 1; s <= seeds; ++s) {
            const OddProfile p = random_odd_profile(s);
            const Field f = Field::sample(g, [&](double x) { return x >= 0 ? p.u(x) : -p.u(-x); }, true);
            worst = std::max(worst, riesz_modulus_containment(f, spec).worst_ratio);
        }
    }
    return at_most(worst, 1.05, "modulus of Lambda^{-alpha}u over the explicit bound");
}

Outcome dissipation(bool full)
{
    const Grid g(2048, 80.0);
    const int seeds = full ? 20 : 3;
    double worst = -INFINITY;
    for (auto [kase, a, b] : {std::tuple{ModulusCase::subcritical, 0.4, 1.0}, {ModulusCase::critical, 0.4, 0.6},
                              {ModulusCase::subcritical, 0.3, 1.5}}) {
        const auto spec = build_modulus(kase, a, b, 0.1);
        for (int s = 1; s <= seeds; ++s) {
            const OddProfile p = random_odd_profile(s);
            const Field f = Field::sample(g, [&](double x) { return x >= 0 ? p.u(x) : -p.u(-x); }, true);
            const auto d = dissipation_bound_check(f, spec, b);
            worst = std::max(worst, (d.lhs - d.rhs) / std::abs(d.rhs));
        }
    }
    return at_most(worst, 0.05, "(lhs - rhs) / |rhs| at the touching pair");
}

// ---------------------------------------------------------------- solver

SimConfig sim(double alpha, double beta, double nu, double amp, int n, double length, double t_end)
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

Outcome solver_order(bool)
{
    auto final_field = [](double dt) {
        SimConfig c = sim(0.4, 1.0, 0.5, 2.0, 512, 20.0, 1.0);
        c.fixed_dt = dt;
        c.confirm_blowup = false;
        return run(c).final_field;
    };
    const Field a = final_field(0.1), b = final_field(0.05), d = final_field(0.025);
    double e1 = 0.0, e2 = 0.0;
    for (int j = 0; j < a.grid().size(); ++j) {
        e1 += (a[j] - b[j]) * (a[j] - b[j]);
        e2 += (b[j] - d[j]) * (b[j] - d[j]);
    }
    const double ratio = std::sqrt(e1 / e2);
    return {ratio, 16.0, ratio >= 12.0 && ratio <= 20.0, "Richardson ratio at dt 0.1, 0.05, 0.025; accepted in [12, 20]"};
}

Outcome burgers_control(bool)
{
    SimConfig c = sim(0.0, 0.0, 0.0, 1.0, 4096, 40.0, 2.0);
    c.blowup_gradient_threshold = 10.0;
    const auto r = run(c);
    if (r.verdict != Verdict::blowup_detected || !r.blowup_time)
        return {0.0, 2e-3, false, std::string("verdict ") + to_string(r.verdict) + ": " + r.reason};
    return at_most(std::abs(*r.blowup_time - 1.0), 2e-3, "alpha = 0, nu = 0: blowup at 1 / max u0' = 1");
}

Outcome dichotomy(bool)
{
    SimConfig sub = sim(0.4, 1.0, 1.0, 5.0, 4096, 160.0, 10.0);
    sub.modulus_monitor = true;
    const auto a = run(sub);
    double max_ratio = 0.0;
    for (double m : a.record.modulus_ratio) max_ratio = std::max(max_ratio, m);
    const bool sub_ok = a.verdict == Verdict::completed && max_ratio < 1.0 &&
                        a.record.gradient_sup.back() <= a.record.gradient_sup.front();

    SimConfig sup = sim(0.4, 0.1, 1.0, 5.0, 4096, 80.0, 10.0);
    sup.blowup_gradient_threshold = 2.6 * 5.0;
    const auto b = run(sup);
    double shift = INFINITY;
    if (b.blowup_time && b.confirm_blowup_time) shift = std::abs(*b.confirm_blowup_time / *b.blowup_time - 1.0);
    const bool sup_ok = b.verdict == Verdict::blowup_detected && shift < 0.05;
    bool certified = false;
    if (sup_ok) certified = riccati_check(b.record, b.u0_l1).certified;
    std::ostringstream os;
    os << "beta = 1: " << to_string(a.verdict) << ", max modulus ratio " << fmt(max_ratio) << "; beta = 0.1: "
       << to_string(b.verdict) << ", blowup time shift under doubling " << fmt(shift) << ", Riccati fit "
       << (certified ? "certified" : "not certified");
    return {shift, 0.05, sub_ok && sup_ok && certified, os.str()};
}

struct Check {
    const char* name;
    const char* statement;
    Outcome (*fn)(bool full);
    bool full_only;
};

const Check checks[] = {
    {"operator_eigenvalues", "Lambda^s acts on single Fourier modes as |k|^s", operator_eigenvalues, false},
    {"riesz_power_law", "Lambda^{-alpha} maps |x|^-delta sgn x to C_{alpha,delta} |x|^{alpha-delta} sgn x",
     riesz_power_law, false},
    {"laplacian_power_law", "Lambda^beta maps |x|^-delta sgn x to C |x|^{-delta-beta} sgn x", laplacian_power_law,
     false},
    {"spectral_vs_realspace", "spectral multipliers agree with the singular-integral forms", spectral_vs_realspace,
     false},
    {"constant_composition", "Lambda^alpha undoes Lambda^{-alpha} on power laws", constant_composition, false},
    {"truncated_riesz_bound", "Lambda^{-alpha} of a truncated power law is bounded", truncated_bound, false},
    {"fourier_power_law", "Fourier transform of |x|^-z as a Gamma product", fourier_identity, false},
    {"symbol_positivity", "Re F(lambda) >= Re F(0) > 0 and F(-lambda) = conj F(lambda)", symbol_positivity, false},
    {"symbol_sharp_bound", "Re F(lambda) is comparable to 1 + |lambda|^alpha", symbol_sharp_bound, false},
    {"symbol_series", "binomial series form of F matches the Gamma form", symbol_series, false},
    {"symbol_real_axis", "F(0) matches a product of real Gamma values", symbol_real_axis, false},
    {"symbol_power_law", "F is the multiplier of d/dx Lambda^alpha on complex power laws", symbol_power_law, false},
    {"symbol_relation", "Mellin transforms of u_x and Lambda^{-alpha}u differ by 2^{alpha+1} F", symbol_relation,
     false},
    {"mellin_parseval", "Mellin-Parseval identity", mellin_parseval_check, false},
    {"weighted_inequality", "int Lambda^{-alpha}u u_x x^{alpha-delta} controls int (Lambda^{-alpha}u)^2 x^{-1-delta}",
     weighted_inequality, false},
    {"pairing_positivity", "int |th|^{p-2} th Lambda^beta th >= 0", positivity, false},
    {"linear_kernel", "exp(-nu t Lambda^beta) has a nonnegative radially decreasing unit-mass kernel",
     linear_kernels, false},
    {"modulus_containment", "Lambda^{-alpha}u inherits the explicit modulus bound", modulus_containment, false},
    {"dissipation_bound", "dissipation at the touching pair is bounded by the omega integrals", dissipation, false},
    {"solver_order", "integrating-factor RK4 converges at fourth order", solver_order, false},
    {"burgers_control", "inviscid Burgers limit blows up at 1 / max u0'", burgers_control, true},
    {"dichotomy", "subcritical run stays regular, supercritical run blows up with a Riccati certificate", dichotomy,
     true},
};

}  // namespace

ValidationReport run_validation(ValidationLevel level, const std::function<void(const CheckResult&)>& progress)
{
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const bool full = level == ValidationLevel::full;
    ValidationReport rep;
    rep.level = level;
    for (const auto& c : checks) {
        if (c.full_only && !full) continue;
        CheckResult r;
        r.name = c.name;
        r.statement = c.statement;
        const auto s0 = clock::now();
        try {
            const Outcome o = c.fn(full);
            r.passed = o.passed;
            r.value = o.value;
            r.tolerance = o.tolerance;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.value = std::nan("");
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(clock::now() - s0).count();
        if (progress) progress(r);
        rep.checks.push_back(std::move(r));
    }
    rep.wall_time = std::chrono::duration<double>(clock::now() - t0).count();
    return rep;
}

json to_json(const ValidationReport& r)
{
    json j;
    j["tool_version"] = tool_version;
    j["level"] = to_string(r.level);
    j["passed"] = r.all_passed();
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); };
        j["checks"].push_back({{"name", c.name},
                               {"statement", c.statement},
                               {"passed", c.passed},
                               {"value", num(c.value)},
                               {"tolerance", num(c.tolerance)},
                               {"detail", c.detail},
                               {"seconds", c.seconds}});
    }
    j["wall_time"] = r.wall_time;
    return j;
}

}  // namespace nlt::io

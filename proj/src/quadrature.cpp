#include "nlt/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlt::quad {

namespace {

Rule build_gauss_jacobi(int n, double a, double b)
{
    // Three-term recurrence of the monic Jacobi polynomials.
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        if (k == 0)
            diag[k] = (b - a) / (a + b + 2.0);
        else
            diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        double beta;
        if (k == 1)
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
        else
            beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        sub[k - 1] = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigen solver failed");

    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

const Rule& gauss_jacobi(int n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    static std::mutex m;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<Rule>> cache;
    std::lock_guard lock(m);
    auto& slot = cache[{n, a, b}];
    if (!slot) slot = std::make_unique<Rule>(build_gauss_jacobi(n, a, b));
    return *slot;
}

std::vector<double> graded_panels(double lo, double hi, double first, double ratio, double max_width)
{
    std::vector<double> b{lo};
    double w = std::min(first, max_width);
    double x = lo;
    // The last panel absorbs any remainder shorter than a quarter width.
    while (hi - x > 1.25 * w) {
        x += w;
        b.push_back(x);
        w = std::min(w * ratio, max_width);
    }
    if (hi > lo) b.push_back(hi);
    return b;
}

double richardson(std::span<const double> values, double r, std::span<const double> exponents, double* last_change)
{
    const std::size_t m = values.size();
    if (m == 0) throw std::invalid_argument("richardson: no values");
    const std::size_t levels = std::min(exponents.size(), m - 1);
    std::vector<double> t(values.begin(), values.end());
    double prev_best = t[m - 1];
    for (std::size_t l = 0; l < levels; ++l) {
        const double f = std::pow(r, exponents[l]);
        // Entry i combines step h_i with the finer step h_{i+1} = r h_i.
        for (std::size_t i = 0; i + 1 < m - l; ++i) t[i] = (t[i + 1] - f * t[i]) / (1.0 - f);
        const double best = t[m - 2 - l];
        if (l + 1 == levels && last_change) *last_change = std::abs(best - prev_best);
        prev_best = best;
    }
    if (levels == 0 && last_change) *last_change = 0.0;
    return prev_best;
}

}  // namespace nlt::quad

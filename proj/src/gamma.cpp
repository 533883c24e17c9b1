#include "nlt/gamma.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlt {

namespace {

using C = std::complex<double>;

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

std::atomic<bool> fault_enabled{false};

C lanczos_log_gamma(C z)
{
    // Valid for Re z >= 1/2.
    z -= 1.0;
    C sum = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) {
        double c = lanczos_coef[i];
        if (i == 2 && fault_enabled.load(std::memory_order_relaxed)) c *= 1.0001;
        sum += c / (z + static_cast<double>(i));
    }
    const C t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// log sin(pi z) without overflow for large |Im z|.
C log_sin_pi(C z)
{
    const C w = std::numbers::pi * z;
    const double b = w.imag();
    if (std::abs(b) < 20.0) return std::log(std::sin(w));
    // sin w = (e^{|b|}/2) (sin a + i sgn(b) cos a) (1 + O(e^{-2|b|})).
    const double a = w.real();
    const double s = b > 0 ? 1.0 : -1.0;
    return C(std::abs(b) - std::log(2.0), 0.0) + std::log(C(std::sin(a), s * std::cos(a)));
}

bool is_pole(C z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real());
}

}  // namespace

C log_gamma(C z)
{
    if (is_pole(z)) throw std::domain_error("gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

C complex_gamma(C z)
{
    if (is_pole(z)) throw std::domain_error("gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return std::exp(lanczos_log_gamma(z));
    const C w = std::numbers::pi * z;
    if (std::abs(w.imag()) < 20.0) return std::numbers::pi / (std::sin(w) * std::exp(lanczos_log_gamma(1.0 - z)));
    return std::exp(log_gamma(z));
}

void set_gamma_fault_injection(bool enabled) { fault_enabled.store(enabled); }
bool gamma_fault_injection() { return fault_enabled.load(); }

}  // namespace nlt

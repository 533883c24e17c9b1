#pragma once

#include <complex>

namespace nlt {

// Principal-branch-free log Gamma: exp(log_gamma(z)) == Gamma(z). The
// imaginary part is not reduced to (-pi, pi].
std::complex<double> log_gamma(std::complex<double> z);

// Gamma(z) by the Lanczos approximation (g = 7, nine terms), with the
// reflection formula for Re z < 1/2. Throws std::domain_error at poles.
std::complex<double> complex_gamma(std::complex<double> z);

// Test hook: when enabled, one Lanczos coefficient is perturbed so that
// every downstream Gamma evaluation is wrong by a relative ~1e-4.
void set_gamma_fault_injection(bool enabled);
bool gamma_fault_injection();

}  // namespace nlt

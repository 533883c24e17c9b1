#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace nlt {

using cplx = std::complex<double>;

// Periodic grid on [-L/2, L/2) with x_j = -L/2 + j*dx.
class Grid {
public:
    Grid(int n_points, double box_length);

    int size() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return dx_; }
    double x(int j) const { return -0.5 * length_ + j * dx_; }
    std::vector<double> points() const;

    // Signed mode number of FFT-ordered index j: 0..n/2-1, then -n/2..-1.
    int mode(int j) const { return j < n_ / 2 ? j : j - n_; }
    double wavenumber_at(int j) const;
    // Ascending wavenumbers k_m = 2*pi*m/L, m = -n/2 .. n/2-1.
    std::vector<double> wavenumbers() const;
    // Wavenumbers in FFT index order (the order of every spectrum array).
    std::vector<double> fft_wavenumbers() const;
    int nyquist_index() const { return n_ / 2; }

    bool operator==(const Grid& o) const { return n_ == o.n_ && length_ == o.length_; }

private:
    int n_;
    double length_;
    double dx_;
};

Grid make_grid(int n_points, double box_length);

// Real grid function with a lazily computed spectrum.
//
// The spectrum is stored in FFT index order with the normalization
// u(x_m) = sum_j c_j exp(i k_j x_m), so cos(k x) has |c| = 1/2 at +-k.
class Field {
public:
    explicit Field(const Grid& grid);
    Field(const Grid& grid, std::vector<double> values, bool odd = false);
    static Field sample(const Grid& grid, const std::function<double(double)>& f, bool odd = false);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values();
    double operator[](int j) const { return values_[j]; }

    bool is_odd() const { return odd_; }
    void set_odd(bool odd) { odd_ = odd; }

    const std::vector<cplx>& spectrum() const;

    double sup_norm() const;
    // max_j |u_j + u_{n-j}|, zero for an exactly odd field.
    double parity_error() const;

private:
    Grid grid_;
    std::vector<double> values_;
    bool odd_ = false;
    mutable std::optional<std::vector<cplx>> spectrum_;
};

std::vector<cplx> forward(const Field& field);
// Inverse of forward(); the spectrum must be Hermitian. Nyquist is kept.
std::vector<double> inverse(const Grid& grid, std::span<const cplx> spectrum);
// Complex inverse, for checking how far a product leaves the real line.
std::vector<cplx> inverse_complex(const Grid& grid, std::span<const cplx> spectrum);

bool is_hermitian(std::span<const cplx> symbol, double rel_tol = 1e-13);

// Multiplies the spectrum pointwise. The Nyquist coefficient is dropped
// unless the symbol is identically one.
Field apply_multiplier(const Field& field, std::span<const cplx> symbol);
Field apply_multiplier(const Field& field, std::span<const double> symbol);

// Smooth cutoff: 1 on |x| <= 1, 0 on |x| >= 2, C-infinity in between.
double lp_bump(double x);

enum class LPKind { below, above, band };

class LPProjector {
public:
    static LPProjector below(double cutoff);
    static LPProjector above(double cutoff);
    static LPProjector band(double lower, double upper);

    LPKind kind() const { return kind_; }
    double lower() const { return lo_; }
    double upper() const { return hi_; }
    double symbol_at(double k) const;
    std::vector<double> symbol(const Grid& grid) const;

private:
    LPProjector(LPKind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}
    LPKind kind_;
    double lo_;
    double hi_;
};

Field lp_project(const Field& field, const LPProjector& proj);

// Unnormalized real-to-complex transform of length n with its own FFTW plans
// and buffers. Instances must not be shared across threads.
class RealFFT {
public:
    explicit RealFFT(int n);
    ~RealFFT();
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    int size() const { return n_; }
    int half_size() const { return n_ / 2 + 1; }
    // out[j] = sum_m in[m] exp(-2 pi i j m / n), j = 0..n/2.
    void forward(const double* in, cplx* out);
    // out[m] = sum over the Hermitian extension of in (no 1/n factor).
    void inverse(const cplx* in, double* out);

private:
    int n_;
    double* real_buf_;
    cplx* spec_buf_;
    void* plan_fwd_;
    void* plan_inv_;
};

// Per-thread cached transform of length n.
RealFFT& thread_fft(int n);

}  // namespace nlt

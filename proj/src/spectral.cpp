#include "nlt/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlt {

namespace {

// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

// Phase factor exp(i k_j L/2) = (-1)^j that moves the origin to the box centre.
inline double phase(int j) { return (j & 1) ? -1.0 : 1.0; }

}  // namespace

Grid::Grid(int n_points, double box_length) : n_(n_points), length_(box_length)
{
    if (n_points < 8 || n_points % 2 != 0)
        throw std::invalid_argument("grid: n_points must be even and >= 8, got " + std::to_string(n_points));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw std::invalid_argument("grid: box_length must be positive");
    dx_ = box_length / n_points;
}

std::vector<double> Grid::points() const
{
    std::vector<double> x(n_);
    for (int j = 0; j < n_; ++j) x[j] = this->x(j);
    return x;
}

double Grid::wavenumber_at(int j) const
{
    return 2.0 * std::numbers::pi * mode(j) / length_;
}

std::vector<double> Grid::wavenumbers() const
{
    std::vector<double> k(n_);
    for (int m = -n_ / 2; m < n_ / 2; ++m) k[m + n_ / 2] = 2.0 * std::numbers::pi * m / length_;
    return k;
}

std::vector<double> Grid::fft_wavenumbers() const
{
    std::vector<double> k(n_);
    for (int j = 0; j < n_; ++j) k[j] = wavenumber_at(j);
    return k;
}

Grid make_grid(int n_points, double box_length) { return Grid(n_points, box_length); }

// ---------------------------------------------------------------- RealFFT

RealFFT::RealFFT(int n) : n_(n)
{
    if (n < 2) throw std::invalid_argument("fft: length must be >= 2");
    std::lock_guard lock(planner_mutex());
    real_buf_ = fftw_alloc_real(n);
    spec_buf_ = reinterpret_cast<cplx*>(fftw_alloc_complex(n / 2 + 1));
    auto* sb = reinterpret_cast<fftw_complex*>(spec_buf_);
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_, sb, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n, sb, real_buf_, FFTW_ESTIMATE);
}

RealFFT::~RealFFT()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(spec_buf_);
}

void RealFFT::forward(const double* in, cplx* out)
{
    std::copy(in, in + n_, real_buf_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::copy(spec_buf_, spec_buf_ + half_size(), out);
}

void RealFFT::inverse(const cplx* in, double* out)
{
    // c2r destroys its input, so it always works on the private buffer.
    std::copy(in, in + half_size(), spec_buf_);
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::copy(real_buf_, real_buf_ + n_, out);
}

RealFFT& thread_fft(int n)
{
    thread_local std::map<int, std::unique_ptr<RealFFT>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<RealFFT>(n);
    return *slot;
}

// ---------------------------------------------------------------- Field

Field::Field(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(const Grid& grid, std::vector<double> values, bool odd)
    : grid_(grid), values_(std::move(values)), odd_(odd)
{
    if (static_cast<int>(values_.size()) != grid_.size())
        throw std::invalid_argument("field: value count does not match grid");
}

Field Field::sample(const Grid& grid, const std::function<double(double)>& f, bool odd)
{
    std::vector<double> v(grid.size());
    for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.x(j));
    if (odd) {
        // x_j and x_{n-j} mirror each other; x_0 = -L/2 pairs with itself.
        const int n = grid.size();
        v[0] = 0.0;
        v[n / 2] = 0.0;
        for (int j = 1; j < n / 2; ++j) {
            const double a = 0.5 * (v[j] - v[n - j]);
            v[j] = a;
            v[n - j] = -a;
        }
    }
    return Field(grid, std::move(v), odd);
}

std::vector<double>& Field::mutable_values()
{
    spectrum_.reset();
    return values_;
}

const std::vector<cplx>& Field::spectrum() const
{
    if (!spectrum_) spectrum_ = forward(*this);
    return *spectrum_;
}

double Field::sup_norm() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::parity_error() const
{
    const int n = grid_.size();
    // x_0 = -L/2 and x_{n/2} = 0 are their own mirror images.
    double e = std::max(std::abs(values_[0]), std::abs(values_[n / 2]));
    for (int j = 1; j < n; ++j) e = std::max(e, std::abs(values_[j] + values_[n - j]));
    return e;
}

// ---------------------------------------------------------------- transforms

std::vector<cplx> forward(const Field& field)
{
    const int n = field.grid().size();
    RealFFT& fft = thread_fft(n);
    std::vector<cplx> half(fft.half_size());
    fft.forward(field.values().data(), half.data());
    std::vector<cplx> spec(n);
    const double inv_n = 1.0 / n;
    for (int j = 0; j <= n / 2; ++j) spec[j] = half[j] * (phase(j) * inv_n);
    for (int j = n / 2 + 1; j < n; ++j) spec[j] = std::conj(spec[n - j]);
    return spec;
}

std::vector<double> inverse(const Grid& grid, std::span<const cplx> spectrum)
{
    const int n = grid.size();
    if (static_cast<int>(spectrum.size()) != n) throw std::invalid_argument("inverse: spectrum length mismatch");
    RealFFT& fft = thread_fft(n);
    std::vector<cplx> half(fft.half_size());
    for (int j = 0; j <= n / 2; ++j) half[j] = spectrum[j] * phase(j);
    // c2r reads only the imaginary-free parts of the self-conjugate modes.
    half[0] = half[0].real();
    half[n / 2] = half[n / 2].real();
    std::vector<double> out(n);
    fft.inverse(half.data(), out.data());
    return out;
}

std::vector<cplx> inverse_complex(const Grid& grid, std::span<const cplx> spectrum)
{
    const int n = grid.size();
    if (static_cast<int>(spectrum.size()) != n) throw std::invalid_argument("inverse: spectrum length mismatch");
    std::vector<cplx> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = spectrum[j] * phase(j);
    std::vector<cplx> out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

bool is_hermitian(std::span<const cplx> symbol, double rel_tol)
{
    const std::size_t n = symbol.size();
    double scale = 0.0;
    for (const auto& s : symbol) scale = std::max(scale, std::abs(s));
    const double tol = rel_tol * std::max(scale, 1e-300);
    for (std::size_t j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        if (std::abs(symbol[n - j] - std::conj(symbol[j])) > tol) return false;
    }
    return std::abs(symbol[0].imag()) <= tol;
}

namespace {

Field multiply(const Field& field, const std::function<cplx(int)>& symbol, bool keep_nyquist)
{
    const Grid& g = field.grid();
    const int n = g.size();
    const auto& spec = field.spectrum();
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) out[j] = spec[j] * symbol(j);
    if (!keep_nyquist) out[n / 2] = 0.0;
    Field result(g, inverse(g, out), field.is_odd());
    return result;
}

}  // namespace

Field apply_multiplier(const Field& field, std::span<const cplx> symbol)
{
    const int n = field.grid().size();
    if (static_cast<int>(symbol.size()) != n)
        throw std::invalid_argument("apply_multiplier: symbol length " + std::to_string(symbol.size()) +
                                    " does not match grid size " + std::to_string(n));
    if (!is_hermitian(symbol))
        throw std::invalid_argument("apply_multiplier: symbol is not Hermitian, output would not be real");
    const bool identity = std::all_of(symbol.begin(), symbol.end(), [](const cplx& s) { return s == cplx(1.0); });
    return multiply(field, [&](int j) { return symbol[j]; }, identity);
}

Field apply_multiplier(const Field& field, std::span<const double> symbol)
{
    const int n = field.grid().size();
    if (static_cast<int>(symbol.size()) != n)
        throw std::invalid_argument("apply_multiplier: symbol length " + std::to_string(symbol.size()) +
                                    " does not match grid size " + std::to_string(n));
    for (int j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        if (symbol[j] != symbol[n - j])
            throw std::invalid_argument("apply_multiplier: real symbol must be even in k");
    }
    const bool identity = std::all_of(symbol.begin(), symbol.end(), [](double s) { return s == 1.0; });
    return multiply(field, [&](int j) { return cplx(symbol[j]); }, identity);
}

// ---------------------------------------------------------------- Littlewood-Paley

double lp_bump(double x)
{
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    auto h = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double p = h(2.0 - a);
    const double q = h(a - 1.0);
    return p / (p + q);
}

LPProjector LPProjector::below(double cutoff)
{
    if (!(cutoff > 0.0)) throw std::invalid_argument("lp projector: cutoff must be positive");
    return LPProjector(LPKind::below, cutoff, cutoff);
}

LPProjector LPProjector::above(double cutoff)
{
    if (!(cutoff > 0.0)) throw std::invalid_argument("lp projector: cutoff must be positive");
    return LPProjector(LPKind::above, cutoff, cutoff);
}

LPProjector LPProjector::band(double lower, double upper)
{
    if (!(lower > 0.0) || !(upper > 0.0)) throw std::invalid_argument("lp projector: cutoffs must be positive");
    if (!(lower < upper)) throw std::invalid_argument("lp projector: band cutoffs out of order");
    return LPProjector(LPKind::band, lower, upper);
}

double LPProjector::symbol_at(double k) const
{
    switch (kind_) {
    case LPKind::below: return lp_bump(k / lo_);
    case LPKind::above: return 1.0 - lp_bump(k / lo_);
    case LPKind::band: return lp_bump(k / hi_) - lp_bump(k / lo_);
    }
    return 0.0;
}

std::vector<double> LPProjector::symbol(const Grid& grid) const
{
    std::vector<double> s(grid.size());
    for (int j = 0; j < grid.size(); ++j) s[j] = symbol_at(grid.wavenumber_at(j));
    // The Nyquist wavenumber is -n/2 in FFT order; mirror it for evenness.
    s[grid.size() / 2] = symbol_at(-grid.wavenumber_at(grid.size() / 2));
    return s;
}

Field lp_project(const Field& field, const LPProjector& proj)
{
    const auto s = proj.symbol(field.grid());
    return apply_multiplier(field, std::span<const double>(s));
}

}  // namespace nlt

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "aqm/branch.hpp"

namespace aqm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform periodic lattice on [x_min, x_max) with its discrete-Fourier
/// conjugate momentum lattice.
///
/// Positions are x_j = x_min + j dx. Momenta are stored in FFT ordering:
/// index j carries the integer frequency k_j = j for j < n/2 and j - n
/// otherwise, and p_j = 2 pi hbar k_j / L. The lattice is symmetric about
/// zero except for the single Nyquist sample k = -n/2.
///
/// Copies share the immutable sample tables.
class Grid {
public:
    std::size_t size() const { return data_->n; }
    double x_min() const { return data_->x_min; }
    double x_max() const { return data_->x_max; }
    double length() const { return data_->x_max - data_->x_min; }
    double dx() const { return data_->dx; }
    double dp() const { return data_->dp; }
    double hbar() const { return data_->hbar; }

    const std::vector<double>& positions() const { return data_->x; }
    const std::vector<double>& momenta() const { return data_->p; }
    double position(std::size_t j) const { return data_->x[j]; }
    double momentum(std::size_t j) const { return data_->p[j]; }

    /// Integer frequency k_j of FFT-ordered index j.
    long frequency(std::size_t j) const;
    /// FFT-ordered index of integer frequency k in [-n/2, n/2).
    std::size_t index_of_frequency(long k) const;
    /// Largest |p| on the lattice (the Nyquist magnitude).
    double p_max() const { return data_->dp * static_cast<double>(data_->n / 2); }

    /// Momentum samples sorted ascending, k = -n/2 .. n/2 - 1.
    std::vector<double> momenta_ascending() const;

    friend bool operator==(const Grid& a, const Grid& b);

private:
    struct Data {
        std::size_t n;
        double x_min, x_max, dx, dp, hbar;
        std::vector<double> x, p;
    };
    explicit Grid(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;

    friend Grid make_grid(std::size_t, double, double, double);
};

/// Requires n >= 8 a power of two and x_max > x_min.
Grid make_grid(std::size_t n_points, double x_min, double x_max, double hbar = 1.0);

/// Sampled psi(x_j, t).
class PositionWavefunction {
public:
    PositionWavefunction(Grid grid, ComplexVector samples, double time = 0.0);

    const Grid& grid() const { return grid_; }
    const ComplexVector& samples() const { return samples_; }
    std::span<const Complex> view() const { return samples_; }
    Complex operator[](std::size_t j) const { return samples_[j]; }
    std::size_t size() const { return samples_.size(); }
    double time() const { return time_; }

    PositionWavefunction with_time(double t) const { return {grid_, samples_, t}; }

private:
    Grid grid_;
    ComplexVector samples_;
    double time_;
};

/// Sampled phi(p_j, t) in the grid's FFT momentum ordering.
class MomentumWavefunction {
public:
    MomentumWavefunction(Grid grid, ComplexVector samples, double time = 0.0);

    const Grid& grid() const { return grid_; }
    const ComplexVector& samples() const { return samples_; }
    Complex operator[](std::size_t j) const { return samples_[j]; }
    std::size_t size() const { return samples_.size(); }
    double time() const { return time_; }

private:
    Grid grid_;
    ComplexVector samples_;
    double time_;
};

/// phi(p) = (2 pi hbar)^{-1/2} sum_j psi(x_j) exp(-i p x_j / hbar) dx.
/// Parseval holds with dx and dp weights.
MomentumWavefunction forward_transform(const PositionWavefunction& psi);

/// psi(x) = (2 pi hbar)^{-1/2} sum_k phi(p_k) exp(i p_k x / hbar) dp.
PositionWavefunction inverse_transform(const MomentumWavefunction& phi);

/// (a, b) = sum conj(a_j) b_j dx
Complex inner_product(const PositionWavefunction& a, const PositionWavefunction& b);
double norm_squared(const PositionWavefunction& psi);
double norm_squared(const MomentumWavefunction& phi);
double norm(const PositionWavefunction& psi);

/// Rescale by a positive real factor to unit norm. Throws on a zero state.
PositionWavefunction normalize(const PositionWavefunction& psi);

/// Pointwise linear combination a*x + b*y on a shared grid.
PositionWavefunction combine(Complex a, const PositionWavefunction& x, Complex b,
                             const PositionWavefunction& y);

enum class NormalizationPolicy { reject, warn };

/// <|x|^alpha> = sum |psi_j|^2 |x_j|^alpha dx. alpha = 0 is the identity.
/// Negative x uses |x|^alpha so the observable stays real.
double expectation_x_power(const PositionWavefunction& psi, double alpha,
                           NormalizationPolicy policy = NormalizationPolicy::reject);

/// <p^alpha> = sum |phi_k|^2 m(p_k) dp with the multiplier of `branch`.
/// Complex-valued in general; real for the riesz branch.
Complex expectation_p_power_momentum(const MomentumWavefunction& phi, double alpha,
                                     BranchPolicy branch = BranchPolicy::riesz,
                                     NormalizationPolicy policy = NormalizationPolicy::reject);

/// Periodic-representability diagnostic.
///
/// A state is representable on the periodic lattice when it decays at the
/// boundary or is a single lattice plane wave. Anything else wraps across
/// the seam and no longer stands for a state on the open line.
struct LeakageReport {
    double boundary_amplitude;  // max(|psi_0|, |psi_{n-1}|) / max|psi|
    double off_peak;            // fraction of |phi|^2 outside the strongest mode
    double value() const;       // min(boundary_amplitude, sqrt(off_peak))
};

inline constexpr double default_leakage_tolerance = 1e-8;

LeakageReport measure_leakage(const PositionWavefunction& psi);
LeakageReport measure_leakage(std::span<const Complex> samples,
                              std::span<const Complex> fft_spectrum);

/// Throws NumericalError if measure_leakage(psi).value() > tolerance.
void require_representable(const PositionWavefunction& psi,
                           double tolerance = default_leakage_tolerance);

}  // namespace aqm

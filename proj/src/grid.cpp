#include "aqm/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <numbers>

#include "aqm/errors.hpp"
#include "fft.hpp"

namespace aqm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw PreconditionError("states live on different grids");
}

// exp(-i p_k x_min / hbar) for each FFT-ordered k
ComplexVector origin_phases(const Grid& g) {
    ComplexVector out(g.size());
    const double shift = g.x_min() / g.length();
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double turns = static_cast<double>(g.frequency(j)) * shift;
        out[j] = std::polar(1.0, -two_pi * (turns - std::round(turns)));
    }
    return out;
}

void check_normalized(double norm2, NormalizationPolicy policy) {
    if (std::abs(norm2 - 1.0) <= 1e-10) return;
    if (policy == NormalizationPolicy::reject) {
        throw PreconditionError("expectation value requires a normalized state (norm^2 = " +
                                std::to_string(norm2) + ")");
    }
    std::clog << "aqm: warning: expectation of non-normalized state (norm^2 = " << norm2
              << ")\n";
}

}  // namespace

long Grid::frequency(std::size_t j) const {
    const auto n = data_->n;
    return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

std::size_t Grid::index_of_frequency(long k) const {
    const auto n = static_cast<long>(data_->n);
    if (k < -n / 2 || k >= n / 2) throw PreconditionError("frequency outside lattice");
    return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

std::vector<double> Grid::momenta_ascending() const {
    std::vector<double> out(data_->p);
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const Grid& a, const Grid& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->n == b.data_->n && a.data_->x_min == b.data_->x_min &&
           a.data_->x_max == b.data_->x_max && a.data_->hbar == b.data_->hbar;
}

Grid make_grid(std::size_t n_points, double x_min, double x_max, double hbar) {
    if (n_points < 8 || !std::has_single_bit(n_points)) {
        throw PreconditionError("grid size must be a power of two >= 8");
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw PreconditionError("grid interval must satisfy x_max > x_min");
    }
    if (!(hbar > 0.0)) throw PreconditionError("hbar must be positive");

    Grid::Data d;
    d.n = n_points;
    d.x_min = x_min;
    d.x_max = x_max;
    d.hbar = hbar;
    const double length = x_max - x_min;
    d.dx = length / static_cast<double>(n_points);
    d.dp = two_pi * hbar / length;
    d.x.resize(n_points);
    d.p.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        d.x[j] = x_min + static_cast<double>(j) * d.dx;
        const long k = j < n_points / 2 ? static_cast<long>(j)
                                        : static_cast<long>(j) - static_cast<long>(n_points);
        d.p[j] = static_cast<double>(k) * d.dp;
    }
    return Grid(std::make_shared<const Grid::Data>(std::move(d)));
}

PositionWavefunction::PositionWavefunction(Grid grid, ComplexVector samples, double time)
    : grid_(std::move(grid)), samples_(std::move(samples)), time_(time) {
    if (samples_.size() != grid_.size()) {
        throw PreconditionError("sample count does not match grid size");
    }
}

MomentumWavefunction::MomentumWavefunction(Grid grid, ComplexVector samples, double time)
    : grid_(std::move(grid)), samples_(std::move(samples)), time_(time) {
    if (samples_.size() != grid_.size()) {
        throw PreconditionError("sample count does not match grid size");
    }
}

MomentumWavefunction forward_transform(const PositionWavefunction& psi) {
    const Grid& g = psi.grid();
    ComplexVector data = psi.samples();
    detail::fft_forward(data);
    const double scale = g.dx() / std::sqrt(two_pi * g.hbar());
    const auto phases = origin_phases(g);
    for (std::size_t k = 0; k < data.size(); ++k) data[k] *= scale * phases[k];
    return {g, std::move(data), psi.time()};
}

PositionWavefunction inverse_transform(const MomentumWavefunction& phi) {
    const Grid& g = phi.grid();
    ComplexVector data = phi.samples();
    const double scale = g.dp() / std::sqrt(two_pi * g.hbar());
    const auto phases = origin_phases(g);
    for (std::size_t k = 0; k < data.size(); ++k) data[k] *= scale * std::conj(phases[k]);
    detail::fft_backward(data);
    return {g, std::move(data), phi.time()};
}

Complex inner_product(const PositionWavefunction& a, const PositionWavefunction& b) {
    require_same_grid(a.grid(), b.grid());
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) sum += std::conj(a[j]) * b[j];
    return sum * a.grid().dx();
}

double norm_squared(const PositionWavefunction& psi) {
    double sum = 0.0;
    for (const auto& v : psi.samples()) sum += std::norm(v);
    return sum * psi.grid().dx();
}

double norm_squared(const MomentumWavefunction& phi) {
    double sum = 0.0;
    for (const auto& v : phi.samples()) sum += std::norm(v);
    return sum * phi.grid().dp();
}

double norm(const PositionWavefunction& psi) { return std::sqrt(norm_squared(psi)); }

PositionWavefunction normalize(const PositionWavefunction& psi) {
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw PreconditionError("cannot normalize a zero state");
    const double scale = 1.0 / std::sqrt(n2);
    ComplexVector out(psi.samples());
    for (auto& v : out) v *= scale;
    return {psi.grid(), std::move(out), psi.time()};
}

PositionWavefunction combine(Complex a, const PositionWavefunction& x, Complex b,
                             const PositionWavefunction& y) {
    require_same_grid(x.grid(), y.grid());
    ComplexVector out(x.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a * x[j] + b * y[j];
    return {x.grid(), std::move(out), x.time()};
}

double expectation_x_power(const PositionWavefunction& psi, double alpha,
                           NormalizationPolicy policy) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("exponent must be finite and non-negative");
    }
    check_normalized(norm_squared(psi), policy);
    const auto& x = psi.grid().positions();
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        sum += std::norm(psi[j]) * std::pow(std::abs(x[j]), alpha);
    }
    return sum * psi.grid().dx();
}

Complex expectation_p_power_momentum(const MomentumWavefunction& phi, double alpha,
                                     BranchPolicy branch, NormalizationPolicy policy) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("exponent must be finite and non-negative");
    }
    check_normalized(norm_squared(phi), policy);
    const auto& p = phi.grid().momenta();
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        sum += std::norm(phi[k]) * momentum_power(p[k], alpha, branch);
    }
    return sum * phi.grid().dp();
}

double LeakageReport::value() const { return std::min(boundary_amplitude, std::sqrt(off_peak)); }

LeakageReport measure_leakage(std::span<const Complex> samples,
                              std::span<const Complex> fft_spectrum) {
    double peak = 0.0;
    for (const auto& v : samples) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return {0.0, 0.0};
    const double edge = std::max(std::abs(samples.front()), std::abs(samples.back()));
    double total = 0.0;
    double top = 0.0;
    for (const auto& v : fft_spectrum) {
        const double w = std::norm(v);
        total += w;
        top = std::max(top, w);
    }
    return {edge / peak, total > 0.0 ? std::max(0.0, 1.0 - top / total) : 0.0};
}

LeakageReport measure_leakage(const PositionWavefunction& psi) {
    ComplexVector spectrum = psi.samples();
    detail::fft_forward(spectrum);
    return measure_leakage(psi.view(), spectrum);
}

void require_representable(const PositionWavefunction& psi, double tolerance) {
    const auto report = measure_leakage(psi);
    if (report.value() > tolerance) {
        throw NumericalError("state not representable on the periodic grid (leakage " +
                             std::to_string(report.value()) + ")");
    }
}

}  // namespace aqm

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "aqm/grid.hpp"

namespace aqm {

/// Sum of a few random Gaussian packets, centred well inside the grid so the
/// boundary amplitude is negligible.
inline PositionWavefunction random_smooth_state(const Grid& grid, std::mt19937_64& rng,
                                                int packets = 3) {
    const double half = 0.5 * grid.length();
    const double mid = grid.x_min() + half;
    std::uniform_real_distribution<double> centre(mid - 0.2 * half, mid + 0.2 * half);
    std::uniform_real_distribution<double> width(0.03 * half, 0.07 * half);
    std::uniform_real_distribution<double> kick(-0.2 * grid.p_max(), 0.2 * grid.p_max());
    std::normal_distribution<double> amp(0.0, 1.0);
    ComplexVector s(grid.size(), Complex{});
    for (int g = 0; g < packets; ++g) {
        const double x0 = centre(rng);
        const double w = width(rng);
        const double p0 = kick(rng);
        const Complex a{amp(rng), amp(rng)};
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double x = grid.position(j) - x0;
            s[j] += a * std::exp(-x * x / (4.0 * w * w)) * std::polar(1.0, p0 * x / grid.hbar());
        }
    }
    return normalize(PositionWavefunction(grid, std::move(s)));
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex{d(rng), d(rng)};
    return 0.5 * (a + a.adjoint());
}

inline Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{d(rng), d(rng)};
    return v.normalized();
}

}  // namespace aqm

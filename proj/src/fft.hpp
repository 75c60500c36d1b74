#pragma once

#include <complex>
#include <span>

namespace aqm::detail {

/// Unnormalized in-place DFT: X_k = sum_j x_j exp(-2 pi i j k / n).
void fft_forward(std::span<std::complex<double>> data);

/// Unnormalized in-place inverse DFT: x_j = sum_k X_k exp(+2 pi i j k / n).
void fft_backward(std::span<std::complex<double>> data);

}  // namespace aqm::detail

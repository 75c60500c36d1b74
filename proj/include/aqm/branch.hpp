#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>

namespace aqm {

/// Which function of momentum realizes p^alpha on negative momenta.
///
/// The fractional derivative is only pinned down on exponentials. `riesz`
/// takes |p|^alpha (real and even, so the operator is Hermitian) and is the
/// default everywhere. `principal` takes the principal complex branch,
/// |p|^alpha exp(i pi alpha) for p < 0; it reproduces the exponential
/// eigen-relation literally but is not Hermitian for non-integer alpha.
enum class BranchPolicy { riesz, principal };

constexpr std::string_view to_string(BranchPolicy b) {
    return b == BranchPolicy::riesz ? "riesz" : "principal";
}

/// Momentum multiplier m(p) for the p^alpha operator under a branch policy.
inline std::complex<double> momentum_power(double p, double alpha, BranchPolicy branch) {
    const double magnitude = std::pow(std::abs(p), alpha);
    if (branch == BranchPolicy::riesz || p >= 0.0) {
        return {magnitude, 0.0};
    }
    return std::polar(magnitude, std::numbers::pi * alpha);
}

}  // namespace aqm

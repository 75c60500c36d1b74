#include "aqm/constants.hpp"

#include <cmath>

#include "aqm/errors.hpp"

namespace aqm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

PhysicalConstants PhysicalConstants::precise() {
    const double h = 6.62607015e-34;
    return {h / two_pi, h, 9.1093837015e-31, 1.602176634e-19, 8.8541878128e-12, 299792458.0,
            1.602176634e-19};
}

PhysicalConstants PhysicalConstants::rounded() {
    const double hbar = 1.0546e-34;
    return {hbar, two_pi * hbar, 9.1e-31, 1.6e-19, 8.85e-12, 3.0e8, 1.6e-19};
}

PhysicalConstants PhysicalConstants::natural() {
    return {1.0, two_pi, 1.0, 1.0, 1.0 / (4.0 * std::numbers::pi), 1.0, 1.0};
}

void PhysicalConstants::validate() const {
    for (double v : {hbar, h_planck, electron_mass, elementary_charge, epsilon0, speed_of_light,
                     joule_per_ev}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw PreconditionError("physical constants must be finite and positive");
        }
    }
    if (std::abs(h_planck - two_pi * hbar) > 1e-12 * h_planck) {
        throw PreconditionError("h_planck must equal 2 pi hbar");
    }
}

}  // namespace aqm

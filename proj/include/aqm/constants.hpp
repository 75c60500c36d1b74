#pragma once

#include <numbers>

namespace aqm {

/// Physical constants used by a computation.
///
/// Grid simulations run in natural units (hbar = m = 1); the hydrogen
/// model runs in SI. Conversion happens only at I/O boundaries.
struct PhysicalConstants {
    double hbar;               // J s
    double h_planck;           // J s
    double electron_mass;      // kg
    double elementary_charge;  // C
    double epsilon0;           // F/m
    double speed_of_light;     // m/s
    double joule_per_ev;       // J/eV

    /// CODATA 2018 values.
    static PhysicalConstants precise();

    /// Rounded values matching hand calculations in the older literature:
    /// e = 1.6e-19 C, 1 eV = 1.6e-19 J, hbar = 1.0546e-34 J s, m = 9.1e-31 kg,
    /// epsilon0 = 8.85e-12 F/m.
    static PhysicalConstants rounded();

    /// hbar = m = e = 1 and 4 pi epsilon0 = 1.
    static PhysicalConstants natural();

    /// e^2 / (4 pi epsilon0)
    double coulomb_strength() const {
        return elementary_charge * elementary_charge / (4.0 * std::numbers::pi * epsilon0);
    }

    /// Throws PreconditionError unless every field is positive and
    /// h = 2 pi hbar to 1e-12 relative.
    void validate() const;
};

}  // namespace aqm

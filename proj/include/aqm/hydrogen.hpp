#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "aqm/constants.hpp"

namespace aqm::hydrogen {

/// Constant set for the closed-form atom.
///
/// `paper` pins the Rydberg scale to 13.6 eV with 1 eV = 1.6e-19 J and
/// uses rounded SI constants elsewhere; `precise` uses CODATA values
/// throughout and computes the Rydberg energy from them.
enum class ConstantsMode { paper, precise };

std::string_view to_string(ConstantsMode m);
ConstantsMode constants_mode_from_string(std::string_view s);

/// Bohr-quantized atom with kinetic energy p^{2 alpha}/(2m)^alpha and a bare
/// Coulomb potential. Bound orbits need alpha > 1/2.
class AnomalousAtomSpec {
public:
    AnomalousAtomSpec(double alpha, ConstantsMode mode = ConstantsMode::paper);
    static AnomalousAtomSpec from_beta(double beta, ConstantsMode mode = ConstantsMode::paper);

    double alpha() const { return alpha_; }
    double beta() const { return 2.0 * alpha_; }
    ConstantsMode mode() const { return mode_; }
    const PhysicalConstants& constants() const { return constants_; }

    /// m e^4 / (8 h^2 epsilon0^2), in joules.
    double rydberg_energy() const;

private:
    double alpha_;
    ConstantsMode mode_;
    PhysicalConstants constants_;
};

struct OrbitRadius {
    int n;
    double radius;  // m
};

struct EnergyLevel {
    int n;
    double energy;     // J
    double energy_ev;
};

struct Transition {
    int k;  // upper
    int n;  // lower
    double delta_e;      // J
    double delta_e_kev;
    double frequency;    // Hz
};

/// a_n = [8 pi eps0 hbar^{2a} a / (e^2 (2m)^a)]^{1/(2a-1)} n^{2a/(2a-1)}
OrbitRadius orbit_radius(int n, const AnomalousAtomSpec& spec);

/// E_n = (1 - 2a) (Ry / a^2)^{a/(2a-1)} n^{-2a/(2a-1)}, with the base taken
/// in joules before exponentiation.
EnergyLevel energy_level(int n, const AnomalousAtomSpec& spec);

/// Delta E_kn = (2a - 1)(Ry / a^2)^{a/(2a-1)} [n^{-g} - k^{-g}], g = 2a/(2a-1).
Transition transition_energy(int k, int n, const AnomalousAtomSpec& spec);

/// lim_{k -> inf} Delta E_{k,n}
double series_limit(int n, const AnomalousAtomSpec& spec);

struct BohrLimitReport {
    int n;
    double radius, radius_bohr, radius_relative_error;
    double energy, energy_bohr, energy_relative_error;
    bool passed;
};

/// For alpha = 1 exactly: compares orbit_radius/energy_level with
/// 4 pi eps0 hbar^2 n^2/(e^2 m) and -Ry/n^2 at 1e-10 relative.
BohrLimitReport bohr_limit_check(int n, const AnomalousAtomSpec& spec);

struct SpectrumTable {
    double alpha;
    ConstantsMode mode;
    std::vector<Transition> rows;
};

SpectrumTable emit_spectrum_table(const AnomalousAtomSpec& spec,
                                  const std::vector<std::pair<int, int>>& transitions);

struct ObservedLine {
    int k;
    int n;
    double energy;  // J
};

struct FitOptions {
    double beta_min = 1.01;
    double beta_max = 10.0;
    int scan_points = 400;
    /// Relative tolerance on beta for the refinement stage; values below
    /// sqrt(machine epsilon) are clamped to it.
    double relative_tolerance = 1e-8;
    int max_iterations = 500;
};

struct FitReport {
    double beta;
    std::vector<double> residuals;  // model - observed, J
    int iterations;
    double objective;
};

/// Least-squares beta over the lines: coarse scan of the bracket (plus the
/// initial guess), then Brent refinement around the best sample. Throws
/// NumericalError when the minimum sits on the bracket edge.
FitReport fit_exponent(const std::vector<ObservedLine>& lines, double initial_beta,
                       ConstantsMode mode = ConstantsMode::paper, const FitOptions& options = {});

}  // namespace aqm::hydrogen

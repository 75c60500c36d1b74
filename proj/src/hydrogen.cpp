#include "aqm/hydrogen.hpp"

#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "aqm/errors.hpp"

namespace aqm::hydrogen {

namespace {

constexpr double paper_rydberg_ev = 13.6;

void require_level(int n) {
    if (n < 1) throw PreconditionError("principal quantum number must be >= 1");
}

// Exponent 2a/(2a-1) shared by radii, levels and lines.
double level_exponent(double alpha) { return 2.0 * alpha / (2.0 * alpha - 1.0); }

// (Ry / a^2)^{a/(2a-1)}, the base evaluated in joules.
double energy_scale(const AnomalousAtomSpec& spec) {
    const double a = spec.alpha();
    return std::pow(spec.rydberg_energy() / (a * a), a / (2.0 * a - 1.0));
}

double kev(double joules, const AnomalousAtomSpec& spec) {
    return joules / (1e3 * spec.constants().joule_per_ev);
}

}  // namespace

std::string_view to_string(ConstantsMode m) {
    return m == ConstantsMode::paper ? "paper" : "precise";
}

ConstantsMode constants_mode_from_string(std::string_view s) {
    if (s == "paper") return ConstantsMode::paper;
    if (s == "precise") return ConstantsMode::precise;
    throw PreconditionError("unknown constants mode '" + std::string(s) + "'");
}

AnomalousAtomSpec::AnomalousAtomSpec(double alpha, ConstantsMode mode)
    : alpha_(alpha),
      mode_(mode),
      constants_(mode == ConstantsMode::paper ? PhysicalConstants::rounded()
                                              : PhysicalConstants::precise()) {
    if (!(alpha > 0.5) || !std::isfinite(alpha)) {
        throw PreconditionError("anomalous atom requires alpha > 1/2");
    }
}

AnomalousAtomSpec AnomalousAtomSpec::from_beta(double beta, ConstantsMode mode) {
    return AnomalousAtomSpec(beta / 2.0, mode);
}

double AnomalousAtomSpec::rydberg_energy() const {
    if (mode_ == ConstantsMode::paper) return paper_rydberg_ev * constants_.joule_per_ev;
    const auto& c = constants_;
    const double e2 = c.elementary_charge * c.elementary_charge;
    return c.electron_mass * e2 * e2 /
           (8.0 * c.h_planck * c.h_planck * c.epsilon0 * c.epsilon0);
}

OrbitRadius orbit_radius(int n, const AnomalousAtomSpec& spec) {
    require_level(n);
    const auto& c = spec.constants();
    const double a = spec.alpha();
    const double base = 8.0 * std::numbers::pi * c.epsilon0 * std::pow(c.hbar, 2.0 * a) * a /
                        (c.elementary_charge * c.elementary_charge *
                         std::pow(2.0 * c.electron_mass, a));
    const double radius =
        std::pow(base, 1.0 / (2.0 * a - 1.0)) * std::pow(static_cast<double>(n), level_exponent(a));
    return {n, radius};
}

EnergyLevel energy_level(int n, const AnomalousAtomSpec& spec) {
    require_level(n);
    const double a = spec.alpha();
    const double e = (1.0 - 2.0 * a) * energy_scale(spec) *
                     std::pow(static_cast<double>(n), -level_exponent(a));
    return {n, e, e / spec.constants().joule_per_ev};
}

Transition transition_energy(int k, int n, const AnomalousAtomSpec& spec) {
    require_level(n);
    if (k <= n) throw PreconditionError("transition requires k > n");
    const double a = spec.alpha();
    const double g = level_exponent(a);
    const double de = (2.0 * a - 1.0) * energy_scale(spec) *
                      (std::pow(static_cast<double>(n), -g) - std::pow(static_cast<double>(k), -g));
    return {k, n, de, kev(de, spec), de / spec.constants().h_planck};
}

double series_limit(int n, const AnomalousAtomSpec& spec) {
    require_level(n);
    const double a = spec.alpha();
    return (2.0 * a - 1.0) * energy_scale(spec) *
           std::pow(static_cast<double>(n), -level_exponent(a));
}

BohrLimitReport bohr_limit_check(int n, const AnomalousAtomSpec& spec) {
    if (spec.alpha() != 1.0) throw PreconditionError("Bohr limit check requires alpha = 1");
    require_level(n);
    const auto& c = spec.constants();
    const double nn = static_cast<double>(n);
    const double radius_bohr = 4.0 * std::numbers::pi * c.epsilon0 * c.hbar * c.hbar * nn * nn /
                               (c.elementary_charge * c.elementary_charge * c.electron_mass);
    const double energy_bohr = -spec.rydberg_energy() / (nn * nn);
    const double radius = orbit_radius(n, spec).radius;
    const double energy = energy_level(n, spec).energy;
    const double re = std::abs(radius - radius_bohr) / radius_bohr;
    const double ee = std::abs(energy - energy_bohr) / std::abs(energy_bohr);
    return {n, radius, radius_bohr, re, energy, energy_bohr, ee, re < 1e-10 && ee < 1e-10};
}

SpectrumTable emit_spectrum_table(const AnomalousAtomSpec& spec,
                                  const std::vector<std::pair<int, int>>& transitions) {
    SpectrumTable table{spec.alpha(), spec.mode(), {}};
    for (const auto& [k, n] : transitions) table.rows.push_back(transition_energy(k, n, spec));
    return table;
}

FitReport fit_exponent(const std::vector<ObservedLine>& lines, double initial_beta,
                       ConstantsMode mode, const FitOptions& options) {
    if (lines.empty()) throw PreconditionError("fit needs at least one observed line");
    if (!(initial_beta > 1.0) || !std::isfinite(initial_beta)) {
        throw PreconditionError("initial beta must be > 1");
    }
    if (!(options.beta_min > 1.0) || !(options.beta_max > options.beta_min)) {
        throw PreconditionError("fit bracket must satisfy 1 < beta_min < beta_max");
    }
    double scale = 0.0;
    for (const auto& l : lines) {
        if (!std::isfinite(l.energy)) throw NumericalError("observed line energy is not finite");
        if (l.k <= l.n || l.n < 1) throw PreconditionError("observed line needs k > n >= 1");
        scale = std::max(scale, std::abs(l.energy));
    }
    if (!(scale > 0.0)) throw NumericalError("observed line energies are all zero");

    auto objective = [&](double beta) {
        const auto spec = AnomalousAtomSpec::from_beta(beta, mode);
        double sum = 0.0;
        for (const auto& l : lines) {
            const double r = (transition_energy(l.k, l.n, spec).delta_e - l.energy) / scale;
            sum += r * r;
        }
        return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
    };

    const int m = std::max(options.scan_points, 3);
    std::vector<double> samples;
    for (int i = 0; i < m; ++i) {
        samples.push_back(options.beta_min +
                          (options.beta_max - options.beta_min) * i / static_cast<double>(m - 1));
    }
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double v = objective(samples[i]);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    double lo = 0.0;
    double hi = 0.0;
    if (initial_beta > options.beta_min && initial_beta < options.beta_max &&
        objective(initial_beta) < best_value) {
        const auto it = std::upper_bound(samples.begin(), samples.end(), initial_beta);
        hi = *it;
        lo = *(it - 1);
    } else {
        if (best == 0 || best + 1 == samples.size()) {
            throw NumericalError("no bracketing minimum for beta in (" +
                                 std::to_string(options.beta_min) + ", " +
                                 std::to_string(options.beta_max) + "]");
        }
        lo = samples[best - 1];
        hi = samples[best + 1];
    }

    const int max_bits = std::numeric_limits<double>::digits / 2;
    const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(options.relative_tolerance))),
                                1, max_bits);
    std::uintmax_t iterations = static_cast<std::uintmax_t>(options.max_iterations);
    const auto [beta, value] =
        boost::math::tools::brent_find_minima(objective, lo, hi, bits, iterations);

    FitReport report{beta, {}, static_cast<int>(iterations), value};
    const auto spec = AnomalousAtomSpec::from_beta(beta, mode);
    for (const auto& l : lines) {
        report.residuals.push_back(transition_energy(l.k, l.n, spec).delta_e - l.energy);
    }
    return report;
}

}  // namespace aqm::hydrogen

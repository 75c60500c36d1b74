#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "aqm/dynamics.hpp"
#include "aqm/hydrogen.hpp"
#include "aqm/spectral.hpp"

namespace aqm::io {

inline constexpr int default_precision = 12;

/// printf-style %.{digits}g in the C locale.
std::string format_number(double value, int digits = default_precision);

/// step, time, norm, then one column per observable.
void write_evolution_csv(std::ostream& os, const EvolutionRecord& record,
                         int digits = default_precision);
nlohmann::json to_json(const EvolutionRecord& record);

/// index, energy, residual (grid residual ||H psi - E psi||).
void write_spectrum_csv(std::ostream& os, const SpectrumResult& result,
                        int digits = default_precision);
nlohmann::json to_json(const SpectrumResult& result);

/// state_label, lhs, rhs, relative_residual
void write_virial_csv(std::ostream& os, const std::vector<VirialReport>& reports,
                      int digits = default_precision);
nlohmann::json to_json(const std::vector<VirialReport>& reports);

/// k, n, delta_e_kev, frequency_hz
void write_transition_csv(std::ostream& os, const hydrogen::SpectrumTable& table,
                          int digits = default_precision);
nlohmann::json to_json(const hydrogen::SpectrumTable& table);

/// n, radius_m, energy_j, energy_ev
void write_level_csv(std::ostream& os, const std::vector<hydrogen::OrbitRadius>& radii,
                     const std::vector<hydrogen::EnergyLevel>& levels,
                     int digits = default_precision);

/// {beta, residuals, iterations, objective}
nlohmann::json to_json(const hydrogen::FitReport& report);

}  // namespace aqm::io

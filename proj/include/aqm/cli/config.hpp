#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aqm/grid.hpp"
#include "aqm/hamiltonian.hpp"
#include "aqm/hydrogen.hpp"

namespace aqm::cli {

/// Schema violation or an invalid parameter value in a run config.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridBlock {
    std::size_t n = 512;
    double x_min = -20.0;
    double x_max = 20.0;
};

/// gaussian: exp(-(x - x0)^2 / (4 sigma^2) + i p0 x), normalized.
/// plane_wave: lattice frequency k (momentum 2 pi hbar k / L).
struct InitialStateBlock {
    std::string kind = "gaussian";
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 1.0;
    long k = 0;
};

struct EvolutionBlock {
    double dt = 1e-3;
    std::size_t steps = 1000;
    std::size_t record_every = 10;
    std::vector<std::string> observables{"x", "p", "energy"};
    double leakage_tolerance = default_leakage_tolerance;
};

struct EigenBlock {
    std::string basis = "plane_wave";  // plane_wave | oscillator
    std::size_t basis_size = 0;        // 0: the grid size (plane waves) or 64 (oscillator)
    std::size_t states = 6;
    bool virial = false;
    double length_scale = 1.0;         // oscillator basis only
};

struct FitLine {
    int k;
    int n;
    double energy_kev;
};

struct FitBlock {
    std::vector<FitLine> lines;
    double initial_beta = 2.0;
    double beta_min = 1.01;
    double beta_max = 10.0;
};

struct HydrogenBlock {
    double alpha = 1.1783;
    hydrogen::ConstantsMode mode = hydrogen::ConstantsMode::paper;
    std::vector<std::pair<int, int>> transitions{{2, 1}, {3, 1}, {4, 1}, {20, 1}, {120, 1}};
    int levels = 3;
    std::optional<FitBlock> fit;
};

struct CheckBlock {
    std::vector<std::string> suites{"hermiticity", "parseval", "cross_route",
                                    "picture_equivalence", "virial"};
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    double alpha = 1.1783;
    BranchPolicy branch = BranchPolicy::riesz;
};

struct OutputBlock {
    std::string format = "csv";  // csv | json
    std::string path = "out";
    int precision = 12;
};

/// Parsed and validated run configuration. Every block carries defaults, so
/// an empty document is a valid config.
struct RunConfig {
    GridBlock grid;
    HamiltonianSpec hamiltonian;
    InitialStateBlock initial_state;
    EvolutionBlock evolution;
    EigenBlock eigen;
    HydrogenBlock hydrogen;
    CheckBlock check;
    OutputBlock output;

    Grid make_grid() const;
};

/// Validates `doc` against the config schema: unknown keys, wrong types and
/// out-of-range values raise ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a JSON file; I/O and syntax errors raise ConfigError.
RunConfig load_config(const std::string& path);

/// Fully resolved config (defaults filled in); parse_config accepts it and
/// reproduces the same RunConfig.
nlohmann::json to_json(const RunConfig& cfg);

/// Names of the check suites known to `aqm check`.
const std::vector<std::string>& check_suite_names();

}  // namespace aqm::cli

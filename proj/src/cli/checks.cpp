#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "aqm/cli/app.hpp"
#include "aqm/frac_ops.hpp"
#include "aqm/heisenberg.hpp"
#include "aqm/random_states.hpp"
#include "aqm/spectral.hpp"

namespace aqm::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

CheckResult verdict(std::string name, double residual, double threshold, std::string detail = {}) {
    return {std::move(name), residual < threshold, residual, threshold, std::move(detail)};
}

Grid check_grid() { return make_grid(256, -20.0, 20.0); }

HamiltonianSpec oscillator(double alpha, BranchPolicy branch) {
    HamiltonianSpec spec;
    spec.alpha = FractionalExponent(alpha);
    spec.potential = Potential::harmonic(1.0);
    spec.branch = branch;
    return spec;
}

void hermiticity(const CheckBlock& b, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const Grid g = check_grid();
    const auto spec = oscillator(b.alpha, b.branch);
    const double inf = std::numeric_limits<double>::infinity();
    const std::pair<const char*, StateMap> ops[] = {
        {"hermiticity.p_power", p_power_operator(b.alpha, b.branch, inf)},
        {"hermiticity.kinetic", kinetic_operator(spec, inf)},
        {"hermiticity.hamiltonian", hamiltonian_operator(spec, inf)},
    };
    std::vector<std::pair<PositionWavefunction, PositionWavefunction>> pairs;
    for (std::size_t i = 0; i < b.samples; ++i) {
        auto phi = random_smooth_state(g, rng);
        auto psi = random_smooth_state(g, rng);
        pairs.emplace_back(std::move(phi), std::move(psi));
    }
    for (const auto& [name, op] : ops) {
        double worst = 0.0;
        for (const auto& [phi, psi] : pairs) worst = std::max(worst, hermiticity_residual(op, phi, psi));
        out.push_back(verdict(name, worst, 1e-10, std::string("branch ") + std::string(to_string(b.branch))));
    }
}

void parseval(const CheckBlock& b, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const Grid g = check_grid();
    double worst = 0.0;
    for (std::size_t i = 0; i < b.samples; ++i) {
        const auto psi = random_smooth_state(g, rng);
        worst = std::max(worst, std::abs(norm_squared(psi) - norm_squared(forward_transform(psi))));
    }
    out.push_back(verdict("parseval", worst, 1e-12));
}

void cross_route(const CheckBlock& b, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const Grid g = check_grid();
    double worst = 0.0;
    for (std::size_t i = 0; i < b.samples; ++i) {
        const auto psi = random_smooth_state(g, rng);
        const auto phi = forward_transform(psi);
        for (double alpha : {0.5, 1.0, 1.7}) {
            const Complex pos = expectation_p_power_position(psi, alpha, b.branch);
            const Complex mom = expectation_p_power_momentum(phi, alpha, b.branch);
            worst = std::max(worst, std::abs(pos - mom) / std::max(1.0, std::abs(mom)));
        }
    }
    out.push_back(verdict("cross_route", worst, 1e-10, "alpha in {0.5, 1, 1.7}"));
}

void picture_equivalence(const CheckBlock& b, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    double worst = 0.0;
    for (std::size_t i = 0; i < b.samples; ++i) {
        const auto o = OperatorMatrix::from_entries(random_hermitian(16, rng), "random");
        const auto h = OperatorMatrix::from_entries(random_hermitian(16, rng), "random");
        const CoefficientVector psi{random_vector(16, rng), "random"};
        for (double t : {0.1, 1.0, 10.0}) worst = std::max(worst, picture_equivalence_residual(o, h, psi, t));
    }
    out.push_back(verdict("picture_equivalence", worst, 1e-8, "dimension 16, t in {0.1, 1, 10}"));
}

void virial(const CheckBlock& b, std::vector<CheckResult>& out) {
    const auto spec = oscillator(b.alpha, BranchPolicy::riesz);
    const Grid g = make_grid(1024, -150.0, 150.0);
    const auto result = stationary_states(spec, plane_wave_basis(g, g.size()), 4);
    double worst = 0.0;
    for (const auto& r : virial_check(result)) worst = std::max(worst, r.relative_residual);
    out.push_back(verdict("virial", worst, 1e-5, "lowest 4 oscillator states, n = 1024, L = 300"));
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckBlock& block) {
    std::vector<CheckResult> out;
    const auto& names = check_suite_names();
    for (const auto& suite : block.suites) {
        // Each suite draws from its own stream so results do not depend on the suite list.
        const auto index = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), suite) - names.begin());
        std::mt19937_64 rng(block.seed * 1000003ULL + index);
        try {
            if (suite == "hermiticity") hermiticity(block, rng, out);
            else if (suite == "parseval") parseval(block, rng, out);
            else if (suite == "cross_route") cross_route(block, rng, out);
            else if (suite == "picture_equivalence") picture_equivalence(block, rng, out);
            else if (suite == "virial") virial(block, out);
        } catch (const std::exception& e) {
            out.push_back({suite, false, nan, nan, e.what()});
        }
    }
    return out;
}

}  // namespace aqm::cli

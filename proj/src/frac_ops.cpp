#include "aqm/frac_ops.hpp"

#include <cmath>
#include <limits>

#include "aqm/errors.hpp"
#include "fft.hpp"

namespace aqm {

namespace {

void require_positive_exponent(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("exponent must be finite and > 0");
    }
}

void require_consistent_units(const Grid& grid, const HamiltonianSpec& spec) {
    spec.validate();
    if (std::abs(grid.hbar() - spec.constants.hbar) > 1e-12 * spec.constants.hbar) {
        throw PreconditionError("grid hbar differs from the Hamiltonian's constants");
    }
}

}  // namespace

PositionWavefunction apply_fourier_multiplier(const PositionWavefunction& psi,
                                              std::span<const Complex> multiplier,
                                              double leakage_tolerance) {
    const std::size_t n = psi.size();
    if (multiplier.size() != n) throw PreconditionError("multiplier size mismatch");
    ComplexVector data = psi.samples();
    detail::fft_forward(data);
    if (std::isfinite(leakage_tolerance)) {
        const auto report = measure_leakage(psi.view(), data);
        if (report.value() > leakage_tolerance) {
            throw NumericalError("state not representable on the periodic grid (leakage " +
                                 std::to_string(report.value()) + ")");
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) data[k] *= multiplier[k] * inv_n;
    detail::fft_backward(data);
    return {psi.grid(), std::move(data), psi.time()};
}

ComplexVector p_power_multiplier(const Grid& grid, double alpha, BranchPolicy branch) {
    require_positive_exponent(alpha);
    ComplexVector m(grid.size());
    const auto& p = grid.momenta();
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = momentum_power(p[k], alpha, branch);
    return m;
}

ComplexVector kinetic_multiplier(const Grid& grid, const HamiltonianSpec& spec) {
    require_consistent_units(grid, spec);
    ComplexVector m(grid.size());
    const auto& p = grid.momenta();
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = spec.kinetic_energy(p[k]);
    return m;
}

PositionWavefunction apply_p_power(const PositionWavefunction& psi, double alpha,
                                   BranchPolicy branch, double leakage_tolerance) {
    const auto m = p_power_multiplier(psi.grid(), alpha, branch);
    return apply_fourier_multiplier(psi, m, leakage_tolerance);
}

MomentumWavefunction apply_x_power_momentum(const MomentumWavefunction& phi, double alpha) {
    require_positive_exponent(alpha);
    const auto psi = inverse_transform(phi);
    const auto& x = psi.grid().positions();
    ComplexVector out(psi.samples());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::pow(std::abs(x[j]), alpha);
    return forward_transform(PositionWavefunction(psi.grid(), std::move(out), psi.time()));
}

PositionWavefunction apply_function_of_p_power(const PositionWavefunction& psi, double alpha,
                                               std::span<const double> coefficients,
                                               BranchPolicy branch, double leakage_tolerance) {
    if (coefficients.empty()) throw PreconditionError("empty coefficient list");
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw PreconditionError("coefficients must be finite");
    }
    auto m = p_power_multiplier(psi.grid(), alpha, branch);
    for (auto& value : m) {
        // Horner evaluation of sum_n C_n y^n at y = m(p)
        Complex acc{0.0, 0.0};
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * value + *it;
        value = acc;
    }
    return apply_fourier_multiplier(psi, m, leakage_tolerance);
}

Complex expectation_p_power_position(const PositionWavefunction& psi, double alpha,
                                     BranchPolicy branch) {
    return inner_product(psi, apply_p_power(psi, alpha, branch));
}

PositionWavefunction kinetic_apply(const PositionWavefunction& psi, const HamiltonianSpec& spec,
                                   double leakage_tolerance) {
    return apply_fourier_multiplier(psi, kinetic_multiplier(psi.grid(), spec), leakage_tolerance);
}

PositionWavefunction potential_apply(const PositionWavefunction& psi,
                                     const HamiltonianSpec& spec) {
    const auto v = spec.potential.evaluate(psi.grid());
    ComplexVector out(psi.samples());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= v[j];
    return {psi.grid(), std::move(out), psi.time()};
}

PositionWavefunction hamiltonian_apply(const PositionWavefunction& psi,
                                       const HamiltonianSpec& spec, double leakage_tolerance) {
    const auto t = kinetic_apply(psi, spec, leakage_tolerance);
    const auto v = spec.potential.evaluate(psi.grid());
    ComplexVector out(t.samples());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[j] * psi[j];
    return {psi.grid(), std::move(out), psi.time()};
}

double kinetic_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec) {
    // Diagonal in momentum space: sum |phi_k|^2 T(p_k) dp
    const auto phi = forward_transform(psi);
    const auto m = kinetic_multiplier(psi.grid(), spec);
    double sum = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) sum += std::norm(phi[k]) * m[k].real();
    return sum * psi.grid().dp();
}

double potential_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec) {
    const auto v = spec.potential.evaluate(psi.grid());
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) sum += std::norm(psi[j]) * v[j];
    return sum * psi.grid().dx();
}

double energy_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec) {
    return kinetic_expectation(psi, spec) + potential_expectation(psi, spec);
}

double hermiticity_residual(const StateMap& op, const PositionWavefunction& phi,
                            const PositionWavefunction& psi) {
    if (!(phi.grid() == psi.grid())) throw PreconditionError("states live on different grids");
    const auto o_psi = op(psi);
    const auto o_phi = op(phi);
    const Complex lhs = inner_product(phi, o_psi);
    const Complex rhs = inner_product(o_phi, psi);
    return std::abs(lhs - rhs) / (norm(phi) * norm(o_psi) + std::numeric_limits<double>::min());
}

StateMap p_power_operator(double alpha, BranchPolicy branch, double leakage_tolerance) {
    require_positive_exponent(alpha);
    return [=](const PositionWavefunction& psi) {
        return apply_p_power(psi, alpha, branch, leakage_tolerance);
    };
}

StateMap kinetic_operator(HamiltonianSpec spec, double leakage_tolerance) {
    spec.validate();
    return [spec = std::move(spec), leakage_tolerance](const PositionWavefunction& psi) {
        return kinetic_apply(psi, spec, leakage_tolerance);
    };
}

StateMap potential_operator(HamiltonianSpec spec) {
    return [spec = std::move(spec)](const PositionWavefunction& psi) {
        return potential_apply(psi, spec);
    };
}

StateMap hamiltonian_operator(HamiltonianSpec spec, double leakage_tolerance) {
    spec.validate();
    return [spec = std::move(spec), leakage_tolerance](const PositionWavefunction& psi) {
        return hamiltonian_apply(psi, spec, leakage_tolerance);
    };
}

StateMap identity_operator() {
    return [](const PositionWavefunction& psi) { return psi; };
}

}  // namespace aqm

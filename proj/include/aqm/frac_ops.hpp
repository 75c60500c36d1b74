#pragma once

#include <functional>
#include <span>
#include <vector>

#include "aqm/grid.hpp"
#include "aqm/hamiltonian.hpp"

namespace aqm {

/// A linear map on grid states.
using StateMap = std::function<PositionWavefunction(const PositionWavefunction&)>;

/// Transforms to momentum space, multiplies sample k by multiplier[k]
/// (FFT ordering), transforms back. Throws NumericalError when the input
/// fails the leakage diagnostic; pass infinity to skip it.
PositionWavefunction apply_fourier_multiplier(const PositionWavefunction& psi,
                                              std::span<const Complex> multiplier,
                                              double leakage_tolerance = default_leakage_tolerance);

/// Multiplier table m(p_k) of p^alpha on the grid's momentum lattice.
ComplexVector p_power_multiplier(const Grid& grid, double alpha, BranchPolicy branch);

/// Multiplier table of the kinetic energy operator of `spec`.
ComplexVector kinetic_multiplier(const Grid& grid, const HamiltonianSpec& spec);

/// (-i hbar)^alpha D^alpha psi, realized as the momentum multiplier m(p).
/// A plane wave with lattice momentum p0 > 0 maps to p0^alpha times itself.
PositionWavefunction apply_p_power(const PositionWavefunction& psi, double alpha,
                                   BranchPolicy branch = BranchPolicy::riesz,
                                   double leakage_tolerance = default_leakage_tolerance);

/// (i hbar)^alpha D_p^alpha phi: multiplication by |x|^alpha carried out in
/// position space.
MomentumWavefunction apply_x_power_momentum(const MomentumWavefunction& phi, double alpha);

/// f(p^alpha) psi with f(y) = sum_n coefficients[n] y^n.
PositionWavefunction apply_function_of_p_power(const PositionWavefunction& psi, double alpha,
                                               std::span<const double> coefficients,
                                               BranchPolicy branch = BranchPolicy::riesz,
                                               double leakage_tolerance = default_leakage_tolerance);

/// <psi, p^alpha psi> computed in position space through apply_p_power.
Complex expectation_p_power_position(const PositionWavefunction& psi, double alpha,
                                     BranchPolicy branch = BranchPolicy::riesz);

PositionWavefunction kinetic_apply(const PositionWavefunction& psi, const HamiltonianSpec& spec,
                                   double leakage_tolerance = default_leakage_tolerance);
PositionWavefunction potential_apply(const PositionWavefunction& psi,
                                     const HamiltonianSpec& spec);
PositionWavefunction hamiltonian_apply(const PositionWavefunction& psi,
                                       const HamiltonianSpec& spec,
                                       double leakage_tolerance = default_leakage_tolerance);

/// <psi, T psi>, <psi, V psi>, <psi, H psi> for normalized psi.
double kinetic_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec);
double potential_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec);
double energy_expectation(const PositionWavefunction& psi, const HamiltonianSpec& spec);

/// |(phi, O psi) - (O phi, psi)| / (|phi| |O psi| + eps)
double hermiticity_residual(const StateMap& op, const PositionWavefunction& phi,
                            const PositionWavefunction& psi);

// Operator factories for use with hermiticity_residual and matrix_representation.
StateMap p_power_operator(double alpha, BranchPolicy branch = BranchPolicy::riesz,
                          double leakage_tolerance = default_leakage_tolerance);
StateMap kinetic_operator(HamiltonianSpec spec,
                          double leakage_tolerance = default_leakage_tolerance);
StateMap potential_operator(HamiltonianSpec spec);
StateMap hamiltonian_operator(HamiltonianSpec spec,
                              double leakage_tolerance = default_leakage_tolerance);
StateMap identity_operator();

}  // namespace aqm

#pragma once

#include <string>
#include <vector>

#include "aqm/hamiltonian.hpp"
#include "aqm/operator_matrix.hpp"

namespace aqm {

/// Eigenvalue, eigenvector in the operator's basis, and ||O c - lambda c|| / ||c||.
struct EigenPair {
    double lambda;
    CoefficientVector coefficients;
    double residual_norm;
};

struct SecularOptions {
    Eigen::Index dimension_cap = 2048;
    /// Number of lowest eigenpairs to return; 0 means the full spectrum.
    Eigen::Index count = 0;
    /// Check |det(O - lambda I)| at every eigenvalue when dimension <= 12.
    bool verify_determinant = true;
};

/// Spectrum of a Hermitian operator matrix by dense eigen-decomposition,
/// ascending (the lowest `options.count` pairs, or all of them). Eigenvectors are orthonormal; degenerate clusters are ordered
/// by the index of their dominant coefficient, and each vector's dominant
/// coefficient is made real and positive.
std::vector<EigenPair> solve_secular(const OperatorMatrix& o, const SecularOptions& options = {});

/// det(O - lambda I) by partial-pivot LU.
Complex characteristic_determinant(const OperatorMatrix& o, double lambda);

/// Hamiltonian matrix in a basis. Plane-wave bases are assembled directly
/// from the kinetic multiplier and the discrete Fourier coefficients of V;
/// other bases go through matrix_representation.
OperatorMatrix hamiltonian_matrix(const HamiltonianSpec& spec, const Basis& basis);

struct SpectrumResult {
    HamiltonianSpec spec;
    std::string basis_label;
    std::size_t basis_size = 0;
    Grid grid;
    std::vector<EigenPair> eigenpairs;            // lowest k, ascending
    std::vector<PositionWavefunction> states;     // normalized grid forms
    std::vector<double> grid_residuals;           // ||H psi - E psi|| / ||psi||
};

inline constexpr double stationary_residual_tolerance = 1e-6;

/// Lowest k stationary states of `spec` in `basis`. Throws BasisInsufficient
/// naming the worst state when a grid residual exceeds the tolerance.
SpectrumResult stationary_states(const HamiltonianSpec& spec, const Basis& basis, std::size_t k,
                                 double residual_tolerance = stationary_residual_tolerance);

/// 2 alpha <T> against <x V'(x)> for a stationary state.
struct VirialReport {
    double lhs;
    double rhs;
    double relative_residual;  // |lhs - rhs| / max(|lhs|, |rhs|)
    std::string state_label;
};

/// Throws PreconditionError unless psi is an eigenstate of the grid
/// Hamiltonian to `convergence_tolerance` (energy taken as <H>).
VirialReport virial_check(const PositionWavefunction& psi, const HamiltonianSpec& spec,
                          std::string state_label = "state",
                          double convergence_tolerance = stationary_residual_tolerance);

std::vector<VirialReport> virial_check(const SpectrumResult& spectrum);

}  // namespace aqm

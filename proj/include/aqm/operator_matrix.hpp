#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "aqm/frac_ops.hpp"
#include "aqm/grid.hpp"

namespace aqm {

/// O_ij = (psi_i, O psi_j) in a labelled orthonormal basis.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    std::string basis_label;
    bool hermitian = false;

    Eigen::Index dimension() const { return entries.rows(); }

    /// Builds the matrix and sets `hermitian` by measurement.
    static OperatorMatrix from_entries(Eigen::MatrixXcd entries, std::string basis_label);
};

/// max_ij |O_ij - conj(O_ji)| / max|O| (0 for the zero matrix).
double hermiticity_defect(const Eigen::MatrixXcd& m);

inline constexpr double hermitian_tolerance = 1e-10;

struct CoefficientVector {
    Eigen::VectorXcd entries;
    std::string basis_label;
};

enum class BasisKind { plane_wave, oscillator, custom };

/// Orthonormal set of grid states.
///
/// For plane-wave bases, `frequencies[i]` holds the integer lattice
/// frequency of state i.
struct Basis {
    std::string label;
    BasisKind kind = BasisKind::custom;
    std::vector<PositionWavefunction> states;
    std::vector<long> frequencies;

    std::size_t size() const { return states.size(); }
    const Grid& grid() const { return states.front().grid(); }
};

/// Lowest-|p| box-normalized plane waves exp(i p x / hbar)/sqrt(L), ordered
/// k = 0, 1, -1, 2, -2, ...
Basis plane_wave_basis(const Grid& grid, std::size_t size);

/// Hermite functions centred at the origin with length scale
/// sqrt(hbar / (m omega)), re-orthonormalized on the grid.
Basis oscillator_basis(const Grid& grid, std::size_t size, double length_scale);

/// Wraps an explicit state list; throws unless orthonormal within 1e-8.
Basis custom_basis(std::string label, std::vector<PositionWavefunction> states);

/// Modified Gram-Schmidt (two passes). Throws on linear dependence.
std::vector<PositionWavefunction> gram_schmidt(std::vector<PositionWavefunction> states);

/// max |(psi_i, psi_j) - delta_ij|
double orthonormality_defect(const std::vector<PositionWavefunction>& states);

inline constexpr double orthonormal_tolerance = 1e-8;

/// O_ij = (psi_i, op psi_j). Columns are computed independently.
OperatorMatrix matrix_representation(const StateMap& op, const Basis& basis);

/// b_i = sum_j O_ij a_j
CoefficientVector apply_matrix(const OperatorMatrix& op, const CoefficientVector& a);

/// a_i = (psi_i, psi)
CoefficientVector expand(const Basis& basis, const PositionWavefunction& psi);

/// psi = sum_i a_i psi_i
PositionWavefunction synthesize(const Basis& basis, const CoefficientVector& a);

/// Convenience constructors for matrices used in dynamics tests.
OperatorMatrix identity_matrix(Eigen::Index dim, std::string basis_label);

}  // namespace aqm

#pragma once

#include <Eigen/Dense>

#include "aqm/constants.hpp"
#include "aqm/operator_matrix.hpp"

namespace aqm {

/// O^H(t) = U^dagger(t, t0) O U(t, t0)
struct HeisenbergOperator {
    OperatorMatrix matrix;
    double time;
    double reference_time;
};

/// AB - BA. For Hermitian A and B the result is anti-Hermitian; this is
/// verified and a NumericalError raised otherwise.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// U(t, t0) = exp(-i H (t - t0) / hbar) through the Hermitian
/// eigen-decomposition of H.
OperatorMatrix time_translation(const OperatorMatrix& h, double t, double t0,
                                const PhysicalConstants& constants = PhysicalConstants::natural());

HeisenbergOperator heisenberg_transform(
    const OperatorMatrix& o, const OperatorMatrix& h, double t, double t0,
    const PhysicalConstants& constants = PhysicalConstants::natural());

/// a(t) = U(t, 0) a0, solving i hbar da_j/dt = sum_i H_ji a_i.
CoefficientVector coefficient_dynamics(const CoefficientVector& a0, const OperatorMatrix& h,
                                       double t,
                                       const PhysicalConstants& constants = PhysicalConstants::natural());

/// <a, O a> / <a, a>
Complex matrix_expectation(const OperatorMatrix& o, const CoefficientVector& a);

/// |d<O>/dt - (1/(i hbar)) <[O, H]>| at time t, with the derivative taken
/// by centered differences of step dt. The residual is O(dt^2).
double eom_residual(const OperatorMatrix& o, const OperatorMatrix& h, const CoefficientVector& psi0,
                    double t, double dt,
                    const PhysicalConstants& constants = PhysicalConstants::natural());

/// || dO^H/dt - (i/hbar)[H, O^H] ||_max at time t, centered differences of step dt.
double heisenberg_equation_residual(const OperatorMatrix& o, const OperatorMatrix& h, double t,
                                    double t0, double dt,
                                    const PhysicalConstants& constants = PhysicalConstants::natural());

/// |<psi(t)|O|psi(t)> - <psi(0)|O^H(t)|psi(0)>|
double picture_equivalence_residual(const OperatorMatrix& o, const OperatorMatrix& h,
                                    const CoefficientVector& psi0, double t,
                                    const PhysicalConstants& constants = PhysicalConstants::natural());

/// max over sorted eigenvalues of |lambda_i(A) - lambda_i(B)|; Hermitian inputs.
double spectrum_distance(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace aqm

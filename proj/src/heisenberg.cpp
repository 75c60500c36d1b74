#include "aqm/heisenberg.hpp"

#include <cmath>

#include "aqm/errors.hpp"

namespace aqm {

namespace {

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.basis_label != b.basis_label) throw PreconditionError("basis label mismatch");
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) {
        throw PreconditionError("dimension mismatch");
    }
}

void require_hermitian(const OperatorMatrix& h) {
    if (h.entries.rows() != h.entries.cols() || hermiticity_defect(h.entries) >= hermitian_tolerance) {
        throw PreconditionError("Hamiltonian matrix must be Hermitian");
    }
}

void require_state(const OperatorMatrix& h, const CoefficientVector& a) {
    if (h.basis_label != a.basis_label) throw PreconditionError("basis label mismatch");
    if (h.entries.cols() != a.entries.size()) throw PreconditionError("dimension mismatch");
}

}  // namespace

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_compatible(a, b);
    Eigen::MatrixXcd c = a.entries * b.entries - b.entries * a.entries;
    if (a.hermitian && b.hermitian) {
        const double scale = std::max(1.0, a.entries.cwiseAbs().maxCoeff() *
                                               b.entries.cwiseAbs().maxCoeff() *
                                               static_cast<double>(a.entries.rows()));
        const double defect = (c + c.adjoint()).cwiseAbs().maxCoeff();
        if (defect > 1e-10 * scale) {
            throw NumericalError("commutator of Hermitian matrices is not anti-Hermitian");
        }
    }
    return OperatorMatrix::from_entries(std::move(c), a.basis_label);
}

OperatorMatrix time_translation(const OperatorMatrix& h, double t, double t0,
                                const PhysicalConstants& constants) {
    require_hermitian(h);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.entries);
    if (eig.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
    const double scale = (t - t0) / constants.hbar;
    Eigen::VectorXcd phases(eig.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::polar(1.0, -eig.eigenvalues()(k) * scale);
    }
    const auto& v = eig.eigenvectors();
    Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
    const double defect =
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw NumericalError("time translation lost unitarity");
    return {std::move(u), h.basis_label, false};
}

HeisenbergOperator heisenberg_transform(const OperatorMatrix& o, const OperatorMatrix& h,
                                        double t, double t0, const PhysicalConstants& constants) {
    require_compatible(o, h);
    const auto u = time_translation(h, t, t0, constants);
    Eigen::MatrixXcd oh = u.entries.adjoint() * o.entries * u.entries;
    OperatorMatrix out{std::move(oh), o.basis_label, o.hermitian};
    if (o.hermitian) {
        // Unitary conjugation preserves Hermiticity up to rounding; restore it exactly.
        out.entries = 0.5 * (out.entries + out.entries.adjoint()).eval();
        const double scale = std::max(1.0, o.entries.cwiseAbs().maxCoeff());
        if (spectrum_distance(o, out) > 1e-8 * scale) {
            throw NumericalError("Heisenberg transform changed the spectrum");
        }
    }
    return {std::move(out), t, t0};
}

CoefficientVector coefficient_dynamics(const CoefficientVector& a0, const OperatorMatrix& h,
                                       double t, const PhysicalConstants& constants) {
    require_state(h, a0);
    const auto u = time_translation(h, t, 0.0, constants);
    return {u.entries * a0.entries, a0.basis_label};
}

Complex matrix_expectation(const OperatorMatrix& o, const CoefficientVector& a) {
    require_state(o, a);
    return a.entries.dot(o.entries * a.entries) / a.entries.squaredNorm();
}

double eom_residual(const OperatorMatrix& o, const OperatorMatrix& h, const CoefficientVector& psi0,
                    double t, double dt, const PhysicalConstants& constants) {
    require_compatible(o, h);
    require_state(h, psi0);
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    const auto forward = coefficient_dynamics(psi0, h, t + dt, constants);
    const auto backward = coefficient_dynamics(psi0, h, t - dt, constants);
    const auto now = coefficient_dynamics(psi0, h, t, constants);
    const Complex lhs =
        (matrix_expectation(o, forward) - matrix_expectation(o, backward)) / (2.0 * dt);
    const auto c = commutator(o, h);
    const Complex rhs = matrix_expectation(c, now) / Complex{0.0, constants.hbar};
    return std::abs(lhs - rhs);
}

double heisenberg_equation_residual(const OperatorMatrix& o, const OperatorMatrix& h, double t,
                                    double t0, double dt, const PhysicalConstants& constants) {
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    const auto plus = heisenberg_transform(o, h, t + dt, t0, constants).matrix.entries;
    const auto minus = heisenberg_transform(o, h, t - dt, t0, constants).matrix.entries;
    const auto now = heisenberg_transform(o, h, t, t0, constants).matrix.entries;
    const Eigen::MatrixXcd lhs = (plus - minus) / (2.0 * dt);
    const Eigen::MatrixXcd rhs =
        Complex{0.0, 1.0 / constants.hbar} * (h.entries * now - now * h.entries);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double picture_equivalence_residual(const OperatorMatrix& o, const OperatorMatrix& h,
                                    const CoefficientVector& psi0, double t,
                                    const PhysicalConstants& constants) {
    require_compatible(o, h);
    require_state(h, psi0);
    const auto evolved = coefficient_dynamics(psi0, h, t, constants);
    const Complex schroedinger = matrix_expectation(o, evolved);
    const auto oh = heisenberg_transform(o, h, t, 0.0, constants);
    const Complex heisenberg = matrix_expectation(oh.matrix, psi0);
    return std::abs(schroedinger - heisenberg);
}

double spectrum_distance(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.entries.rows() != b.entries.rows()) throw PreconditionError("dimension mismatch");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(a.entries, Eigen::EigenvaluesOnly);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(b.entries, Eigen::EigenvaluesOnly);
    return (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
}

}  // namespace aqm

#include "aqm/operator_matrix.hpp"

#include <cmath>
#include <numbers>

#include "aqm/errors.hpp"
#include "aqm/parallel.hpp"

namespace aqm {

namespace {

Eigen::MatrixXcd sample_matrix(const std::vector<PositionWavefunction>& states) {
    const auto n = static_cast<Eigen::Index>(states.front().size());
    Eigen::MatrixXcd b(n, static_cast<Eigen::Index>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
        b.col(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const Eigen::VectorXcd>(states[i].samples().data(), n);
    }
    return b;
}

void require_label(const std::string& a, const std::string& b) {
    if (a != b) throw PreconditionError("basis label mismatch: '" + a + "' vs '" + b + "'");
}

}  // namespace

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

OperatorMatrix OperatorMatrix::from_entries(Eigen::MatrixXcd entries, std::string basis_label) {
    if (entries.rows() != entries.cols()) throw PreconditionError("operator matrix must be square");
    const bool herm = hermiticity_defect(entries) < hermitian_tolerance;
    return {std::move(entries), std::move(basis_label), herm};
}

double orthonormality_defect(const std::vector<PositionWavefunction>& states) {
    if (states.empty()) return 0.0;
    const auto b = sample_matrix(states);
    const Eigen::MatrixXcd gram = b.adjoint() * b * states.front().grid().dx();
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::vector<PositionWavefunction> gram_schmidt(std::vector<PositionWavefunction> states) {
    std::vector<PositionWavefunction> out;
    out.reserve(states.size());
    for (auto& s : states) {
        PositionWavefunction v = s;
        const double start = norm(v);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : out) v = combine(1.0, v, -inner_product(q, v), q);
        }
        if (norm(v) < 1e-10 * start || norm(v) == 0.0) {
            throw PreconditionError("basis states are linearly dependent");
        }
        out.push_back(normalize(v));
    }
    return out;
}

Basis plane_wave_basis(const Grid& grid, std::size_t size) {
    if (size == 0 || size > grid.size()) throw PreconditionError("plane-wave basis size out of range");
    Basis basis;
    basis.label = "plane_wave[" + std::to_string(size) + "]";
    basis.kind = BasisKind::plane_wave;
    const std::size_t n = grid.size();
    const double amp = 1.0 / std::sqrt(grid.length());
    const double shift = grid.x_min() / grid.length();
    for (std::size_t i = 0; i < size; ++i) {
        long k = (i % 2 == 1) ? static_cast<long>((i + 1) / 2) : -static_cast<long>(i / 2);
        if (k == static_cast<long>(n / 2)) k = -k;  // Nyquist sample lives at -n/2
        basis.frequencies.push_back(k);
        ComplexVector s(n);
        const long kn = ((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
        double origin = static_cast<double>(k) * shift;
        origin -= std::round(origin);
        for (std::size_t j = 0; j < n; ++j) {
            const auto turns_int = static_cast<double>((static_cast<std::size_t>(kn) * j) % n) /
                                   static_cast<double>(n);
            s[j] = std::polar(amp, 2.0 * std::numbers::pi * (origin + turns_int));
        }
        basis.states.emplace_back(grid, std::move(s));
    }
    return basis;
}

Basis oscillator_basis(const Grid& grid, std::size_t size, double length_scale) {
    if (size == 0) throw PreconditionError("oscillator basis size must be positive");
    if (!(length_scale > 0.0)) throw PreconditionError("oscillator length scale must be positive");
    const std::size_t n = grid.size();
    const auto& x = grid.positions();
    std::vector<PositionWavefunction> raw;
    std::vector<double> prev(n, 0.0);
    std::vector<double> cur(n);
    const double norm0 = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(length_scale));
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = x[j] / length_scale;
        cur[j] = norm0 * std::exp(-0.5 * xi * xi);
    }
    for (std::size_t m = 0; m < size; ++m) {
        raw.emplace_back(grid, ComplexVector(cur.begin(), cur.end()));
        std::vector<double> next(n);
        const double a = std::sqrt(2.0 / static_cast<double>(m + 1));
        const double b = std::sqrt(static_cast<double>(m) / static_cast<double>(m + 1));
        for (std::size_t j = 0; j < n; ++j) {
            next[j] = a * (x[j] / length_scale) * cur[j] - b * prev[j];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    Basis basis;
    basis.label = "oscillator[" + std::to_string(size) + "]";
    basis.kind = BasisKind::oscillator;
    basis.states = gram_schmidt(std::move(raw));
    return basis;
}

Basis custom_basis(std::string label, std::vector<PositionWavefunction> states) {
    if (states.empty()) throw PreconditionError("basis must not be empty");
    for (const auto& s : states) {
        if (!(s.grid() == states.front().grid())) {
            throw PreconditionError("basis states live on different grids");
        }
    }
    if (orthonormality_defect(states) > orthonormal_tolerance) {
        throw PreconditionError("basis is not orthonormal within 1e-8");
    }
    Basis basis;
    basis.label = std::move(label);
    basis.states = std::move(states);
    return basis;
}

OperatorMatrix matrix_representation(const StateMap& op, const Basis& basis) {
    if (basis.states.empty()) throw PreconditionError("basis must not be empty");
    if (orthonormality_defect(basis.states) > orthonormal_tolerance) {
        throw PreconditionError("basis is not orthonormal within 1e-8");
    }
    const std::size_t k = basis.size();
    std::vector<PositionWavefunction> images(k, basis.states.front());
    parallel_for(k, [&](std::size_t j) { images[j] = op(basis.states[j]); });
    const auto b = sample_matrix(basis.states);
    const auto ob = sample_matrix(images);
    Eigen::MatrixXcd entries = b.adjoint() * ob * basis.grid().dx();
    return OperatorMatrix::from_entries(std::move(entries), basis.label);
}

CoefficientVector apply_matrix(const OperatorMatrix& op, const CoefficientVector& a) {
    require_label(op.basis_label, a.basis_label);
    if (op.entries.cols() != a.entries.size()) throw PreconditionError("dimension mismatch");
    return {op.entries * a.entries, a.basis_label};
}

CoefficientVector expand(const Basis& basis, const PositionWavefunction& psi) {
    Eigen::VectorXcd a(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        a(static_cast<Eigen::Index>(i)) = inner_product(basis.states[i], psi);
    }
    return {std::move(a), basis.label};
}

PositionWavefunction synthesize(const Basis& basis, const CoefficientVector& a) {
    require_label(basis.label, a.basis_label);
    if (static_cast<std::size_t>(a.entries.size()) != basis.size()) {
        throw PreconditionError("dimension mismatch");
    }
    const Eigen::VectorXcd v = sample_matrix(basis.states) * a.entries;
    return {basis.grid(), ComplexVector(v.data(), v.data() + v.size())};
}

OperatorMatrix identity_matrix(Eigen::Index dim, std::string basis_label) {
    return {Eigen::MatrixXcd::Identity(dim, dim), std::move(basis_label), true};
}

}  // namespace aqm

#include "aqm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "aqm/errors.hpp"
#include "aqm/frac_ops.hpp"
#include "fft.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace aqm {

namespace {

struct Decomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

// Lowest `count` eigenpairs by LAPACK's MRRR drivers. Real-symmetric
// matrices (imaginary parts at rounding level) take the real driver.
Decomposition hermitian_eigen(const Eigen::MatrixXcd& m, Eigen::Index count) {
    const auto n = static_cast<lapack_int>(m.rows());
    const auto want = static_cast<lapack_int>(count);
    const char range = want < n ? 'I' : 'A';
    lapack_int found = 0;
    Eigen::VectorXd w(n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max<lapack_int>(n, 1)));
    lapack_int info = 0;
    Decomposition out;
    if (m.imag().norm() <= 1e-13 * m.norm()) {
        Eigen::MatrixXd a = 0.5 * (m.real() + m.real().transpose());
        Eigen::MatrixXd z(n, want);
        info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', range, 'L', n, a.data(), n, 0.0, 0.0, 1, want,
                              0.0, &found, w.data(), z.data(), n, support.data());
        out.vectors = z.leftCols(found).cast<Complex>();
    } else {
        Eigen::MatrixXcd a = m;
        Eigen::MatrixXcd z(n, want);
        info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', range, 'L', n, a.data(), n, 0.0, 0.0, 1, want,
                              0.0, &found, w.data(), z.data(), n, support.data());
        out.vectors = z.leftCols(found);
    }
    if (info != 0 || found != want) throw NumericalError("eigen-decomposition failed");
    out.values = w.head(found);
    return out;
}

Eigen::Index dominant_index(const Eigen::VectorXcd& v) {
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    return idx;
}

}  // namespace

Complex characteristic_determinant(const OperatorMatrix& o, double lambda) {
    const Eigen::MatrixXcd shifted =
        o.entries - lambda * Eigen::MatrixXcd::Identity(o.entries.rows(), o.entries.cols());
    return shifted.partialPivLu().determinant();
}

std::vector<EigenPair> solve_secular(const OperatorMatrix& o, const SecularOptions& options) {
    const Eigen::Index n = o.entries.rows();
    if (n != o.entries.cols() || n == 0) throw PreconditionError("operator matrix must be square");
    if (!o.hermitian || hermiticity_defect(o.entries) >= hermitian_tolerance) {
        throw PreconditionError("secular equation requires a Hermitian operator matrix");
    }
    if (n > options.dimension_cap) throw PreconditionError("matrix dimension exceeds cap");
    if (options.count < 0) throw PreconditionError("eigenpair count must be non-negative");
    const Eigen::Index count = options.count == 0 ? n : std::min(options.count, n);

    auto [values, vectors] = hermitian_eigen(o.entries, count);

    // Degenerate clusters: re-orthonormalize, then order by dominant index.
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
    std::iota(order.begin(), order.end(), 0);
    for (Eigen::Index start = 0; start < count;) {
        Eigen::Index end = start + 1;
        while (end < count && values(end) - values(end - 1) <= 1e-10 * scale) ++end;
        if (end - start > 1) {
            for (Eigen::Index i = start; i < end; ++i) {
                Eigen::VectorXcd v = vectors.col(i);
                for (Eigen::Index j = start; j < i; ++j) v -= vectors.col(j).dot(v) * vectors.col(j);
                vectors.col(i) = v.normalized();
            }
            std::stable_sort(order.begin() + start, order.begin() + end,
                             [&](Eigen::Index a, Eigen::Index b) {
                                 return dominant_index(vectors.col(a)) < dominant_index(vectors.col(b));
                             });
        }
        start = end;
    }

    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index idx : order) {
        Eigen::VectorXcd c = vectors.col(idx);
        const Complex dom = c(dominant_index(c));
        c *= std::conj(dom) / std::abs(dom);
        const double lambda = values(idx);
        const double residual = (o.entries * c - lambda * c).norm() / c.norm();
        out.push_back({lambda, {std::move(c), o.basis_label}, residual});
    }

    if (options.verify_determinant && n <= 12) {
        const double norm = std::max(o.entries.norm(), std::numeric_limits<double>::min());
        const double threshold = 1e3 * static_cast<double>(n) *
                                 std::numeric_limits<double>::epsilon() *
                                 std::pow(2.0 * norm, static_cast<double>(n));
        for (const auto& pair : out) {
            if (std::abs(characteristic_determinant(o, pair.lambda)) > threshold) {
                throw NumericalError("eigenvalue fails the characteristic-determinant check");
            }
        }
    }
    return out;
}

OperatorMatrix hamiltonian_matrix(const HamiltonianSpec& spec, const Basis& basis) {
    if (basis.kind != BasisKind::plane_wave) {
        return matrix_representation(hamiltonian_operator(spec, std::numeric_limits<double>::infinity()),
                                     basis);
    }
    spec.validate();
    const Grid& grid = basis.grid();
    const std::size_t n = grid.size();
    const auto v = spec.potential.evaluate(grid);
    ComplexVector w(v.begin(), v.end());
    detail::fft_backward(w);  // w[q] = sum_j V_j exp(+2 pi i q j / n)
    const double inv_n = 1.0 / static_cast<double>(n);
    const double shift = grid.x_min() / grid.length();
    const auto k = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            const long q = basis.frequencies[static_cast<std::size_t>(b)] -
                           basis.frequencies[static_cast<std::size_t>(a)];
            const auto nn = static_cast<long>(n);
            const auto qi = static_cast<std::size_t>(((q % nn) + nn) % nn);
            double turns = static_cast<double>(q) * shift;
            turns -= std::round(turns);
            h(a, b) = w[qi] * inv_n * std::polar(1.0, 2.0 * std::numbers::pi * turns);
        }
        const double p = static_cast<double>(basis.frequencies[static_cast<std::size_t>(a)]) * grid.dp();
        h(a, a) += spec.kinetic_energy(p);
    }
    return OperatorMatrix::from_entries(std::move(h), basis.label);
}

SpectrumResult stationary_states(const HamiltonianSpec& spec, const Basis& basis, std::size_t k,
                                 double residual_tolerance) {
    if (k == 0 || k > basis.size()) throw PreconditionError("requested state count out of range");
    const auto h = hamiltonian_matrix(spec, basis);
    SecularOptions opts;
    // A few extra pairs so a degenerate cluster at the cut is ordered as a whole.
    opts.count = static_cast<Eigen::Index>(std::min(basis.size(), k + 8));
    auto pairs = solve_secular(h, opts);
    pairs.resize(k);

    SpectrumResult result{spec, basis.label, basis.size(), basis.grid(), {}, {}, {}};
    const auto no_leak_check = std::numeric_limits<double>::infinity();
    double worst = -1.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto psi = normalize(synthesize(basis, pairs[i].coefficients));
        const auto hpsi = hamiltonian_apply(psi, spec, no_leak_check);
        const double residual = norm(combine(1.0, hpsi, -pairs[i].lambda, psi));
        if (residual > worst) {
            worst = residual;
            worst_index = i;
        }
        result.states.push_back(psi);
        result.grid_residuals.push_back(residual);
    }
    if (worst > residual_tolerance) throw BasisInsufficient(worst_index, worst);
    result.eigenpairs = std::move(pairs);
    return result;
}

VirialReport virial_check(const PositionWavefunction& psi, const HamiltonianSpec& spec,
                          std::string state_label, double convergence_tolerance) {
    const auto state = normalize(psi);
    const auto hpsi = hamiltonian_apply(state, spec, std::numeric_limits<double>::infinity());
    const double energy = inner_product(state, hpsi).real();
    const double residual = norm(combine(1.0, hpsi, -energy, state));
    if (!(residual <= convergence_tolerance)) {
        throw PreconditionError("virial check requires a converged stationary state (residual " +
                                std::to_string(residual) + ")");
    }
    const double lhs = 2.0 * spec.alpha * kinetic_expectation(state, spec);
    const auto xv = spec.potential.virial_product(state.grid());
    double rhs = 0.0;
    for (std::size_t j = 0; j < xv.size(); ++j) rhs += std::norm(state[j]) * xv[j];
    rhs *= state.grid().dx();
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    const double rel = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
    return {lhs, rhs, rel, std::move(state_label)};
}

std::vector<VirialReport> virial_check(const SpectrumResult& spectrum) {
    std::vector<VirialReport> out;
    for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
        out.push_back(virial_check(spectrum.states[i], spectrum.spec, "n=" + std::to_string(i)));
    }
    return out;
}

}  // namespace aqm

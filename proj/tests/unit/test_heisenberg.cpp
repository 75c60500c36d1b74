#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aqm/errors.hpp"
#include "aqm/heisenberg.hpp"
#include "random_states.hpp"

using namespace aqm;
using aqm::testing::random_hermitian;
using aqm::testing::random_vector;

namespace {

OperatorMatrix herm(Eigen::Index n, std::mt19937_64& rng) {
    return OperatorMatrix::from_entries(random_hermitian(n, rng), "r");
}

CoefficientVector vec(Eigen::Index n, std::mt19937_64& rng) { return {random_vector(n, rng), "r"}; }

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("heisenberg") {

TEST_CASE("commutator identities") {
    std::mt19937_64 rng(1);
    const auto a = herm(6, rng);
    const auto b = herm(6, rng);
    CHECK(max_abs(commutator(a, a).entries) < 1e-14);
    CHECK(max_abs(commutator(a, identity_matrix(6, "r")).entries) < 1e-14);
    const auto c = commutator(a, b);
    CHECK(max_abs(c.entries + c.entries.adjoint()) < 1e-12);
    CHECK(max_abs(commutator(b, a).entries + c.entries) < 1e-14);
    CHECK_THROWS_AS(commutator(a, identity_matrix(6, "other")), PreconditionError);
    CHECK_THROWS_AS(commutator(a, identity_matrix(5, "r")), PreconditionError);
}

TEST_CASE("position and momentum in a truncated oscillator basis") {
    // x = (a + a^dag)/sqrt 2, p = i (a^dag - a)/sqrt 2 with hbar = m = omega = 1.
    const Eigen::Index n = 12;
    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXcd x = (lower + lower.adjoint()) / std::sqrt(2.0);
    const Eigen::MatrixXcd p = Complex{0.0, 1.0} * (lower.adjoint() - lower) / std::sqrt(2.0);
    const auto c = commutator(OperatorMatrix::from_entries(x, "ho"), OperatorMatrix::from_entries(p, "ho"));
    for (Eigen::Index i = 0; i < n - 1; ++i) CHECK(std::abs(c.entries(i, i) - Complex{0.0, 1.0}) < 1e-12);
    // The last row carries the truncation: [x, p]_{n-1,n-1} = -i (n - 1).
    CHECK(std::abs(c.entries(n - 1, n - 1) - Complex{0.0, -static_cast<double>(n - 1)}) < 1e-12);
}

TEST_CASE("time translation") {
    std::mt19937_64 rng(2);
    const auto h = herm(8, rng);
    CHECK(max_abs(time_translation(h, 1.3, 1.3).entries - Eigen::MatrixXcd::Identity(8, 8)) < 1e-13);
    const auto u21 = time_translation(h, 2.0, 0.7);
    const auto u10 = time_translation(h, 0.7, -0.4);
    const auto u20 = time_translation(h, 2.0, -0.4);
    CHECK(max_abs(u21.entries * u10.entries - u20.entries) < 1e-10);
    CHECK(max_abs(u20.entries.adjoint() * u20.entries - Eigen::MatrixXcd::Identity(8, 8)) < 1e-12);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d.diagonal() << 0.5, -1.0, 2.0;
    const auto ud = time_translation(OperatorMatrix::from_entries(d, "d"), 0.9, 0.0);
    for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK(std::abs(ud.entries(k, k) - std::polar(1.0, -d(k, k).real() * 0.9)) < 1e-14);
    }

    auto c = PhysicalConstants::natural();
    c.hbar = 2.0;
    c.h_planck = 4.0 * std::numbers::pi;
    const auto uh = time_translation(OperatorMatrix::from_entries(d, "d"), 0.9, 0.0, c);
    CHECK(std::abs(uh.entries(2, 2) - std::polar(1.0, -2.0 * 0.9 / 2.0)) < 1e-14);

    Eigen::MatrixXcd bad = d;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(time_translation(OperatorMatrix::from_entries(bad, "d"), 1.0, 0.0), PreconditionError);
}

TEST_CASE("Heisenberg transform") {
    std::mt19937_64 rng(3);
    const auto h = herm(6, rng);
    const auto o = herm(6, rng);
    CHECK(max_abs(heisenberg_transform(o, h, 0.4, 0.4).matrix.entries - o.entries) < 1e-13);

    // A polynomial in H commutes with H.
    const auto f = OperatorMatrix::from_entries(h.entries * h.entries - 0.3 * h.entries, "r");
    CHECK(max_abs(heisenberg_transform(f, h, 5.0, 0.0).matrix.entries - f.entries) < 1e-10);

    const auto oh = heisenberg_transform(o, h, 2.5, 0.0);
    CHECK(spectrum_distance(o, oh.matrix) < 1e-10);
    CHECK(oh.matrix.hermitian);
    CHECK(oh.time == 2.5);

    // Second-order residual of the Heisenberg equation.
    const double r1 = heisenberg_equation_residual(o, h, 1.0, 0.0, 1e-2);
    const double r2 = heisenberg_equation_residual(o, h, 1.0, 0.0, 5e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("coefficient dynamics") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d.diagonal() << 0.1, 0.7, -0.3, 1.9;
    const auto h = OperatorMatrix::from_entries(d, "d");
    CoefficientVector a0{Eigen::VectorXcd::Constant(4, Complex{0.5, 0.0}), "d"};
    const auto at = coefficient_dynamics(a0, h, 3.0);
    for (Eigen::Index k = 0; k < 4; ++k) {
        CHECK(std::abs(at.entries(k) - 0.5 * std::polar(1.0, -d(k, k).real() * 3.0)) < 1e-14);
    }

    std::mt19937_64 rng(4);
    const auto hr = herm(10, rng);
    const auto a = vec(10, rng);
    for (double t : {0.1, 1.0, 50.0}) {
        CHECK(coefficient_dynamics(a, hr, t).entries.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(coefficient_dynamics(CoefficientVector{a.entries, "x"}, hr, 1.0), PreconditionError);
}

TEST_CASE("two-level Rabi oscillation") {
    // H = (Delta/2) sigma_x: population of |0> is cos^2(Delta t / 2 hbar).
    const double delta = 0.8;
    Eigen::MatrixXcd sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const auto h = OperatorMatrix::from_entries(0.5 * delta * sx, "q");
    CoefficientVector a0{Eigen::Vector2cd(1.0, 0.0), "q"};
    const double period = 2.0 * std::numbers::pi / delta;
    for (double t : {0.0, 0.3 * period, 0.5 * period, period, 2.7 * period}) {
        const auto a = coefficient_dynamics(a0, h, t);
        CHECK(std::norm(a.entries(0)) == doctest::Approx(std::pow(std::cos(delta * t / 2.0), 2)).epsilon(1e-12));
    }
    CHECK(std::abs(coefficient_dynamics(a0, h, period).entries(0) + 1.0) < 1e-12);
}

TEST_CASE("equation of motion residual") {
    std::mt19937_64 rng(5);
    const auto h = herm(8, rng);
    const auto psi = vec(8, rng);
    CHECK(eom_residual(h, h, psi, 0.6, 1e-3) < 1e-12);
    CHECK(eom_residual(identity_matrix(8, "r"), h, psi, 0.6, 1e-3) < 1e-12);
    const auto o = herm(8, rng);
    const double r1 = eom_residual(o, h, psi, 0.6, 1e-2);
    const double r2 = eom_residual(o, h, psi, 0.6, 5e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    CHECK_THROWS_AS(eom_residual(o, h, psi, 0.6, 0.0), PreconditionError);
}

TEST_CASE("picture equivalence") {
    std::mt19937_64 rng(6);
    const auto h = herm(16, rng);
    const auto o = herm(16, rng);
    const auto psi = vec(16, rng);
    CHECK(picture_equivalence_residual(o, h, psi, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(picture_equivalence_residual(o, h, psi, t) < 1e-8);
        CHECK(picture_equivalence_residual(h, h, psi, t) < 1e-10);
    }
}

}  // TEST_SUITE

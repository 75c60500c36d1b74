#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aqm/constants.hpp"
#include "aqm/errors.hpp"
#include "aqm/grid.hpp"
#include "random_states.hpp"

using namespace aqm;
using aqm::testing::random_smooth_state;

namespace {

PositionWavefunction gaussian(const Grid& g, double sigma, double x0 = 0.0, double p0 = 0.0) {
    ComplexVector s(g.size());
    const double c = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.position(j) - x0;
        s[j] = c * std::exp(-x * x / (4.0 * sigma * sigma)) * std::polar(1.0, p0 * x / g.hbar());
    }
    return {g, s};
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("constants sets validate") {
    CHECK_NOTHROW(PhysicalConstants::precise().validate());
    CHECK_NOTHROW(PhysicalConstants::rounded().validate());
    CHECK_NOTHROW(PhysicalConstants::natural().validate());
    auto bad = PhysicalConstants::natural();
    bad.h_planck *= 1.001;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = PhysicalConstants::natural();
    bad.electron_mass = 0.0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    CHECK(PhysicalConstants::natural().coulomb_strength() == doctest::Approx(1.0));
}

TEST_CASE("make_grid lattice") {
    const auto g = make_grid(8, -4.0, 4.0);
    CHECK(g.dx() == doctest::Approx(1.0));
    const auto p = g.momenta_ascending();
    REQUIRE(p.size() == 8);
    for (int k = -4; k < 4; ++k) {
        CHECK(p[static_cast<std::size_t>(k + 4)] ==
              doctest::Approx(2.0 * std::numbers::pi * k / 8.0));
    }
    CHECK(g.frequency(0) == 0);
    CHECK(g.frequency(3) == 3);
    CHECK(g.frequency(4) == -4);
    CHECK(g.frequency(7) == -1);
    for (long k = -4; k < 4; ++k) CHECK(g.frequency(g.index_of_frequency(k)) == k);
    CHECK(g.p_max() == doctest::Approx(std::numbers::pi));

    CHECK(make_grid(1024, -50.0, 50.0).dx() == doctest::Approx(0.09765625));
    CHECK_THROWS_AS(make_grid(7, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_grid(4, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_grid(8, 1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_grid(8, -1.0, 1.0, 0.0), PreconditionError);
}

TEST_CASE("momentum lattice is symmetric apart from Nyquist") {
    const auto g = make_grid(64, -3.0, 5.0);
    const auto p = g.momenta_ascending();
    for (std::size_t i = 1; i < 32; ++i) CHECK(p[32 + i] == doctest::Approx(-p[32 - i]));
    CHECK(p[0] == doctest::Approx(-g.p_max()));
}

TEST_CASE("lattice plane wave transforms to a single sample") {
    const auto g = make_grid(64, -5.0, 7.0);
    const long k0 = 5;
    const double p0 = 2.0 * std::numbers::pi * static_cast<double>(k0) / g.length();
    ComplexVector s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        s[j] = std::polar(1.0 / std::sqrt(g.length()), p0 * g.position(j));
    }
    const auto phi = forward_transform(PositionWavefunction(g, s));
    const std::size_t at = g.index_of_frequency(k0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (j == at) {
            CHECK(std::abs(phi[j]) * std::abs(phi[j]) * g.dp() == doctest::Approx(1.0));
        } else {
            CHECK(std::abs(phi[j]) < 1e-12);
        }
    }
}

TEST_CASE("Gaussian transforms to the analytic momentum Gaussian") {
    const double sigma = 1.3;
    const double hbar = 0.7;
    const auto g = make_grid(512, -30.0, 30.0, hbar);
    const auto phi = forward_transform(gaussian(g, sigma));
    const double c = std::pow(2.0 * sigma * sigma / (std::numbers::pi * hbar * hbar), 0.25);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double p = g.momentum(k);
        const double expected = c * std::exp(-sigma * sigma * p * p / (hbar * hbar));
        worst = std::max(worst, std::abs(phi[k] - expected));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("shifted packet picks up the translation phase") {
    // psi(x - a) -> exp(-i p a / hbar) phi(p)
    const auto g = make_grid(256, -20.0, 20.0);
    const auto phi0 = forward_transform(gaussian(g, 1.0));
    const auto phi1 = forward_transform(gaussian(g, 1.0, 2.5));
    for (std::size_t k = 0; k < g.size(); k += 7) {
        const Complex expected = phi0[k] * std::polar(1.0, -g.momentum(k) * 2.5);
        CHECK(std::abs(phi1[k] - expected) < 1e-12);
    }
}

TEST_CASE("round trip, Parseval and linearity on random states") {
    const auto g = make_grid(256, -25.0, 25.0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_smooth_state(g, rng);
        const auto b = random_smooth_state(g, rng);
        const auto fa = forward_transform(a);
        CHECK(std::abs(norm_squared(fa) - norm_squared(a)) < 1e-10);
        const auto back = inverse_transform(fa);
        CHECK(aqm::testing::relative_difference(back, a) < 1e-12);

        const Complex ca{0.3, -1.2};
        const Complex cb{-0.8, 0.1};
        const auto lhs = forward_transform(combine(ca, a, cb, b));
        const auto fb = forward_transform(b);
        double worst = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            worst = std::max(worst, std::abs(lhs[k] - (ca * fa[k] + cb * fb[k])));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("normalize") {
    const auto g = make_grid(128, -15.0, 15.0);
    const auto psi = gaussian(g, 1.0);
    const auto n = normalize(psi);
    CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(n[j] - psi[j]) < 1e-12);

    ComplexVector scaled(psi.samples());
    for (auto& v : scaled) v *= 3.0;
    const auto n3 = normalize(PositionWavefunction(g, scaled));
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(n3[j] - n[j]) < 1e-14);

    CHECK_THROWS_AS(normalize(PositionWavefunction(g, ComplexVector(g.size()))),
                    PreconditionError);
    CHECK_THROWS_AS(PositionWavefunction(g, ComplexVector(5)), PreconditionError);
}

TEST_CASE("position power expectation") {
    const auto g = make_grid(1024, -40.0, 40.0);
    const double sigma = 1.7;
    const auto psi = gaussian(g, sigma, 0.0, 0.4);

    // Oracle: quadrature of the analytic density, independent of the samples.
    auto oracle = [&](double alpha) {
        double s = 0.0;
        for (double x : g.positions()) {
            const double rho = std::exp(-x * x / (2.0 * sigma * sigma)) /
                               std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
            s += rho * std::pow(std::abs(x), alpha);
        }
        return s * g.dx();
    };
    CHECK(expectation_x_power(psi, 2.0) == doctest::Approx(sigma * sigma).epsilon(1e-12));
    CHECK(expectation_x_power(psi, 0.7) == doctest::Approx(oracle(0.7)).epsilon(1e-12));
    CHECK(expectation_x_power(psi, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // Mirror x -> -x on a symmetric lattice (index j -> n - j about x = 0).
    const auto off = gaussian(g, 1.1, 3.0);
    ComplexVector mirrored(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) mirrored[(g.size() - j) % g.size()] = off[j];
    const PositionWavefunction m(g, mirrored);
    CHECK(expectation_x_power(m, 1.3) == doctest::Approx(expectation_x_power(off, 1.3)));

    ComplexVector doubled(psi.samples());
    for (auto& v : doubled) v *= 2.0;
    CHECK_THROWS_AS(expectation_x_power(PositionWavefunction(g, doubled), 1.0), PreconditionError);
    CHECK(expectation_x_power(PositionWavefunction(g, doubled), 2.0, NormalizationPolicy::warn) ==
          doctest::Approx(4.0 * sigma * sigma));
    CHECK_THROWS_AS(expectation_x_power(psi, -1.0), PreconditionError);
}

TEST_CASE("momentum power expectation") {
    const auto g = make_grid(256, -30.0, 30.0);
    const long k0 = 9;
    const double p0 = k0 * g.dp();
    ComplexVector s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        s[j] = std::polar(1.0 / std::sqrt(g.length()), p0 * g.position(j));
    }
    const auto phi = forward_transform(PositionWavefunction(g, s));
    for (double alpha : {0.3, 1.0, 1.7, 2.5}) {
        const Complex v = expectation_p_power_momentum(phi, alpha);
        CHECK(v.real() == doctest::Approx(std::pow(p0, alpha)).epsilon(1e-12));
        CHECK(std::abs(v.imag()) < 1e-12);
    }

    // Gaussian: <p^2> = hbar^2 / (4 sigma^2).
    const double sigma = 1.5;
    const auto gp = forward_transform(gaussian(g, sigma));
    CHECK(expectation_p_power_momentum(gp, 2.0).real() ==
          doctest::Approx(1.0 / (4.0 * sigma * sigma)).epsilon(1e-12));
}

TEST_CASE("leakage diagnostic") {
    const auto g = make_grid(256, -20.0, 20.0);
    CHECK(measure_leakage(gaussian(g, 1.0)).value() < 1e-12);
    CHECK_NOTHROW(require_representable(gaussian(g, 1.0)));

    // Lattice plane wave: boundary is large, spectrum is clean.
    ComplexVector pw(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) pw[j] = std::polar(1.0, 3.0 * g.dp() * g.position(j));
    const auto r = measure_leakage(PositionWavefunction(g, pw));
    CHECK(r.boundary_amplitude > 0.5);
    CHECK(r.value() < 1e-12);

    // Smooth packet sitting across the periodic seam.
    const auto wide = gaussian(g, 1.0, 19.0);
    CHECK(measure_leakage(wide).value() > 1e-8);
    CHECK_THROWS_AS(require_representable(wide), NumericalError);
}

}  // TEST_SUITE

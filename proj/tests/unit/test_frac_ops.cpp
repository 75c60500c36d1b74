#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "aqm/dynamics.hpp"
#include "aqm/errors.hpp"
#include "aqm/frac_ops.hpp"
#include "random_states.hpp"

using namespace aqm;
using aqm::testing::random_smooth_state;
using aqm::testing::relative_difference;

namespace {

PositionWavefunction lattice_wave(const Grid& g, long k) {
    ComplexVector s(g.size());
    const double p = static_cast<double>(k) * g.dp();
    for (std::size_t j = 0; j < g.size(); ++j) {
        s[j] = std::polar(1.0 / std::sqrt(g.length()), p * g.position(j) / g.hbar());
    }
    return {g, s};
}

PositionWavefunction gaussian(const Grid& g, double sigma, double x0 = 0.0, double p0 = 0.0) {
    ComplexVector s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.position(j) - x0;
        s[j] = std::exp(-x * x / (4.0 * sigma * sigma)) * std::polar(1.0, p0 * x / g.hbar());
    }
    return normalize(PositionWavefunction(g, s));
}

// -hbar^2 psi'' by the 8th-order central stencil (periodic indexing).
PositionWavefunction minus_second_derivative_fd(const PositionWavefunction& psi) {
    static constexpr std::array<double, 5> c = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0,
                                                8.0 / 315.0, -1.0 / 560.0};
    const auto& g = psi.grid();
    const std::size_t n = g.size();
    const double h2 = g.dx() * g.dx();
    ComplexVector out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = c[0] * psi[j];
        for (std::size_t m = 1; m < c.size(); ++m) {
            acc += c[m] * (psi[(j + m) % n] + psi[(j + n - m) % n]);
        }
        out[j] = -g.hbar() * g.hbar() * acc / h2;
    }
    return {g, out};
}

HamiltonianSpec harmonic_spec(double alpha, double k = 1.0) {
    HamiltonianSpec s;
    s.alpha = FractionalExponent(alpha);
    s.potential = Potential::harmonic(k);
    return s;
}

}  // namespace

TEST_SUITE("frac_ops") {

TEST_CASE("exponent and potential validation") {
    CHECK_THROWS_AS(FractionalExponent(0.0), PreconditionError);
    CHECK_THROWS_AS(FractionalExponent(-1.0), PreconditionError);
    CHECK_THROWS_AS(FractionalExponent(std::nan("")), PreconditionError);
    CHECK_THROWS_AS(Potential::soft_coulomb(1.0, 0.0), PreconditionError);
    HamiltonianSpec s;
    s.mass = 0.0;
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    CHECK(potential_form_from_string("soft_coulomb") == PotentialForm::soft_coulomb);
    CHECK_THROWS_AS(potential_form_from_string("coulomb"), PreconditionError);
}

TEST_CASE("potential forms and x V'") {
    const auto g = make_grid(64, -8.0, 8.0);
    const auto pl = Potential::power_law(0.5, 1.5);
    const auto h = Potential::harmonic(3.0);
    const auto sc = Potential::soft_coulomb(2.0, 0.7);
    const auto vpl = pl.evaluate(g);
    const auto xpl = pl.virial_product(g);
    const auto xh = h.virial_product(g);
    const auto xsc = sc.virial_product(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.position(j);
        CHECK(vpl[j] == doctest::Approx(0.5 * std::pow(std::abs(x), 1.5)));
        CHECK(h.evaluate(g)[j] == doctest::Approx(1.5 * x * x));
        // x V' by a centered difference of the closed forms.
        const double e = 1e-5;
        if (x != 0.0) {
            const double dpl = (0.5 * std::pow(std::abs(x + e), 1.5) - 0.5 * std::pow(std::abs(x - e), 1.5)) / (2 * e);
            CHECK(xpl[j] == doctest::Approx(x * dpl).epsilon(1e-7));
        } else {
            CHECK(xpl[j] == 0.0);
        }
        CHECK(xh[j] == doctest::Approx(3.0 * x * x));
        const auto vsc = [](double y) { return -2.0 / std::sqrt(y * y + 0.49); };
        CHECK(xsc[j] == doctest::Approx(x * (vsc(x + e) - vsc(x - e)) / (2 * e)).epsilon(1e-7));
    }
    CHECK(Potential::zero().is_zero());
    CHECK_FALSE(h.is_zero());
}

TEST_CASE("sampled potential differentiates spectrally") {
    const auto g = make_grid(128, -10.0, 10.0);
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(-g.position(j) * g.position(j));
    const auto xv = Potential::sampled(v).virial_product(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.position(j);
        CHECK(std::abs(xv[j] - (-2.0 * x * x * std::exp(-x * x))) < 1e-10);
    }
    CHECK_THROWS_AS(Potential::sampled({1.0, 2.0}).evaluate(g), PreconditionError);
}

TEST_CASE("p^alpha on lattice plane waves") {
    const auto g = make_grid(128, -10.0, 10.0, 0.9);
    const auto w = lattice_wave(g, 7);
    const double p0 = 7.0 * g.dp();
    const auto out = apply_p_power(w, 0.5);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(out[j] - std::sqrt(p0) * w[j]));
    CHECK(worst < 1e-12);

    // Eigen-action for every non-negative lattice momentum.
    for (long k = 0; k < static_cast<long>(g.size() / 2); ++k) {
        const auto wk = lattice_wave(g, k);
        for (double alpha : {0.37, 1.0, 1.1783}) {
            const double expected = std::pow(static_cast<double>(k) * g.dp(), alpha);
            CHECK(relative_difference(apply_p_power(wk, alpha), combine(expected, wk, 0.0, wk)) < 1e-10);
        }
    }
}

TEST_CASE("alpha = 2 reproduces the second-derivative operator") {
    const auto g = make_grid(512, -20.0, 20.0, 1.3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = combine(1.0, gaussian(g, 1.0 + 0.3 * u(rng), 2.0 * u(rng), 1.5 * u(rng)),
                                 Complex{u(rng), u(rng)},
                                 gaussian(g, 1.2 + 0.3 * u(rng), 2.0 * u(rng), 1.5 * u(rng)));
        const auto spectral = apply_p_power(psi, 2.0);
        const auto fd = minus_second_derivative_fd(psi);
        CHECK(relative_difference(spectral, fd) < 1e-6);
    }
}

TEST_CASE("multiplier composition") {
    const auto g = make_grid(256, -15.0, 15.0);
    const auto psi = gaussian(g, 1.2);
    // Intermediate images of fractional powers carry algebraic tails, so the
    // second application skips the representability check.
    const double skip = std::numeric_limits<double>::infinity();
    const auto twice = apply_p_power(apply_p_power(psi, 1.0), 1.0, BranchPolicy::riesz, skip);
    CHECK(relative_difference(twice, apply_p_power(psi, 2.0)) < 1e-10);
    const auto half = apply_p_power(apply_p_power(psi, 0.65), 0.65, BranchPolicy::riesz, skip);
    CHECK(relative_difference(half, apply_p_power(psi, 1.3)) < 1e-10);
}

TEST_CASE("function of p^alpha") {
    const auto g = make_grid(256, -15.0, 15.0);
    const auto psi = gaussian(g, 1.0, 0.5, 0.8);
    const double alpha = 0.8;
    const std::vector<double> linear = {0.0, 1.0};
    CHECK(relative_difference(apply_function_of_p_power(psi, alpha, linear),
                              apply_p_power(psi, alpha)) < 1e-12);
    const std::vector<double> constant = {2.5};
    CHECK(relative_difference(apply_function_of_p_power(psi, alpha, constant),
                              combine(2.5, psi, 0.0, psi)) < 1e-12);

    HamiltonianSpec spec;
    spec.alpha = FractionalExponent(alpha);
    spec.mass = 1.7;
    const std::vector<double> kinetic = {0.0, 0.0, 1.0 / std::pow(2.0 * spec.mass, alpha)};
    CHECK(relative_difference(apply_function_of_p_power(psi, alpha, kinetic),
                              kinetic_apply(psi, spec)) < 1e-10);

    const std::vector<double> poly = {0.3, -1.1, 0.7, 0.25};
    const double skip = std::numeric_limits<double>::infinity();
    const auto p1 = apply_p_power(psi, alpha);
    const auto p2 = apply_p_power(p1, alpha, BranchPolicy::riesz, skip);
    const auto p3 = apply_p_power(p2, alpha, BranchPolicy::riesz, skip);
    auto expected = combine(0.3, psi, -1.1, p1);
    expected = combine(1.0, expected, 0.7, p2);
    expected = combine(1.0, expected, 0.25, p3);
    CHECK(relative_difference(apply_function_of_p_power(psi, alpha, poly), expected) < 1e-10);
    CHECK_THROWS_AS(apply_function_of_p_power(psi, alpha, std::vector<double>{}), PreconditionError);
}

TEST_CASE("x^alpha in momentum space") {
    const auto g = make_grid(256, -12.0, 12.0);
    // Single-site state at x0 > 0.
    ComplexVector s(g.size());
    const std::size_t j0 = 170;
    s[j0] = 1.0 / std::sqrt(g.dx());
    const PositionWavefunction delta(g, s);
    const auto back = inverse_transform(apply_x_power_momentum(forward_transform(delta), 1.4));
    const double x0 = g.position(j0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const Complex expected = j == j0 ? std::pow(x0, 1.4) * s[j0] : Complex{};
        CHECK(std::abs(back[j] - expected) < 1e-10);
    }

    // Cross-route: <phi, |x|^alpha phi> dp equals the position-space expectation.
    const auto psi = gaussian(g, 1.1, 0.7, -0.4);
    const auto phi = forward_transform(psi);
    for (double alpha : {0.5, 1.0, 2.3}) {
        const auto xphi = apply_x_power_momentum(phi, alpha);
        Complex acc{};
        for (std::size_t k = 0; k < g.size(); ++k) acc += std::conj(phi[k]) * xphi[k];
        acc *= g.dp();
        CHECK(std::abs(acc - expectation_x_power(psi, alpha)) < 1e-10);
    }

    // alpha = 1 on a Gaussian centred at x0 >> sigma is multiplication by x.
    const auto far = gaussian(g, 0.5, 6.0);
    const auto xf = inverse_transform(apply_x_power_momentum(forward_transform(far), 1.0));
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(xf[j] - std::abs(g.position(j)) * far[j]) < 1e-10);
    }
}

TEST_CASE("kinetic operator on plane waves") {
    const auto g = make_grid(256, -20.0, 20.0);
    const auto w = lattice_wave(g, 11);
    const double p0 = 11.0 * g.dp();
    HamiltonianSpec spec;
    spec.mass = 1.3;
    CHECK(relative_difference(kinetic_apply(w, spec),
                              combine(p0 * p0 / (2.0 * spec.mass), w, 0.0, w)) < 1e-12);
    spec.alpha = FractionalExponent(1.1783);
    const double e = std::pow(p0, 2.3566) / std::pow(2.0 * spec.mass, 1.1783);
    CHECK(relative_difference(kinetic_apply(w, spec), combine(e, w, 0.0, w)) < 1e-12);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(kinetic_expectation(random_smooth_state(g, rng), spec) >= 0.0);
    }
}

TEST_CASE("hamiltonian_apply") {
    const auto g = make_grid(256, -20.0, 20.0);
    const auto psi = gaussian(g, 1.0, 0.3);
    HamiltonianSpec free;
    CHECK(relative_difference(hamiltonian_apply(psi, free), kinetic_apply(psi, free)) < 1e-15);

    // Oscillator ground state (m = k = 1): H psi = psi / 2.
    const auto spec = harmonic_spec(1.0);
    const auto ground = gaussian(g, std::sqrt(0.5));
    CHECK(relative_difference(hamiltonian_apply(ground, spec), combine(0.5, ground, 0.0, ground)) < 1e-10);
    CHECK(energy_expectation(ground, spec) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hermiticity residuals") {
    const auto g = make_grid(256, -20.0, 20.0);
    std::mt19937_64 rng(7);
    const auto spec = harmonic_spec(1.1783);
    const auto ops = {p_power_operator(0.5), kinetic_operator(spec), hamiltonian_operator(spec)};
    for (const auto& op : ops) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto a = random_smooth_state(g, rng);
            const auto b = random_smooth_state(g, rng);
            CHECK(hermiticity_residual(op, a, b) < 1e-10);
        }
    }
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(hermiticity_residual(potential_operator(spec), random_smooth_state(g, rng),
                                   random_smooth_state(g, rng)) < 1e-12);
    }

    // The principal branch is not Hermitian for generic states.
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_smooth_state(g, rng);
        const auto b = random_smooth_state(g, rng);
        worst = std::max(worst, hermiticity_residual(p_power_operator(0.5, BranchPolicy::principal), a, b));
    }
    CHECK(worst > 0.1);

    const auto other = make_grid(128, -20.0, 20.0);
    CHECK_THROWS_AS(hermiticity_residual(identity_operator(), gaussian(g, 1.0), gaussian(other, 1.0)),
                    PreconditionError);
}

TEST_CASE("linearity of exported operators") {
    const auto g = make_grid(256, -20.0, 20.0);
    std::mt19937_64 rng(9);
    const auto spec = harmonic_spec(0.8);
    const Complex a{0.7, -0.2};
    const Complex b{-1.3, 0.5};
    for (const auto& op : {p_power_operator(1.3), kinetic_operator(spec), potential_operator(spec),
                           hamiltonian_operator(spec)}) {
        const auto x = random_smooth_state(g, rng);
        const auto y = random_smooth_state(g, rng);
        const auto lhs = op(combine(a, x, b, y));
        const auto rhs = combine(a, op(x), b, op(y));
        CHECK(relative_difference(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("cross-route p^alpha expectation") {
    const auto g = make_grid(256, -20.0, 20.0);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_smooth_state(g, rng);
        for (double alpha : {0.5, 1.0, 1.7}) {
            const Complex pos = expectation_p_power_position(psi, alpha);
            const Complex mom = expectation_p_power_momentum(forward_transform(psi), alpha);
            CHECK(std::abs(pos - mom) < 1e-10 * std::max(1.0, std::abs(mom)));
            CHECK(std::abs(mom.imag()) < 1e-10 * std::abs(mom));
        }
    }
}

TEST_CASE("leaking state is rejected") {
    const auto g = make_grid(128, -5.0, 5.0);
    ComplexVector s(g.size(), Complex{1.0, 0.0});
    for (std::size_t j = 0; j < g.size(); ++j) s[j] = g.position(j);  // sawtooth across the seam
    CHECK_THROWS_AS(apply_p_power(PositionWavefunction(g, s), 1.0), NumericalError);
    CHECK_NOTHROW(apply_p_power(PositionWavefunction(g, s), 1.0, BranchPolicy::riesz,
                                std::numeric_limits<double>::infinity()));
}

TEST_CASE("grid and spec hbar must agree") {
    const auto g = make_grid(64, -5.0, 5.0, 2.0);
    HamiltonianSpec spec;
    CHECK_THROWS_AS(kinetic_multiplier(g, spec), PreconditionError);
}

}  // TEST_SUITE

#include "aqm/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "aqm/errors.hpp"
#include "fft.hpp"

namespace aqm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_consistent_units(const Grid& grid, const HamiltonianSpec& spec) {
    spec.validate();
    if (std::abs(grid.hbar() - spec.constants.hbar) > 1e-12 * spec.constants.hbar) {
        throw PreconditionError("grid hbar differs from the Hamiltonian's constants");
    }
}

long lattice_frequency(const Grid& grid, double p) {
    const double k = p / grid.dp();
    const double rounded = std::round(k);
    const auto half = static_cast<double>(grid.size() / 2);
    if (!std::isfinite(k) || std::abs(k - rounded) > 1e-9 * std::max(1.0, std::abs(k)) ||
        rounded < -half || rounded >= half) {
        throw PreconditionError("momentum is not on the grid's lattice");
    }
    return static_cast<long>(rounded);
}

double mean_position_power(const PositionWavefunction& psi, int power) {
    const auto& x = psi.grid().positions();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double w = std::norm(psi[j]);
        num += w * std::pow(x[j], power);
        den += w;
    }
    return num / den;
}

double mean_momentum_power(const PositionWavefunction& psi, int power) {
    const auto phi = forward_transform(psi);
    const auto& p = psi.grid().momenta();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double w = std::norm(phi[k]);
        num += w * std::pow(p[k], power);
        den += w;
    }
    return num / den;
}

double mean_virial_rhs(const PositionWavefunction& psi, const HamiltonianSpec& spec) {
    const auto xv = spec.potential.virial_product(psi.grid());
    double sum = 0.0;
    for (std::size_t j = 0; j < xv.size(); ++j) sum += std::norm(psi[j]) * xv[j];
    const double n2 = norm_squared(psi);
    return 2.0 * spec.alpha * kinetic_expectation(psi, spec) / n2 - sum * psi.grid().dx() / n2;
}

}  // namespace

double PlaneWaveState::energy() const { return dispersion(momentum, spec.alpha, spec.mass); }

PlaneWaveState make_plane_wave_state(const Grid& grid, double p, const HamiltonianSpec& spec,
                                     double t) {
    require_consistent_units(grid, spec);
    const long k = lattice_frequency(grid, p);
    return {static_cast<double>(k) * grid.dp(), 1.0 / std::sqrt(grid.length()), spec, t};
}

PositionWavefunction plane_wave(const Grid& grid, double p, const HamiltonianSpec& spec,
                                double t) {
    const auto state = make_plane_wave_state(grid, p, spec, t);
    const long k = lattice_frequency(grid, p);
    const std::size_t n = grid.size();
    const auto kn = static_cast<std::size_t>(((k % static_cast<long>(n)) + static_cast<long>(n)) %
                                             static_cast<long>(n));
    double origin = static_cast<double>(k) * grid.x_min() / grid.length();
    origin -= std::round(origin);
    const double time_phase = -state.energy() * t / grid.hbar();
    ComplexVector s(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double turns = origin + static_cast<double>((kn * j) % n) / static_cast<double>(n);
        s[j] = std::polar(state.normalization, two_pi * turns + time_phase);
    }
    return {grid, std::move(s), t};
}

MomentumWavefunction free_evolve_exact(const MomentumWavefunction& phi,
                                       const HamiltonianSpec& spec, double t) {
    require_consistent_units(phi.grid(), spec);
    if (!spec.potential.is_zero()) {
        throw PreconditionError("exact free evolution requires a vanishing potential");
    }
    const auto& p = phi.grid().momenta();
    const double hbar = phi.grid().hbar();
    ComplexVector out(phi.samples());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] *= std::exp(Complex{0.0, -t / hbar} * spec.kinetic_energy(p[k]));
    }
    return {phi.grid(), std::move(out), phi.time() + t};
}

void PropagatorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive");
    if (n_steps < 1) throw PreconditionError("n_steps must be >= 1");
    if (record_every < 1) throw PreconditionError("record_every must be >= 1");
}

double suggest_time_step(const Grid& grid, const HamiltonianSpec& spec) {
    require_consistent_units(grid, spec);
    const auto v = spec.potential.evaluate(grid);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax > 0.0) return 0.099 * grid.hbar() / vmax;
    const double e = dispersion(grid.p_max() / 4.0, spec.alpha, spec.mass);
    return e > 0.0 ? 0.1 * grid.hbar() / e : 1e-2;
}

std::vector<std::string_view> observable_names() {
    return {"x", "x2", "width2", "p", "p2", "kinetic", "potential", "energy", "xp", "virial_rhs"};
}

Observable make_observable(std::string_view name, const HamiltonianSpec& spec) {
    using F = std::function<double(const PositionWavefunction&)>;
    F f;
    if (name == "x") {
        f = [](const PositionWavefunction& s) { return mean_position_power(s, 1); };
    } else if (name == "x2") {
        f = [](const PositionWavefunction& s) { return mean_position_power(s, 2); };
    } else if (name == "width2") {
        f = [](const PositionWavefunction& s) {
            const double m = mean_position_power(s, 1);
            return mean_position_power(s, 2) - m * m;
        };
    } else if (name == "p") {
        f = [](const PositionWavefunction& s) { return mean_momentum_power(s, 1); };
    } else if (name == "p2") {
        f = [](const PositionWavefunction& s) { return mean_momentum_power(s, 2); };
    } else if (name == "kinetic") {
        f = [spec](const PositionWavefunction& s) {
            return kinetic_expectation(s, spec) / norm_squared(s);
        };
    } else if (name == "potential") {
        f = [spec](const PositionWavefunction& s) {
            return potential_expectation(s, spec) / norm_squared(s);
        };
    } else if (name == "energy") {
        f = [spec](const PositionWavefunction& s) {
            return energy_expectation(s, spec) / norm_squared(s);
        };
    } else if (name == "xp") {
        f = [](const PositionWavefunction& s) { return symmetrized_xp(s) / norm_squared(s); };
    } else if (name == "virial_rhs") {
        f = [spec](const PositionWavefunction& s) { return mean_virial_rhs(s, spec); };
    } else {
        throw PreconditionError("unknown observable '" + std::string(name) + "'");
    }
    return {std::string(name), std::move(f)};
}

const std::vector<double>& EvolutionRecord::column(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return series[i];
    }
    throw PreconditionError("no recorded observable named '" + std::string(name) + "'");
}

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const HamiltonianSpec& spec,
                                         double dt, double leakage_tolerance)
    : grid_(grid), dt_(dt), leakage_tolerance_(leakage_tolerance) {
    require_consistent_units(grid, spec);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive");
    const double hbar = grid.hbar();
    const auto v = spec.potential.evaluate(grid);
    half_potential_.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        half_potential_[j] = std::polar(1.0, -0.5 * v[j] * dt / hbar);
    }
    const auto& p = grid.momenta();
    const double inv_n = 1.0 / static_cast<double>(grid.size());
    kinetic_.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        kinetic_[k] = std::exp(Complex{0.0, -dt / hbar} * spec.kinetic_energy(p[k])) * inv_n;
    }
}

double SplitStepPropagator::step_in_place(ComplexVector& s) const {
    const std::size_t n = s.size();
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        s[j] *= half_potential_[j];
        peak = std::max(peak, std::abs(s[j]));
    }
    const double edge = std::max(std::abs(s.front()), std::abs(s.back()));
    detail::fft_forward(s);
    double total = 0.0;
    double top = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::norm(s[k]);
        total += w;
        top = std::max(top, w);
        s[k] *= kinetic_[k];
    }
    detail::fft_backward(s);
    for (std::size_t j = 0; j < n; ++j) s[j] *= half_potential_[j];
    if (peak == 0.0 || !(total > 0.0)) return 0.0;
    return LeakageReport{edge / peak, std::max(0.0, 1.0 - top / total)}.value();
}

PositionWavefunction SplitStepPropagator::step(const PositionWavefunction& psi) const {
    if (!(psi.grid() == grid_)) throw PreconditionError("state lives on a different grid");
    ComplexVector s = psi.samples();
    const double leak = step_in_place(s);
    if (std::isfinite(leakage_tolerance_) && leak > leakage_tolerance_) {
        throw NumericalError("state leaked across the periodic boundary");
    }
    return {grid_, std::move(s), psi.time() + dt_};
}

std::pair<PositionWavefunction, EvolutionRecord> evolve_split_step(
    const PositionWavefunction& psi, const HamiltonianSpec& spec, const PropagatorConfig& cfg,
    const std::vector<Observable>& observables) {
    cfg.validate();
    if (std::isfinite(cfg.leakage_tolerance)) require_representable(psi, cfg.leakage_tolerance);
    const auto v = spec.potential.evaluate(psi.grid());
    for (double x : v) {
        if (!std::isfinite(x)) throw PreconditionError("potential is not finite on the grid");
    }
    const SplitStepPropagator prop(psi.grid(), spec, cfg.dt, cfg.leakage_tolerance);

    EvolutionRecord rec;
    for (const auto& o : observables) rec.names.push_back(o.name);
    rec.series.resize(observables.size());

    auto record = [&](std::size_t step, const PositionWavefunction& state) {
        rec.steps.push_back(step);
        rec.times.push_back(state.time());
        rec.norms.push_back(norm(state));
        for (std::size_t i = 0; i < observables.size(); ++i) {
            rec.series[i].push_back(observables[i].evaluate(state));
        }
    };

    ComplexVector samples = psi.samples();
    const double t0 = psi.time();
    record(0, psi);
    for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
        const double leak = prop.step_in_place(samples);
        if (std::isfinite(cfg.leakage_tolerance) && leak > cfg.leakage_tolerance) {
            throw PropagationAborted("state leaked across the periodic boundary", step);
        }
        if (step % cfg.record_every == 0 || step == cfg.n_steps) {
            record(step, PositionWavefunction(psi.grid(), samples,
                                              t0 + static_cast<double>(step) * cfg.dt));
        }
    }
    PositionWavefunction out(psi.grid(), std::move(samples),
                             t0 + static_cast<double>(cfg.n_steps) * cfg.dt);
    return {std::move(out), std::move(rec)};
}

double symmetrized_xp(const PositionWavefunction& psi) {
    // <(xp + px)/2> = Re <psi, x p psi> for Hermitian x and p
    const auto& p = psi.grid().momenta();
    ComplexVector m(p.begin(), p.end());
    const auto p_psi = apply_fourier_multiplier(psi, m, std::numeric_limits<double>::infinity());
    const auto& x = psi.grid().positions();
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < x.size(); ++j) sum += std::conj(psi[j]) * x[j] * p_psi[j];
    return sum.real() * psi.grid().dx();
}

double VirialSeries::max_abs_difference() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, std::abs(d_xp_dt[i] - rhs[i]));
    }
    return worst;
}

VirialSeries virial_dynamic(const PositionWavefunction& psi0, const HamiltonianSpec& spec,
                            const PropagatorConfig& cfg) {
    if (cfg.n_steps < 2) throw PreconditionError("virial series needs at least two steps");
    PropagatorConfig every = cfg;
    every.record_every = 1;
    const std::vector<Observable> obs{make_observable("xp", spec),
                                      make_observable("virial_rhs", spec)};
    const auto [state, rec] = evolve_split_step(psi0, spec, every, obs);
    (void)state;
    const auto& xp = rec.column("xp");
    const auto& rhs = rec.column("virial_rhs");
    VirialSeries out;
    for (std::size_t i = 1; i + 1 < xp.size(); ++i) {
        out.times.push_back(rec.times[i]);
        out.d_xp_dt.push_back((xp[i + 1] - xp[i - 1]) / (rec.times[i + 1] - rec.times[i - 1]));
        out.rhs.push_back(rhs[i]);
    }
    return out;
}

}  // namespace aqm

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aqm/frac_ops.hpp"
#include "aqm/grid.hpp"
#include "aqm/hamiltonian.hpp"

namespace aqm {

/// Box-normalized plane wave C exp(i(p x - E t)/hbar), C = 1/sqrt(L).
struct PlaneWaveState {
    double momentum;
    double normalization;
    HamiltonianSpec spec;
    double time;

    /// E = |p|^{2 alpha} / (2m)^alpha
    double energy() const;
};

/// Throws PreconditionError unless p is a lattice momentum of the grid.
PlaneWaveState make_plane_wave_state(const Grid& grid, double p, const HamiltonianSpec& spec,
                                     double t = 0.0);
PositionWavefunction plane_wave(const Grid& grid, double p, const HamiltonianSpec& spec,
                                double t = 0.0);

/// phi(p, t) = phi(p, 0) exp(-i t T(p) / hbar). Requires a free spec.
MomentumWavefunction free_evolve_exact(const MomentumWavefunction& phi,
                                       const HamiltonianSpec& spec, double t);

enum class Splitting { strang };

struct PropagatorConfig {
    double dt = 1e-3;
    std::size_t n_steps = 1;
    Splitting splitting = Splitting::strang;
    /// Record observables every this many steps (the last step is always recorded).
    std::size_t record_every = 1;
    double leakage_tolerance = default_leakage_tolerance;

    void validate() const;
};

/// Time step satisfying max|V| dt / hbar < 0.1 (capped at 0.01 hbar/E_scale
/// when V vanishes, where E_scale is the kinetic energy at p_max / 4).
double suggest_time_step(const Grid& grid, const HamiltonianSpec& spec);

/// A named expectation value sampled along a trajectory.
struct Observable {
    std::string name;
    std::function<double(const PositionWavefunction&)> evaluate;
};

/// Built-in observables: x, x2, p, p2, width2 (variance of x), kinetic,
/// potential, energy, xp (symmetrized (xp + px)/2), virial_rhs
/// (2 alpha <T> - <x V'>).
Observable make_observable(std::string_view name, const HamiltonianSpec& spec);
std::vector<std::string_view> observable_names();

struct EvolutionRecord {
    std::vector<std::size_t> steps;
    std::vector<double> times;
    std::vector<double> norms;
    std::vector<std::string> names;
    std::vector<std::vector<double>> series;  // series[i] belongs to names[i]

    const std::vector<double>& column(std::string_view name) const;
};

/// Strang-split propagator exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h).
/// The kinetic factor is exact in momentum space for any alpha.
class SplitStepPropagator {
public:
    SplitStepPropagator(const Grid& grid, const HamiltonianSpec& spec, double dt,
                        double leakage_tolerance = default_leakage_tolerance);

    /// One step; throws NumericalError if the state leaks.
    PositionWavefunction step(const PositionWavefunction& psi) const;
    /// Advances the samples in place; returns the leakage measured this step.
    double step_in_place(ComplexVector& samples) const;

    double dt() const { return dt_; }

private:
    Grid grid_;
    double dt_;
    double leakage_tolerance_;
    ComplexVector half_potential_;
    ComplexVector kinetic_;  // includes the 1/n of the unnormalized inverse FFT
};

/// Evolves psi for cfg.n_steps steps, recording norm and observables.
/// Throws PropagationAborted with the step index if leakage exceeds the
/// tolerance mid-run.
///
/// For alpha != 1 the kinetic multiplier is not smooth at p = 0, so packets
/// grow algebraic tails ~|x|^{-(2 alpha + 1)} that reach the boundary within
/// a few steps; such runs need a tolerance matched to the box size.
std::pair<PositionWavefunction, EvolutionRecord> evolve_split_step(
    const PositionWavefunction& psi, const HamiltonianSpec& spec, const PropagatorConfig& cfg,
    const std::vector<Observable>& observables = {});

/// Both sides of the time-dependent virial relation along a trajectory:
/// d<xp>/dt by centered differences of the sampled <xp> series versus
/// 2 alpha <T> - <x V'> at the same interior times.
struct VirialSeries {
    std::vector<double> times;
    std::vector<double> d_xp_dt;
    std::vector<double> rhs;

    double max_abs_difference() const;
};

VirialSeries virial_dynamic(const PositionWavefunction& psi0, const HamiltonianSpec& spec,
                            const PropagatorConfig& cfg);

/// <(xp + px)/2> for the ordinary momentum operator.
double symmetrized_xp(const PositionWavefunction& psi);

}  // namespace aqm

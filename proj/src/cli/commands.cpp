#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "aqm/cli/app.hpp"
#include "aqm/dynamics.hpp"
#include "aqm/errors.hpp"
#include "aqm/io.hpp"
#include "aqm/spectral.hpp"

namespace aqm::cli {

namespace {

using nlohmann::json;

json grid_derived(const Grid& g) {
    return {{"dx", g.dx()}, {"dp", g.dp()}, {"p_max", g.p_max()}, {"length", g.length()}};
}

PositionWavefunction initial_state(const RunConfig& cfg, const Grid& grid) {
    const auto& s = cfg.initial_state;
    if (s.kind == "plane_wave") {
        const auto half = static_cast<long>(grid.size() / 2);
        if (s.k < -half || s.k >= half) {
            throw ConfigError("initial_state.k must lie in [" + std::to_string(-half) + ", " +
                              std::to_string(half) + ")");
        }
        return plane_wave(grid, static_cast<double>(s.k) * grid.dp(), cfg.hamiltonian);
    }
    ComplexVector samples(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.position(j) - s.x0;
        samples[j] = std::exp(-x * x / (4.0 * s.sigma * s.sigma)) * std::polar(1.0, s.p0 * grid.position(j) / grid.hbar());
    }
    return normalize(PositionWavefunction(grid, std::move(samples)));
}

}  // namespace

Job prepare_evolve(const RunConfig& cfg) {
    const Grid grid = cfg.make_grid();
    const auto psi0 = initial_state(cfg, grid);
    PropagatorConfig pc;
    pc.dt = cfg.evolution.dt;
    pc.n_steps = cfg.evolution.steps;
    pc.record_every = cfg.evolution.record_every;
    pc.leakage_tolerance = cfg.evolution.leakage_tolerance;
    pc.validate();
    std::vector<Observable> observables;
    for (const auto& name : cfg.evolution.observables) observables.push_back(make_observable(name, cfg.hamiltonian));

    json derived = grid_derived(grid);
    derived["suggested_dt"] = suggest_time_step(grid, cfg.hamiltonian);
    derived["final_time"] = pc.dt * static_cast<double>(pc.n_steps);
    const auto spec = cfg.hamiltonian;
    const auto output = cfg.output;
    return {derived, [=](OutputSink& sink, std::ostream& out) {
                const auto [psi, record] = evolve_split_step(psi0, spec, pc, observables);
                if (output.format == "json") {
                    sink.write_json("evolution.json", io::to_json(record));
                } else {
                    sink.write("evolution.csv", [&](std::ostream& os) {
                        io::write_evolution_csv(os, record, output.precision);
                    });
                }
                out << "evolved " << pc.n_steps << " steps to t = " << io::format_number(psi.time())
                    << ", final norm " << io::format_number(record.norms.back()) << '\n';
                return static_cast<int>(exit_success);
            }};
}

Job prepare_eigen(const RunConfig& cfg) {
    const Grid grid = cfg.make_grid();
    const auto& e = cfg.eigen;
    Basis basis;
    if (e.basis == "plane_wave") {
        basis = plane_wave_basis(grid, e.basis_size == 0 ? grid.size() : e.basis_size);
    } else {
        basis = oscillator_basis(grid, e.basis_size == 0 ? 64 : e.basis_size, e.length_scale);
    }
    if (e.states > basis.size()) throw ConfigError("eigen.states exceeds the basis size");
    if (cfg.hamiltonian.branch != BranchPolicy::riesz) {
        throw ConfigError("eigen requires the riesz branch (the principal branch is not Hermitian)");
    }

    json derived = grid_derived(grid);
    derived["basis_label"] = basis.label;
    derived["basis_size"] = basis.size();
    const auto spec = cfg.hamiltonian;
    const auto output = cfg.output;
    return {derived, [=](OutputSink& sink, std::ostream& out) {
                const auto result = stationary_states(spec, basis, e.states);
                std::vector<VirialReport> virial;
                if (e.virial) virial = virial_check(result);
                if (output.format == "json") {
                    json doc{{"spectrum", io::to_json(result)}};
                    if (e.virial) doc["virial"] = io::to_json(virial);
                    sink.write_json("spectrum.json", doc);
                } else {
                    sink.write("spectrum.csv", [&](std::ostream& os) {
                        io::write_spectrum_csv(os, result, output.precision);
                    });
                    if (e.virial) {
                        sink.write("virial.csv", [&](std::ostream& os) {
                            io::write_virial_csv(os, virial, output.precision);
                        });
                    }
                }
                for (std::size_t i = 0; i < result.eigenpairs.size(); ++i) {
                    out << "E_" << i << " = " << io::format_number(result.eigenpairs[i].lambda) << '\n';
                }
                return static_cast<int>(exit_success);
            }};
}

Job prepare_hydrogen(const RunConfig& cfg) {
    const auto& h = cfg.hydrogen;
    const hydrogen::AnomalousAtomSpec spec(h.alpha, h.mode);
    std::vector<hydrogen::ObservedLine> lines;
    hydrogen::FitOptions fit_options;
    if (h.fit) {
        const double joule_per_kev = 1e3 * spec.constants().joule_per_ev;
        for (const auto& l : h.fit->lines) lines.push_back({l.k, l.n, l.energy_kev * joule_per_kev});
        fit_options.beta_min = h.fit->beta_min;
        fit_options.beta_max = h.fit->beta_max;
    }
    json derived{{"alpha", spec.alpha()},
                 {"beta", spec.beta()},
                 {"mode", std::string(hydrogen::to_string(spec.mode()))},
                 {"rydberg_energy_j", spec.rydberg_energy()}};
    const auto output = cfg.output;
    return {derived, [=](OutputSink& sink, std::ostream& out) {
                const auto table = hydrogen::emit_spectrum_table(spec, h.transitions);
                std::vector<hydrogen::OrbitRadius> radii;
                std::vector<hydrogen::EnergyLevel> levels;
                for (int n = 1; n <= h.levels; ++n) {
                    radii.push_back(hydrogen::orbit_radius(n, spec));
                    levels.push_back(hydrogen::energy_level(n, spec));
                }
                const bool paper = spec.mode() == hydrogen::ConstantsMode::paper;
                if (output.format == "json") {
                    json doc{{"table", io::to_json(table)}};
                    json level_rows = json::array();
                    for (std::size_t i = 0; i < levels.size(); ++i) {
                        level_rows.push_back({{"n", levels[i].n},
                                              {"radius_m", radii[i].radius},
                                              {"energy_j", levels[i].energy},
                                              {"energy_ev", levels[i].energy_ev}});
                    }
                    doc["levels"] = level_rows;
                    sink.write_json("hydrogen.json", doc);
                } else {
                    sink.write("transitions.csv", [&](std::ostream& os) {
                        io::write_transition_csv(os, table, output.precision);
                    });
                    if (paper) {
                        sink.write("transitions_4sf.csv", [&](std::ostream& os) {
                            io::write_transition_csv(os, table, 4);
                        });
                    }
                    if (!levels.empty()) {
                        sink.write("levels.csv", [&](std::ostream& os) {
                            io::write_level_csv(os, radii, levels, output.precision);
                        });
                    }
                }
                for (const auto& t : table.rows) {
                    char kev[32];
                    std::snprintf(kev, sizeof kev, paper ? "%.4f" : "%.12g", t.delta_e_kev);
                    out << "dE(" << t.k << "," << t.n << ") = " << kev << " keV\n";
                }
                if (!lines.empty()) {
                    const auto report = hydrogen::fit_exponent(lines, h.fit->initial_beta, spec.mode(), fit_options);
                    sink.write_json("fit.json", io::to_json(report));
                    out << "fitted beta = " << io::format_number(report.beta) << '\n';
                }
                return static_cast<int>(exit_success);
            }};
}

Job prepare_check(const RunConfig& cfg) {
    const auto block = cfg.check;
    json derived{{"suites", block.suites}, {"seed", block.seed}};
    return {derived, [=](OutputSink& sink, std::ostream& out) {
                const auto results = run_checks(block);
                bool all = true;
                json rows = json::array();
                for (const auto& r : results) {
                    all = all && r.passed;
                    rows.push_back({{"name", r.name},
                                    {"passed", r.passed},
                                    {"residual", r.residual},
                                    {"threshold", r.threshold},
                                    {"detail", r.detail}});
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << " residual " << io::format_number(r.residual, 3)
                        << " threshold " << io::format_number(r.threshold, 3) << '\n';
                }
                sink.write_json("check.json", {{"passed", all}, {"checks", rows}});
                return static_cast<int>(all ? exit_success : exit_check_failed);
            }};
}

}  // namespace aqm::cli

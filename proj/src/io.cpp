#include "aqm/io.hpp"

#include <cstdio>

namespace aqm::io {

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

}  // namespace

std::string format_number(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

void write_evolution_csv(std::ostream& os, const EvolutionRecord& record, int digits) {
    std::vector<std::string> header{"step", "time", "norm"};
    header.insert(header.end(), record.names.begin(), record.names.end());
    write_row(os, header);
    for (std::size_t r = 0; r < record.steps.size(); ++r) {
        std::vector<std::string> row{std::to_string(record.steps[r]),
                                     format_number(record.times[r], digits),
                                     format_number(record.norms[r], digits)};
        for (const auto& s : record.series) row.push_back(format_number(s[r], digits));
        write_row(os, row);
    }
}

nlohmann::json to_json(const EvolutionRecord& record) {
    nlohmann::json j{{"step", record.steps}, {"time", record.times}, {"norm", record.norms}};
    nlohmann::json obs = nlohmann::json::object();
    for (std::size_t i = 0; i < record.names.size(); ++i) obs[record.names[i]] = record.series[i];
    j["observables"] = obs;
    return j;
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& result, int digits) {
    write_row(os, {"index", "energy", "residual"});
    for (std::size_t i = 0; i < result.eigenpairs.size(); ++i) {
        write_row(os, {std::to_string(i), format_number(result.eigenpairs[i].lambda, digits),
                       format_number(result.grid_residuals[i], digits)});
    }
}

nlohmann::json to_json(const SpectrumResult& result) {
    const Grid& g = result.grid;
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < result.eigenpairs.size(); ++i) {
        pairs.push_back({{"index", i},
                         {"energy", result.eigenpairs[i].lambda},
                         {"residual", result.grid_residuals[i]},
                         {"matrix_residual", result.eigenpairs[i].residual_norm}});
    }
    return {{"alpha", result.spec.alpha.value()},
            {"mass", result.spec.mass},
            {"potential", std::string(to_string(result.spec.potential.form()))},
            {"basis_label", result.basis_label},
            {"basis_size", result.basis_size},
            {"grid", {{"n", g.size()}, {"x_min", g.x_min()}, {"x_max", g.x_max()}, {"dx", g.dx()}, {"p_max", g.p_max()}}},
            {"eigenpairs", pairs}};
}

void write_virial_csv(std::ostream& os, const std::vector<VirialReport>& reports, int digits) {
    write_row(os, {"state_label", "lhs", "rhs", "relative_residual"});
    for (const auto& r : reports) {
        write_row(os, {r.state_label, format_number(r.lhs, digits), format_number(r.rhs, digits),
                       format_number(r.relative_residual, digits)});
    }
}

nlohmann::json to_json(const std::vector<VirialReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        j.push_back({{"state_label", r.state_label},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"relative_residual", r.relative_residual}});
    }
    return j;
}

void write_transition_csv(std::ostream& os, const hydrogen::SpectrumTable& table, int digits) {
    write_row(os, {"k", "n", "delta_e_kev", "frequency_hz"});
    for (const auto& t : table.rows) {
        write_row(os, {std::to_string(t.k), std::to_string(t.n), format_number(t.delta_e_kev, digits),
                       format_number(t.frequency, digits)});
    }
}

nlohmann::json to_json(const hydrogen::SpectrumTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : table.rows) {
        rows.push_back({{"k", t.k}, {"n", t.n}, {"delta_e_kev", t.delta_e_kev}, {"frequency_hz", t.frequency}});
    }
    return {{"alpha", table.alpha},
            {"beta", 2.0 * table.alpha},
            {"mode", std::string(hydrogen::to_string(table.mode))},
            {"transitions", rows}};
}

void write_level_csv(std::ostream& os, const std::vector<hydrogen::OrbitRadius>& radii,
                     const std::vector<hydrogen::EnergyLevel>& levels, int digits) {
    write_row(os, {"n", "radius_m", "energy_j", "energy_ev"});
    for (std::size_t i = 0; i < levels.size(); ++i) {
        write_row(os, {std::to_string(levels[i].n), format_number(radii[i].radius, digits),
                       format_number(levels[i].energy, digits), format_number(levels[i].energy_ev, digits)});
    }
}

nlohmann::json to_json(const hydrogen::FitReport& report) {
    return {{"beta", report.beta},
            {"residuals", report.residuals},
            {"iterations", report.iterations},
            {"objective", report.objective}};
}

}  // namespace aqm::io

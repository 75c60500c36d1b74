#include "aqm/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "aqm/dynamics.hpp"
#include "aqm/errors.hpp"

namespace aqm::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
}

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
    return j;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) throw ConfigError("unknown key '" + join(where, key) + "'");
    }
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("'" + join(where, key) + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + join(where, key) + "' must be finite");
    return x;
}

double get_positive(const json& obj, const std::string& where, const char* key, double fallback) {
    const double x = get_number(obj, where, key, fallback);
    if (!(x > 0.0)) throw ConfigError("'" + join(where, key) + "' must be positive");
    return x;
}

long long get_integer(const json& obj, const std::string& where, const char* key, long long fallback,
                      long long min_value) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError("'" + join(where, key) + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < min_value) {
        throw ConfigError("'" + join(where, key) + "' must be >= " + std::to_string(min_value));
    }
    return x;
}

std::string get_string(const json& obj, const std::string& where, const char* key, std::string fallback,
                       std::initializer_list<const char*> choices = {}) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError("'" + join(where, key) + "' must be a string");
    auto s = v.get<std::string>();
    if (choices.size() != 0 &&
        std::none_of(choices.begin(), choices.end(), [&](const char* c) { return s == c; })) {
        std::string list;
        for (const char* c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
        throw ConfigError("'" + join(where, key) + "' must be one of: " + list);
    }
    return s;
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError("'" + join(where, key) + "' must be a boolean");
    return v.get<bool>();
}

const json& get_array(const json& obj, const std::string& where, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ConfigError("'" + join(where, key) + "' must be an array");
    return v;
}

BranchPolicy parse_branch(const std::string& s) {
    return s == "principal" ? BranchPolicy::principal : BranchPolicy::riesz;
}

void parse_grid(const json& j, GridBlock& g) {
    require_object(j, "grid");
    check_keys(j, "grid", {"n", "x_min", "x_max"});
    g.n = static_cast<std::size_t>(get_integer(j, "grid", "n", static_cast<long long>(g.n), 8));
    g.x_min = get_number(j, "grid", "x_min", g.x_min);
    g.x_max = get_number(j, "grid", "x_max", g.x_max);
}

Potential parse_potential(const json& j, std::size_t grid_size) {
    const std::string where = "hamiltonian.potential";
    require_object(j, where);
    check_keys(j, where, {"form", "beta", "coefficient", "softening", "samples"});
    const auto form = get_string(j, where, "form", "none",
                                 {"none", "power_law", "harmonic", "soft_coulomb", "sampled"});
    if (form == "none") return Potential::zero();
    if (form == "sampled") {
        if (!j.contains("samples")) throw ConfigError("'" + where + ".samples' is required for a sampled potential");
        std::vector<double> samples;
        for (const auto& v : get_array(j, where, "samples")) {
            if (!v.is_number()) throw ConfigError("'" + where + ".samples' must hold numbers");
            samples.push_back(v.get<double>());
        }
        if (samples.size() != grid_size) {
            throw ConfigError("'" + where + ".samples' needs one value per grid point (" +
                              std::to_string(grid_size) + ")");
        }
        return Potential::sampled(std::move(samples));
    }
    const double coefficient = get_number(j, where, "coefficient", 1.0);
    if (form == "harmonic") return Potential::harmonic(coefficient);
    if (form == "power_law") return Potential::power_law(coefficient, get_positive(j, where, "beta", 2.0));
    return Potential::soft_coulomb(coefficient, get_positive(j, where, "softening", 1.0));
}

void parse_hamiltonian(const json& j, HamiltonianSpec& spec, std::size_t grid_size) {
    require_object(j, "hamiltonian");
    check_keys(j, "hamiltonian", {"alpha", "mass", "branch", "potential"});
    spec.alpha = FractionalExponent(get_positive(j, "hamiltonian", "alpha", spec.alpha));
    spec.mass = get_positive(j, "hamiltonian", "mass", spec.mass);
    spec.branch = parse_branch(get_string(j, "hamiltonian", "branch", "riesz", {"riesz", "principal"}));
    if (j.contains("potential")) spec.potential = parse_potential(j.at("potential"), grid_size);
}

void parse_initial_state(const json& j, InitialStateBlock& s) {
    const std::string where = "initial_state";
    require_object(j, where);
    check_keys(j, where, {"kind", "x0", "p0", "sigma", "k"});
    s.kind = get_string(j, where, "kind", s.kind, {"gaussian", "plane_wave"});
    s.x0 = get_number(j, where, "x0", s.x0);
    s.p0 = get_number(j, where, "p0", s.p0);
    s.sigma = get_positive(j, where, "sigma", s.sigma);
    s.k = static_cast<long>(get_integer(j, where, "k", s.k, std::numeric_limits<long>::min()));
}

void parse_evolution(const json& j, EvolutionBlock& e) {
    const std::string where = "evolution";
    require_object(j, where);
    check_keys(j, where, {"dt", "steps", "record_every", "observables", "leakage_tolerance"});
    e.dt = get_positive(j, where, "dt", e.dt);
    e.steps = static_cast<std::size_t>(get_integer(j, where, "steps", static_cast<long long>(e.steps), 1));
    e.record_every = static_cast<std::size_t>(
        get_integer(j, where, "record_every", static_cast<long long>(e.record_every), 1));
    e.leakage_tolerance = get_positive(j, where, "leakage_tolerance", e.leakage_tolerance);
    if (j.contains("observables")) {
        e.observables.clear();
        const auto names = observable_names();
        for (const auto& v : get_array(j, where, "observables")) {
            if (!v.is_string()) throw ConfigError("'evolution.observables' must hold strings");
            const auto name = v.get<std::string>();
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                throw ConfigError("unknown observable '" + name + "'");
            }
            e.observables.push_back(name);
        }
    }
}

void parse_eigen(const json& j, EigenBlock& e) {
    const std::string where = "eigen";
    require_object(j, where);
    check_keys(j, where, {"basis", "basis_size", "states", "virial", "length_scale"});
    e.basis = get_string(j, where, "basis", e.basis, {"plane_wave", "oscillator"});
    e.basis_size = static_cast<std::size_t>(
        get_integer(j, where, "basis_size", static_cast<long long>(e.basis_size), 0));
    e.states = static_cast<std::size_t>(get_integer(j, where, "states", static_cast<long long>(e.states), 1));
    e.virial = get_bool(j, where, "virial", e.virial);
    e.length_scale = get_positive(j, where, "length_scale", e.length_scale);
}

std::pair<int, int> parse_level_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
        throw ConfigError("'" + where + "' entries must be [k, n] integer pairs");
    }
    const int k = v[0].get<int>();
    const int n = v[1].get<int>();
    if (n < 1 || k <= n) throw ConfigError("'" + where + "' entries need k > n >= 1");
    return {k, n};
}

FitBlock parse_fit(const json& j) {
    const std::string where = "hydrogen.fit";
    require_object(j, where);
    check_keys(j, where, {"lines", "initial_beta", "bracket"});
    FitBlock fit;
    if (!j.contains("lines")) throw ConfigError("'" + where + ".lines' is required");
    for (const auto& line : get_array(j, where, "lines")) {
        const std::string lw = where + ".lines[]";
        require_object(line, lw);
        check_keys(line, lw, {"k", "n", "energy_kev"});
        if (!line.contains("k") || !line.contains("n") || !line.contains("energy_kev")) {
            throw ConfigError("'" + lw + "' needs k, n and energy_kev");
        }
        const auto [k, n] = parse_level_pair(json::array({line.at("k"), line.at("n")}), lw);
        fit.lines.push_back({k, n, get_positive(line, lw, "energy_kev", 0.0)});
    }
    if (fit.lines.empty()) throw ConfigError("'" + where + ".lines' must not be empty");
    fit.initial_beta = get_number(j, where, "initial_beta", fit.initial_beta);
    if (!(fit.initial_beta > 1.0)) throw ConfigError("'" + where + ".initial_beta' must be > 1");
    if (j.contains("bracket")) {
        const auto& b = get_array(j, where, "bracket");
        if (b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
            throw ConfigError("'" + where + ".bracket' must be [beta_min, beta_max]");
        }
        fit.beta_min = b[0].get<double>();
        fit.beta_max = b[1].get<double>();
    }
    if (!(fit.beta_min > 1.0) || !(fit.beta_max > fit.beta_min) || !std::isfinite(fit.beta_max)) {
        throw ConfigError("'" + where + ".bracket' must satisfy 1 < beta_min < beta_max");
    }
    return fit;
}

void parse_hydrogen(const json& j, HydrogenBlock& h) {
    const std::string where = "hydrogen";
    require_object(j, where);
    check_keys(j, where, {"alpha", "beta", "mode", "transitions", "levels", "fit"});
    if (j.contains("alpha") && j.contains("beta")) {
        throw ConfigError("'hydrogen' takes either alpha or beta, not both");
    }
    if (j.contains("beta")) h.alpha = get_number(j, where, "beta", 0.0) / 2.0;
    h.alpha = get_number(j, where, "alpha", h.alpha);
    if (!(h.alpha > 0.5)) throw ConfigError("'hydrogen' requires alpha > 1/2 (beta > 1)");
    h.mode = hydrogen::constants_mode_from_string(get_string(j, where, "mode", "paper", {"paper", "precise"}));
    if (j.contains("transitions")) {
        h.transitions.clear();
        for (const auto& v : get_array(j, where, "transitions")) {
            h.transitions.push_back(parse_level_pair(v, where + ".transitions"));
        }
    }
    h.levels = static_cast<int>(get_integer(j, where, "levels", h.levels, 0));
    if (j.contains("fit")) h.fit = parse_fit(j.at("fit"));
}

void parse_check(const json& j, CheckBlock& c) {
    const std::string where = "check";
    require_object(j, where);
    check_keys(j, where, {"suites", "seed", "samples", "alpha", "branch"});
    if (j.contains("suites")) {
        c.suites.clear();
        const auto& known = check_suite_names();
        for (const auto& v : get_array(j, where, "suites")) {
            if (!v.is_string()) throw ConfigError("'check.suites' must hold strings");
            const auto name = v.get<std::string>();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw ConfigError("unknown check suite '" + name + "'");
            }
            c.suites.push_back(name);
        }
    }
    if (c.suites.empty()) throw ConfigError("'check.suites' must not be empty");
    c.seed = static_cast<std::uint64_t>(get_integer(j, where, "seed", static_cast<long long>(c.seed), 0));
    c.samples = static_cast<std::size_t>(get_integer(j, where, "samples", static_cast<long long>(c.samples), 1));
    c.alpha = get_positive(j, where, "alpha", c.alpha);
    c.branch = parse_branch(get_string(j, where, "branch", "riesz", {"riesz", "principal"}));
}

void parse_output(const json& j, OutputBlock& o) {
    const std::string where = "output";
    require_object(j, where);
    check_keys(j, where, {"format", "path", "precision"});
    o.format = get_string(j, where, "format", o.format, {"csv", "json"});
    o.path = get_string(j, where, "path", o.path);
    if (o.path.empty()) throw ConfigError("'output.path' must not be empty");
    o.precision = static_cast<int>(get_integer(j, where, "precision", o.precision, 1));
    if (o.precision > 17) throw ConfigError("'output.precision' must be <= 17");
}

json potential_to_json(const Potential& v) {
    if (v.is_zero() && v.form() != PotentialForm::sampled) return {{"form", "none"}};
    json j{{"form", std::string(to_string(v.form()))}};
    switch (v.form()) {
        case PotentialForm::power_law:
            j["coefficient"] = v.coefficient();
            j["beta"] = v.beta();
            break;
        case PotentialForm::harmonic:
            j["coefficient"] = v.coefficient();
            break;
        case PotentialForm::soft_coulomb:
            j["coefficient"] = v.coefficient();
            j["softening"] = v.softening();
            break;
        case PotentialForm::sampled:
            j["samples"] = v.samples();
            break;
    }
    return j;
}

}  // namespace

const std::vector<std::string>& check_suite_names() {
    static const std::vector<std::string> names{"hermiticity", "parseval", "cross_route",
                                                "picture_equivalence", "virial"};
    return names;
}

Grid RunConfig::make_grid() const { return aqm::make_grid(grid.n, grid.x_min, grid.x_max); }

RunConfig parse_config(const json& doc) {
    require_object(doc, "config");
    check_keys(doc, "", {"grid", "hamiltonian", "initial_state", "evolution", "eigen", "hydrogen", "check",
                         "output"});
    RunConfig cfg;
    try {
        if (doc.contains("grid")) parse_grid(doc.at("grid"), cfg.grid);
        cfg.make_grid();
        if (doc.contains("hamiltonian")) parse_hamiltonian(doc.at("hamiltonian"), cfg.hamiltonian, cfg.grid.n);
        cfg.hamiltonian.validate();
        if (doc.contains("initial_state")) parse_initial_state(doc.at("initial_state"), cfg.initial_state);
        if (doc.contains("evolution")) parse_evolution(doc.at("evolution"), cfg.evolution);
        if (doc.contains("eigen")) parse_eigen(doc.at("eigen"), cfg.eigen);
        if (doc.contains("hydrogen")) parse_hydrogen(doc.at("hydrogen"), cfg.hydrogen);
        if (doc.contains("check")) parse_check(doc.at("check"), cfg.check);
        if (doc.contains("output")) parse_output(doc.at("output"), cfg.output);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
    json fit = nullptr;
    if (cfg.hydrogen.fit) {
        json lines = json::array();
        for (const auto& l : cfg.hydrogen.fit->lines) {
            lines.push_back({{"k", l.k}, {"n", l.n}, {"energy_kev", l.energy_kev}});
        }
        fit = {{"lines", lines},
               {"initial_beta", cfg.hydrogen.fit->initial_beta},
               {"bracket", {cfg.hydrogen.fit->beta_min, cfg.hydrogen.fit->beta_max}}};
    }
    json transitions = json::array();
    for (const auto& [k, n] : cfg.hydrogen.transitions) transitions.push_back({k, n});
    json hydrogen{{"alpha", cfg.hydrogen.alpha},
                  {"mode", std::string(hydrogen::to_string(cfg.hydrogen.mode))},
                  {"transitions", transitions},
                  {"levels", cfg.hydrogen.levels}};
    if (!fit.is_null()) hydrogen["fit"] = fit;
    const auto& h = cfg.hamiltonian;
    return {
        {"grid", {{"n", cfg.grid.n}, {"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}}},
        {"hamiltonian",
         {{"alpha", h.alpha.value()},
          {"mass", h.mass},
          {"branch", std::string(to_string(h.branch))},
          {"potential", potential_to_json(h.potential)}}},
        {"initial_state",
         {{"kind", cfg.initial_state.kind},
          {"x0", cfg.initial_state.x0},
          {"p0", cfg.initial_state.p0},
          {"sigma", cfg.initial_state.sigma},
          {"k", cfg.initial_state.k}}},
        {"evolution",
         {{"dt", cfg.evolution.dt},
          {"steps", cfg.evolution.steps},
          {"record_every", cfg.evolution.record_every},
          {"observables", cfg.evolution.observables},
          {"leakage_tolerance", cfg.evolution.leakage_tolerance}}},
        {"eigen",
         {{"basis", cfg.eigen.basis},
          {"basis_size", cfg.eigen.basis_size},
          {"states", cfg.eigen.states},
          {"virial", cfg.eigen.virial},
          {"length_scale", cfg.eigen.length_scale}}},
        {"hydrogen", hydrogen},
        {"check",
         {{"suites", cfg.check.suites},
          {"seed", cfg.check.seed},
          {"samples", cfg.check.samples},
          {"alpha", cfg.check.alpha},
          {"branch", std::string(to_string(cfg.check.branch))}}},
        {"output", {{"format", cfg.output.format}, {"path", cfg.output.path}, {"precision", cfg.output.precision}}},
    };
}

}  // namespace aqm::cli

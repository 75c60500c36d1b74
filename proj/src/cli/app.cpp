#include "aqm/cli/app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>

#include "aqm/errors.hpp"
#include "aqm/parallel.hpp"

#ifndef AQM_VERSION
#define AQM_VERSION "0.0.0"
#endif

namespace aqm::cli {

namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        body(out);
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

struct Invocation {
    std::string command;
    std::string config_path;
    std::string output_dir;
    bool single_thread = false;
    std::string mode;
};

Job prepare(const std::string& command, const RunConfig& cfg) {
    if (command == "evolve") return prepare_evolve(cfg);
    if (command == "eigen") return prepare_eigen(cfg);
    if (command == "hydrogen") return prepare_hydrogen(cfg);
    return prepare_check(cfg);
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    Job job;
    try {
        if (!inv.config_path.empty()) cfg = load_config(inv.config_path);
        if (!inv.mode.empty()) cfg.hydrogen.mode = hydrogen::constants_mode_from_string(inv.mode);
        if (!inv.output_dir.empty()) cfg.output.path = inv.output_dir;
        job = prepare(inv.command, cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const PreconditionError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    if (inv.single_thread) set_thread_count(1);

    const fs::path dir = cfg.output.path;
    Manifest manifest(dir, inv.command, cfg, inv.single_thread);
    try {
        fs::create_directories(dir);
        manifest.set_derived(job.derived);
        manifest.write("running");
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return exit_config_error;
    }

    OutputSink sink(dir, manifest);
    try {
        const int code = job.run(sink, out);
        manifest.write("complete");
        return code;
    } catch (const std::exception& e) {
        err << "aborted: " << e.what() << '\n';
        manifest.write("aborted", e.what());
        return exit_numerical_abort;
    }
}

}  // namespace

Manifest::Manifest(fs::path dir, std::string command, const RunConfig& cfg, bool single_thread)
    : path_(std::move(dir) / "manifest.json") {
    doc_ = {{"tool", "aqm"},
            {"version", AQM_VERSION},
            {"command", std::move(command)},
            {"timestamp", utc_timestamp()},
            {"single_thread", single_thread},
            {"status", "running"},
            {"config", to_json(cfg)},
            {"derived", nlohmann::json::object()},
            {"outputs", nlohmann::json::array()}};
}

void Manifest::add_output(const std::string& name) { doc_["outputs"].push_back(name); }

void Manifest::write(const std::string& status, const std::string& error) {
    doc_["status"] = status;
    if (!error.empty()) doc_["error"] = error;
    write_file_atomic(path_, [&](std::ostream& os) { os << doc_.dump(2) << '\n'; });
}

void OutputSink::write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    write_file_atomic(dir_ / name, body);
    manifest_.add_output(name);
}

void OutputSink::write_json(const std::string& name, const nlohmann::json& doc) {
    write(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional-dispersion quantum mechanics: dynamics, spectra and the anomalous Bohr atom", "aqm"};
    app.set_version_flag("--version", AQM_VERSION);
    app.require_subcommand(1);

    Invocation inv;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", inv.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--output", inv.output_dir, "Output directory (overrides output.path)");
        sub->add_flag("--single-thread", inv.single_thread, "Serial execution for bit-reproducible output");
    };
    add_common(app.add_subcommand("evolve", "Split-step time evolution of an initial state"));
    add_common(app.add_subcommand("eigen", "Lowest stationary states and the virial check"));
    auto* hyd = app.add_subcommand("hydrogen", "Anomalous Bohr atom: radii, levels, lines and exponent fit");
    add_common(hyd);
    hyd->add_option("--mode", inv.mode, "Constant set")->check(CLI::IsMember({"paper", "precise"}));
    add_common(app.add_subcommand("check", "Invariant suites with a pass/fail report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_config_error;
    }
    inv.command = app.get_subcommands().front()->get_name();
    return execute(inv, out, err);
}

}  // namespace aqm::cli

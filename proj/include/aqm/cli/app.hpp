#pragma once

#include <filesystem>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "aqm/cli/config.hpp"

namespace aqm::cli {

enum ExitCode : int { exit_success = 0, exit_check_failed = 1, exit_config_error = 2, exit_numerical_abort = 3 };

/// Entry point of the `aqm` executable: subcommands evolve, eigen,
/// hydrogen and check.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Run manifest, written before any result file and rewritten when the run
/// completes or aborts.
class Manifest {
public:
    Manifest(std::filesystem::path dir, std::string command, const RunConfig& cfg, bool single_thread);

    void set_derived(nlohmann::json derived) { doc_["derived"] = std::move(derived); }
    void add_output(const std::string& name);
    void write(const std::string& status, const std::string& error = {});

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    nlohmann::json doc_;
};

/// Result files go to the output directory and are listed in the manifest.
class OutputSink {
public:
    OutputSink(std::filesystem::path dir, Manifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {}

    void write(const std::string& name, const std::function<void(std::ostream&)>& body);
    void write_json(const std::string& name, const nlohmann::json& doc);

private:
    std::filesystem::path dir_;
    Manifest& manifest_;
};

/// A prepared command: all inputs validated, ready to run.
struct Job {
    nlohmann::json derived;
    /// Writes results; returns the exit code (0, or 1 for a failed check).
    std::function<int(OutputSink&, std::ostream&)> run;
};

/// Builds a job from a validated config. Throws ConfigError for parameter
/// combinations that the schema alone cannot reject.
Job prepare_evolve(const RunConfig& cfg);
Job prepare_eigen(const RunConfig& cfg);
Job prepare_hydrogen(const RunConfig& cfg);
Job prepare_check(const RunConfig& cfg);

struct CheckResult {
    std::string name;
    bool passed;
    double residual;
    double threshold;
    std::string detail;
};

/// Invariant suites behind `aqm check`, deterministic for a fixed seed.
std::vector<CheckResult> run_checks(const CheckBlock& block);

}  // namespace aqm::cli

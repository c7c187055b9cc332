#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nls/grid.hpp"
#include "nls/picard.hpp"
#include "nls/propagator.hpp"
#include "nls/reference.hpp"

namespace nls::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitUsage = 2,
    kExitSolver = 3,
};

struct DataSpec {
    std::string family = "gaussian"; // gaussian | plane-wave | windowed-power | schwartz | file
    double amplitude = 1.0;
    double sigma = 1.0;
    double wavenumber = 1.0;
    double alpha = 1.0;
    std::string path;
};

struct GridSpec {
    Topology topology = Topology::Periodic;
    double x_min = -16.0;
    double length = 32.0;
    std::size_t points = 256;
};

struct TimeSpec {
    double dt = 0.01;
    int steps = 100;
};

struct DispersiveSpec {
    std::vector<double> exponents{2.0, 6.0, kInf};
    double t_end = 1.0;
    int samples = 101;
};

struct ExperimentConfig {
    DataSpec data;
    GridSpec grid;
    TimeSpec time;
    int depth = 1;
    std::optional<double> eps;   // rescale the data to this size before solving
    double lebesgue_base = 0.0;  // 0 means 4n + 2
    PropagatorBackend backend;
    RemainderOptions remainder;
    OracleConfig oracle;
    std::vector<double> sweep_eps{0.05, 0.1, 0.2};
    DispersiveSpec dispersive;
    std::string out_dir = "nls-out";
};

// Every offending field, as "section.key: reason".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

// INI text with sections [grid] [data] [time] [solver] [propagator] [oracle] [sweep]
// [dispersive] [output]. Unknown sections or keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Cross-field checks for one subcommand (topology against backend, file readable, ...).
void validate_for(const ExperimentConfig& cfg, const std::string& subcommand);

GridFunction initial_data(const ExperimentConfig& cfg);

// Canonical JSON text of the effective configuration; hashed into the manifest.
std::string canonical_config(const ExperimentConfig& cfg);
std::string fnv1a_hex(const std::string& bytes);

// Outputs of one subcommand, keyed by file name. manifest.json is included.
using Artifacts = std::map<std::string, std::string>;

// Runs a subcommand without touching the filesystem (except reading data files).
// Solver failures propagate as nls::Error.
Artifacts execute(const std::string& subcommand, const ExperimentConfig& cfg);

// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nls::cli

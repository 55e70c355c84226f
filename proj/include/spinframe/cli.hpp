#pragma once

// Command-line front end. Every subcommand writes report.json (deterministic
// for a fixed config and seed) and timing.json (wall time) into the output
// directory, plus CSV and two-column .dat files for plotting.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error,
// 3 numerical error.

#include "spinframe/grid.hpp"
#include "spinframe/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spinframe::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"wigner-table",    "transform",      "rotate-2pi",
                                                "curvature",       "evolve",         "verify-madelung",
                                                "exchange-phase",  "symmetrize",     "verify-all"};
    return names;
}

struct RunConfig {
    std::string subcommand;
    int two_s = 1;
    int n_alpha = 16, n_beta = 16, n_gamma = 16;
    double giration_radius = 1.0;
    double mass = 1.0;
    double hbar = 1.0;
    std::uint64_t seed = 1;
    std::string out_dir = "spinframe-out";
    int refine = 3;
    std::string input;   // transform: spinor JSON; symmetrize: states JSON
    std::string config;  // evolve / verify-madelung: run JSON
    std::string frames;  // exchange-phase: frame pairs JSON
    std::vector<std::string> angles;  // wigner-table: "alpha,beta,gamma" triples
};

struct RunResult {
    Report report;
    double wall_seconds = 0.0;
    std::vector<std::string> files;  // written artifacts, relative to out_dir
    int exit_code = kExitPass;
};

/// Runs one subcommand and writes its artifacts. Throws ConfigError for bad
/// input files; numerical errors propagate as spinframe::Error.
RunResult run(const RunConfig& config);

/// Parses argv (flags may follow the subcommand; SPINFRAME_* environment
/// variables supply defaults), runs, and returns the exit status.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinframe::cli

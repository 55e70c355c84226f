#pragma once

// Verification suites behind the CLI subcommands. Each returns named checks
// (unique within a suite, prefixed by the suite name) and may fill a data
// object for the report.

#include "spinframe/dynamics.hpp"
#include "spinframe/exchange.hpp"
#include "spinframe/report.hpp"
#include "spinframe/wavefunction.hpp"

#include <cstdint>
#include <optional>

namespace spinframe::suites {

struct SuiteOptions {
    SpinLabel spin{1};
    int n_alpha = 16, n_beta = 16, n_gamma = 16;
    PhysicalParameters params;
    std::uint64_t seed = 1;
    int refine = 3;

    /// Grid on the chart natural for the spin (4pi for half-integer s).
    GridPtr grid() const;
    GridPtr grid(GammaPeriod period) const;
};

using Json = nlohmann::ordered_json;

Eigen::VectorXcd random_spinor(SpinLabel spin, std::uint64_t seed);

std::vector<Check> wigner_checks(const SuiteOptions& opt, Json& data);
std::vector<Check> transform_checks(const SpinorField& spinor, const GridPtr& grid, const PhysicalParameters& params,
                                    Json& data);
std::vector<Check> rotation_checks(const SuiteOptions& opt, Json& data);
std::vector<Check> geometry_checks(const SuiteOptions& opt, Json& data);
std::vector<Check> laplacian_checks(const SuiteOptions& opt, Json& data);
std::vector<Check> weyl_checks(const SuiteOptions& opt, Json& data);

struct EvolveSetup {
    std::vector<std::pair<ModeIndex, Complex>> modes;
    double dt = 0.01;
    int steps = 1000;
};
EvolveSetup default_evolve_setup(SpinLabel spin);
/// Builds the normalized initial state of the given modes on grid.
ScalarWavefunction superposition(SpinLabel spin, const GridPtr& grid, const std::vector<std::pair<ModeIndex, Complex>>& modes);
std::vector<Check> evolve_checks(const SuiteOptions& opt, const EvolveSetup& setup, Json& data,
                                 std::optional<DynamicalRun>* run_out = nullptr);

MadelungConfig default_madelung_config(SpinLabel spin, int levels);
std::vector<Check> madelung_checks(const SuiteOptions& opt, const MadelungConfig& config, Json& data);

struct FramePair {
    EulerAngles a, b;
};
std::vector<FramePair> random_frame_pairs(int count, std::uint64_t seed);
std::vector<Check> exchange_checks(const SuiteOptions& opt, const std::vector<FramePair>& pairs, Json& data);

std::vector<Check> statistics_checks(const SuiteOptions& opt, Json& data);

}  // namespace spinframe::suites

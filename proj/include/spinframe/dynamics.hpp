#pragma once

// Free-rotor dynamics on SO(3) and the polar (Madelung) form of it:
//   d_t S + g^{ij} d_i S d_j S / 2m + (xi^2 hbar^2 / 2m) R_W = 0
//   d_t rho + (1/m) (1/sqrt g) d_i (sqrt g rho g^{ij} d_j S) = 0
//   R_W = Rbar - xi^{-2} (LB sqrt rho) / sqrt rho
// which is the Schroedinger equation
//   i hbar d_t Psi = -(hbar^2/2m) LB Psi + (hbar^2 xi^2 Rbar / 2m) Psi.

#include "spinframe/expansion.hpp"
#include "spinframe/spectral.hpp"
#include "spinframe/wavefunction.hpp"

#include <optional>

namespace spinframe {

enum class BohmMethod {
    ChainRule,   // LB rho / (2 rho) - |grad rho|^2 / (4 rho^2); smooth wherever rho is
    DirectSqrt,  // LB applied to sqrt(rho)
};

struct WeylCurvatureField {
    RealField values;   // R_W
    double riemann = 0.0;
    RealField quantum;  // -xi^{-2} (LB sqrt rho) / sqrt rho
};

/// (LB sqrt rho) / sqrt rho at every node. Throws NonPositiveDensityError.
RealField bohm_ratio(const SpectralOperators& ops, const RealField& rho, BohmMethod method = BohmMethod::ChainRule);

WeylCurvatureField weyl_curvature(const SpectralOperators& ops, const RealField& rho, const PhysicalParameters& params,
                                  BohmMethod method = BohmMethod::ChainRule);

struct ResidualNorm {
    double rms = 0.0;      // see each function for the weight
    double max_abs = 0.0;
    RealField field;
};

/// HJE residual. Spatial derivatives of S are taken from sqrt(rho) e^{iS/hbar},
/// which is smooth even where S jumps by 2 pi hbar. rms is probability-weighted:
/// sqrt(int rho r^2 / int rho). Throws NonPositiveDensityError, GridMismatchError.
ResidualNorm hje_residual(const SpectralOperators& ops, const RealField& rho, const RealField& action,
                          const RealField& dS_dt, const PhysicalParameters& params,
                          BohmMethod method = BohmMethod::ChainRule);

/// Continuity residual with current rho g^{ij} d_j S / m; rms is the plain Haar RMS.
ResidualNorm continuity_residual(const SpectralOperators& ops, const RealField& rho, const RealField& action,
                                 const RealField& drho_dt, const PhysicalParameters& params);

/// E_j = hbar^2 j(j+1) / (2 m a^2) + hbar^2 xi^2 Rbar / (2m).
double mode_energy(int two_j, const PhysicalParameters& params);

/// H Psi on the grid, with the constant curvature shift kept.
ComplexField apply_hamiltonian(const SpectralOperators& ops, const ComplexField& psi, const PhysicalParameters& params);

struct EvolveOptions {
    int two_j_cap = 8;                   // j <= 4
    double projection_tolerance = 1e-10;  // relative residual of the mode expansion
    int audit_every = 1;                 // grid norm/energy every k steps (0: endpoints only)
};

struct DynamicalState {
    double time = 0.0;
    double dt = 0.0;
    Eigen::VectorXcd coefficients;
    double norm = 0.0;    // grid quadrature of |Psi|^2 sqrt g
    double energy = 0.0;  // <Psi|H|Psi> / <Psi|Psi> on the grid
    bool audited = false;
};

class DynamicalRun {
public:
    DynamicalRun(SpinLabel spin, PhysicalParameters params, std::shared_ptr<const WignerBasis> basis,
                 Eigen::VectorXcd initial, std::vector<double> energies);

    SpinLabel spin() const { return spin_; }
    const PhysicalParameters& params() const { return params_; }
    const WignerBasis& basis() const { return *basis_; }
    const Eigen::VectorXd& energies() const { return energies_; }
    const std::vector<DynamicalState>& states() const { return states_; }

    Eigen::VectorXcd coefficients_at(double t) const;
    ScalarWavefunction wavefunction_at(double t) const;

    double max_norm_drift() const;    // max |norm(t) - norm(0)| over audited states
    double max_energy_drift() const;

    std::vector<DynamicalState>& mutable_states() { return states_; }

private:
    SpinLabel spin_;
    PhysicalParameters params_;
    std::shared_ptr<const WignerBasis> basis_;
    Eigen::VectorXcd initial_;
    Eigen::VectorXd energies_;
    std::vector<DynamicalState> states_;
};

/// Spectral evolution: project on conj D^j_{m s}, j <= cap, and advance each
/// mode by exp(-i E_j t / hbar). Throws MixedGammaModeError when the gamma
/// dependence is not e^{i s gamma}, ModeCapError when the expansion misses
/// more than projection_tolerance of the state.
DynamicalRun evolve(const ScalarWavefunction& initial, double dt, int steps, const PhysicalParameters& params,
                    const EvolveOptions& options = {});

struct MadelungLevel {
    int n = 0;           // nodes per angle
    double h = 0.0;      // 2 pi / n
    double dt = 0.0;
    double hje = 0.0;         // worst over sample times
    double continuity = 0.0;
    double norm_drift = 0.0;
};

struct MadelungReport {
    std::vector<MadelungLevel> levels;
    double hje_order = 0.0;          // NaN when not fitted
    double continuity_order = 0.0;
    bool hje_at_rounding = false;    // all fitted points at the rounding floor
    bool continuity_at_rounding = false;
    double rounding_floor = 0.0;
    double required_order = 2.0;
    bool pass = false;
};

/// Least-squares slope of log(residual) against log(h) over levels above the
/// floor. Throws RefinementError for fewer than 3 levels.
MadelungReport madelung_report(const std::vector<MadelungLevel>& levels, double rounding_floor = 1e-11,
                               double required_order = 2.0);

struct MadelungConfig {
    SpinLabel spin;
    std::vector<std::pair<ModeIndex, Complex>> modes;  // initial amplitudes (normalized internally)
    int base_n = 16;
    int levels = 3;
    double refine_factor = 2.0;
    double dt0 = 0.1;
    std::vector<double> sample_times{0.35, 0.8};
};

/// Residuals of the polar equations on spectrally evolved states, grid and dt
/// refined together. Time derivatives use the 4th-order central stencil on
/// snapshots Psi(t +- dt), Psi(t +- 2 dt).
std::vector<MadelungLevel> madelung_study(const MadelungConfig& config, const PhysicalParameters& params);

}  // namespace spinframe

#pragma once

// Spinor fields psi^sigma and the scalar wavefunction on E3 x SO(3)
//   Psi(alpha, beta, gamma; r) = N e^{i s gamma} sum_sigma c_sigma(alpha, beta) psi^sigma(r)
// with N = sqrt((2s+1) / (a^3 V)), V the Haar volume of the gamma chart, so
// that sum_r dV integral |Psi|^2 sqrt(g) d^3q = sum_r dV sum_sigma |psi^sigma(r)|^2.

#include "spinframe/expansion.hpp"
#include "spinframe/grid.hpp"
#include "spinframe/rotation.hpp"

#include <Eigen/Dense>

namespace spinframe {

struct SpinorField {
    SpinLabel spin;
    Eigen::MatrixXcd components;       // rows: spatial points; column i is sigma = s - i
    std::vector<double> cell_volumes;  // dV per spatial point
    double time = 0.0;

    /// Angular-only spinor at a single spatial point with dV = 1.
    static SpinorField at_point(SpinLabel spin, const Eigen::VectorXcd& psi);

    std::size_t n_points() const { return static_cast<std::size_t>(components.rows()); }
    Eigen::VectorXcd at(std::size_t point) const { return components.row(static_cast<Eigen::Index>(point)).transpose(); }
    double norm_squared() const;
    /// Throws NonNormalizableError for a zero or non-finite field.
    SpinorField normalized() const;
};

struct ScalarWavefunction {
    SpinLabel spin;
    GridPtr grid;
    std::vector<ComplexField> values;  // one angular field per spatial point
    std::vector<double> cell_volumes;
    double normalization = 1.0;        // the N used when built from a spinor
    double time = 0.0;

    std::size_t n_points() const { return values.size(); }
    const ComplexField& angular(std::size_t point = 0) const { return values.at(point); }
    RealField density(std::size_t point = 0) const;
    /// sum_r dV a^3 sum_n w_n |Psi_n|^2
    double norm_squared() const;
};

double scalar_normalization(SpinLabel spin, const So3Grid& grid);

/// Relative Haar-RMS of the part of Psi not of the form e^{i s gamma} F(alpha, beta).
double gamma_mode_leakage(const ComplexField& values, const So3Grid& grid, SpinLabel spin);

/// Throws PeriodMismatchError (half-integer s on the 2pi chart) and
/// NonNormalizableError (spinor norm not 1 to 1e-8).
ScalarWavefunction scalar_from_spinor(const SpinorField& spinor, GridPtr grid);

/// Projection onto the c_sigma basis. Throws MixedGammaModeError when the
/// gamma dependence is not a pure e^{i s gamma} mode (relative leakage above
/// mixed_tolerance) and NonNormalizableError for zero or non-finite input.
SpinorField spinor_from_scalar(const ScalarWavefunction& scalar, double mixed_tolerance = 1e-8);

/// psi -> D^s(Q) psi along the rotation's own SU(2) path (2pi gives (-1)^{2s}).
SpinorField rotate_lab_frame(const SpinorField& spinor, const LabRotation& rotation);

/// Point transformation Psi'(U) = Psi(U_Q^{-1} U) with U_Q the canonical lift of
/// the SO(3) element; no phase factor. Psi is evaluated off-grid through its
/// Wigner expansion, truncated at the largest degree the grid resolves.
ScalarWavefunction rotate_lab_frame(const ScalarWavefunction& scalar, const LabRotation& rotation);

struct PolarFields {
    RealField rho;
    RealField action;  // S, with sqrt(rho) e^{iS/hbar} = Psi
};

/// Polar decomposition of one spatial point's angular field. The phase is
/// unwrapped across alpha then beta on the first gamma plane, then along each
/// gamma line using the analytic slope s. Throws NodeCrossingError when
/// |Psi| < node_threshold * max|Psi| at any node.
PolarFields density_and_action(const ScalarWavefunction& scalar, double hbar = 1.0, std::size_t point = 0,
                               double node_threshold = 1e-8);

}  // namespace spinframe

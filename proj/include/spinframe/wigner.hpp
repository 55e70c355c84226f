#pragma once

// Wigner d- and D-matrices for integer and half-integer spin.
//
// Convention (fixed so that the spin-1/2 expansion coefficients come out as
// e^{i alpha/2} cos(beta/2) and e^{-i alpha/2} sin(beta/2)):
//
//   D^s_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d^s_{m'm}(beta) e^{-i m gamma}
//   d^s_{m'm}(beta) = <s m'| exp(-i beta J_y) |s m>
//
// Matrix row/column index i corresponds to projection m = s - i, so index 0
// is m = +s. The map R(alpha, beta, gamma) = R_z(alpha) R_y(beta) R_z(gamma)
// -> D is a homomorphism (projective, sign +-1, for half-integer s).
//
// The expansion coefficient used by the scalar wavefunction is
//   c_sigma(alpha, beta) = e^{i sigma alpha} d^s_{sigma, s}(beta)
//                        = conj(D^s_{sigma s}(alpha, beta, 0)).
//
// No memo table: every call evaluates the explicit sum. Callers that need
// repeated (s, beta) values tabulate them (see WignerBasis).

#include "spinframe/rotation.hpp"
#include "spinframe/types.hpp"

#include <Eigen/Dense>

namespace spinframe::wigner {

struct WignerMatrix {
    SpinLabel spin;
    Eigen::MatrixXcd entries;
    EulerAngles angles;

    /// max |(M M^dagger - 1)_{ij}|
    double unitarity_error() const;
};

/// e^{i angle}, exact when angle is (to rounding) a multiple of pi/2.
Complex exact_phase(double angle);

/// d^j_{m'm}(beta) with all labels doubled (two_j, two_mp, two_m).
double small_d_element(int two_j, int two_mp, int two_m, double beta);

/// D^j_{m'm}(alpha, beta, gamma), labels doubled.
Complex big_D_element(int two_j, int two_mp, int two_m, const EulerAngles& angles);

Eigen::MatrixXd small_d_matrix(SpinLabel spin, double beta);
WignerMatrix small_d(SpinLabel spin, double beta);
WignerMatrix big_D(SpinLabel spin, const EulerAngles& angles);

/// c_sigma(alpha, beta); two_sigma must be a projection of spin.
Complex coefficient_c(SpinLabel spin, int two_sigma, double alpha, double beta);

/// exp(-i angle n.J) for spin s. The angle is not reduced, so a 2pi turn gives
/// exactly (-1)^{2s} times the identity.
Eigen::MatrixXcd rotation_about_axis(SpinLabel spin, const Eigen::Vector3d& axis, double angle);

/// D^s of a lab rotation: Euler form uses big_D, axis form rotation_about_axis.
Eigen::MatrixXcd lab_rotation_matrix(SpinLabel spin, const LabRotation& rotation);

}  // namespace spinframe::wigner

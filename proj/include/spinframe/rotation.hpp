#pragma once

// Rotation matrices in the z-y-z Euler convention R = R_z(alpha) R_y(beta) R_z(gamma),
// and their SU(2) lifts.

#include "spinframe/types.hpp"

#include <Eigen/Dense>

namespace spinframe {

using Su2 = Eigen::Matrix2cd;

Eigen::Matrix3d rot_z(double angle);
Eigen::Matrix3d rot_y(double angle);
Eigen::Matrix3d euler_matrix(const EulerAngles& angles);
Eigen::Matrix3d axis_angle_matrix(const Eigen::Vector3d& axis, double angle);

/// Euler angles of a proper rotation: alpha in [0, 2pi), beta in [0, pi], gamma in [0, 2pi).
/// At beta = 0 or pi the split between alpha and gamma is fixed by gamma = 0.
EulerAngles euler_from_matrix(const Eigen::Matrix3d& r);

/// Spin-1/2 representation D^{1/2}(alpha, beta, gamma).
Su2 su2_from_euler(const EulerAngles& angles);
/// exp(-i angle n.sigma/2).
Su2 su2_axis_angle(const Eigen::Vector3d& axis, double angle);
/// Euler angles of an SU(2) element on the double cover; alpha and gamma are returned
/// unreduced but consistent, so su2_from_euler(euler_from_su2(u)) == u.
EulerAngles euler_from_su2(const Su2& u);
/// SO(3) image of an SU(2) element.
Eigen::Matrix3d so3_from_su2(const Su2& u);

/// Axis-angle decomposition of a proper rotation with angle in [0, pi].
struct AxisAngle {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    double angle = 0.0;
};
AxisAngle axis_angle_from_matrix(const Eigen::Matrix3d& r);

/// A rotation of the laboratory frame. The angle is kept unreduced: a spinor
/// sees the full SU(2) path (2pi gives (-1)^{2s}); a scalar field sees only the
/// SO(3) element and is pulled back through its canonical lift.
class LabRotation {
public:
    static LabRotation about_axis(const Eigen::Vector3d& axis, double angle);
    static LabRotation from_euler(const EulerAngles& angles);
    static LabRotation identity() { return about_axis(Eigen::Vector3d::UnitZ(), 0.0); }

    bool is_euler() const { return is_euler_; }
    const Eigen::Vector3d& axis() const { return axis_; }
    double angle() const { return angle_; }
    const EulerAngles& euler() const { return euler_; }

    Eigen::Matrix3d matrix() const;
    /// Lift with rotation angle in [0, pi], independent of how the rotation was specified.
    Su2 canonical_lift() const;

private:
    bool is_euler_ = false;
    Eigen::Vector3d axis_ = Eigen::Vector3d::UnitZ();
    double angle_ = 0.0;
    EulerAngles euler_;
};

}  // namespace spinframe

#include "spinframe/rotation.hpp"

#include "spinframe/error.hpp"

#include <algorithm>

namespace spinframe {

namespace {

constexpr Complex kI{0.0, 1.0};

double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

}  // namespace

Eigen::Matrix3d rot_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix3d r;
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

Eigen::Matrix3d rot_y(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix3d r;
    r << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
    return r;
}

Eigen::Matrix3d euler_matrix(const EulerAngles& angles) {
    return rot_z(angles.alpha) * rot_y(angles.beta) * rot_z(angles.gamma);
}

Eigen::Matrix3d axis_angle_matrix(const Eigen::Vector3d& axis, double angle) {
    const double norm = axis.norm();
    if (!(norm > 0.0)) throw ConfigError("rotation axis must be nonzero");
    return Eigen::AngleAxisd(angle, axis / norm).toRotationMatrix();
}

EulerAngles euler_from_matrix(const Eigen::Matrix3d& r) {
    const double sb = std::hypot(r(0, 2), r(1, 2));
    EulerAngles out;
    out.beta = std::atan2(sb, r(2, 2));
    if (sb > 1e-12) {
        out.alpha = wrap_2pi(std::atan2(r(1, 2), r(0, 2)));
        out.gamma = wrap_2pi(std::atan2(r(2, 1), -r(2, 0)));
    } else if (r(2, 2) > 0.0) {
        // R = R_z(alpha + gamma)
        out.beta = 0.0;
        out.alpha = wrap_2pi(std::atan2(r(1, 0), r(0, 0)));
        out.gamma = 0.0;
    } else {
        // R = R_z(alpha) R_y(pi) R_z(gamma); with gamma = 0, R(0,0) = -cos(alpha), R(1,0) = -sin(alpha)
        out.beta = kPi;
        out.alpha = wrap_2pi(std::atan2(-r(1, 0), -r(0, 0)));
        out.gamma = 0.0;
    }
    return out;
}

Su2 su2_from_euler(const EulerAngles& q) {
    const double c = std::cos(0.5 * q.beta), s = std::sin(0.5 * q.beta);
    const double sum = 0.5 * (q.alpha + q.gamma);
    const double diff = 0.5 * (q.alpha - q.gamma);
    Su2 u;
    u(0, 0) = std::exp(-kI * sum) * c;
    u(0, 1) = -std::exp(-kI * diff) * s;
    u(1, 0) = std::exp(kI * diff) * s;
    u(1, 1) = std::exp(kI * sum) * c;
    return u;
}

Su2 su2_axis_angle(const Eigen::Vector3d& axis, double angle) {
    const Eigen::Vector3d n = axis.normalized();
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Su2 u;
    u(0, 0) = Complex(c, -s * n.z());
    u(0, 1) = Complex(-s * n.y(), -s * n.x());
    u(1, 0) = Complex(s * n.y(), -s * n.x());
    u(1, 1) = Complex(c, s * n.z());
    return u;
}

EulerAngles euler_from_su2(const Su2& u) {
    const double c = std::abs(u(0, 0));
    const double s = std::abs(u(1, 0));
    EulerAngles q;
    q.beta = 2.0 * std::atan2(s, c);
    const double half_sum = c > 1e-14 ? -std::arg(u(0, 0)) : 0.0;
    const double half_diff = s > 1e-14 ? std::arg(u(1, 0)) : 0.0;
    q.alpha = half_sum + half_diff;
    q.gamma = half_sum - half_diff;
    return q;
}

Eigen::Matrix3d so3_from_su2(const Su2& u) {
    // R_ij = (1/2) tr(sigma_i U sigma_j U^dagger)
    std::array<Su2, 3> sigma;
    sigma[0] << 0.0, 1.0, 1.0, 0.0;
    sigma[1] << 0.0, -kI, kI, 0.0;
    sigma[2] << 1.0, 0.0, 0.0, -1.0;
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = 0.5 * (sigma[static_cast<std::size_t>(i)] * u * sigma[static_cast<std::size_t>(j)] * u.adjoint())
                                .trace()
                                .real();
        }
    }
    return r;
}

AxisAngle axis_angle_from_matrix(const Eigen::Matrix3d& r) {
    Eigen::AngleAxisd aa(r);
    AxisAngle out;
    out.axis = aa.axis();
    out.angle = aa.angle();
    if (out.angle < 0.0) {
        out.angle = -out.angle;
        out.axis = -out.axis;
    }
    if (out.angle > kPi) {
        out.angle = kTwoPi - out.angle;
        out.axis = -out.axis;
    }
    return out;
}

LabRotation LabRotation::about_axis(const Eigen::Vector3d& axis, double angle) {
    if (!(axis.norm() > 0.0)) throw ConfigError("rotation axis must be nonzero");
    LabRotation r;
    r.is_euler_ = false;
    r.axis_ = axis.normalized();
    r.angle_ = angle;
    return r;
}

LabRotation LabRotation::from_euler(const EulerAngles& angles) {
    LabRotation r;
    r.is_euler_ = true;
    r.euler_ = angles;
    return r;
}

Eigen::Matrix3d LabRotation::matrix() const {
    return is_euler_ ? euler_matrix(euler_) : axis_angle_matrix(axis_, angle_);
}

Su2 LabRotation::canonical_lift() const {
    AxisAngle aa = axis_angle_from_matrix(matrix());
    return su2_axis_angle(aa.axis, aa.angle);
}

}  // namespace spinframe

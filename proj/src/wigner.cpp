#include "spinframe/wigner.hpp"

#include "spinframe/error.hpp"

#include <array>
#include <string>

namespace spinframe::wigner {

namespace {

constexpr int kMaxFactorial = 2 * SpinLabel::kMaxTwoS + 2;

// n! in double; exact through 18!, within an ulp beyond.
const std::array<double, kMaxFactorial + 1>& factorials() {
    static const std::array<double, kMaxFactorial + 1> table = [] {
        std::array<double, kMaxFactorial + 1> t{};
        t[0] = 1.0;
        for (int n = 1; n <= kMaxFactorial; ++n) t[static_cast<std::size_t>(n)] = t[static_cast<std::size_t>(n - 1)] * n;
        return t;
    }();
    return table;
}

double fact(int n) { return factorials()[static_cast<std::size_t>(n)]; }

double int_pow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

void check_labels(int two_j, int two_mp, int two_m) {
    if (two_j < 0 || two_j > SpinLabel::kMaxTwoS) {
        throw InvalidProjectionError("2j=" + std::to_string(two_j) + " outside supported range");
    }
    auto ok = [two_j](int t) { return t >= -two_j && t <= two_j && ((two_j - t) % 2 == 0); };
    if (!ok(two_mp) || !ok(two_m)) {
        throw InvalidProjectionError("projection does not belong to 2j=" + std::to_string(two_j));
    }
}

}  // namespace

double WignerMatrix::unitarity_error() const {
    const Eigen::MatrixXcd e = entries * entries.adjoint() -
                               Eigen::MatrixXcd::Identity(entries.rows(), entries.cols());
    return e.cwiseAbs().maxCoeff();
}

Complex exact_phase(double angle) {
    const double quarter_turns = angle / (0.5 * kPi);
    const double nearest = std::round(quarter_turns);
    if (std::abs(quarter_turns - nearest) <= 1e-14 * std::max(1.0, std::abs(nearest))) {
        long q = static_cast<long>(nearest) % 4;
        if (q < 0) q += 4;
        switch (q) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(angle), std::sin(angle)};
}

double small_d_element(int two_j, int two_mp, int two_m, double beta) {
    check_labels(two_j, two_mp, two_m);
    const int j_plus_mp = (two_j + two_mp) / 2;
    const int j_minus_mp = (two_j - two_mp) / 2;
    const int j_plus_m = (two_j + two_m) / 2;
    const int j_minus_m = (two_j - two_m) / 2;
    const int mp_minus_m = (two_mp - two_m) / 2;

    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    const double pre = std::sqrt(fact(j_plus_mp) * fact(j_minus_mp) * fact(j_plus_m) * fact(j_minus_m));

    const int k_min = std::max(0, -mp_minus_m);
    const int k_max = std::min(j_plus_m, j_minus_mp);
    double sum = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const int e1 = j_plus_m - k;
        const int e2 = j_minus_mp - k;
        const int e3 = k + mp_minus_m;
        const double denom = fact(e1) * fact(k) * fact(e2) * fact(e3);
        const double sign = (e3 % 2 == 0) ? 1.0 : -1.0;
        sum += sign * int_pow(c, e1 + e2) * int_pow(s, 2 * k + mp_minus_m) / denom;
    }
    return pre * sum;
}

Complex big_D_element(int two_j, int two_mp, int two_m, const EulerAngles& q) {
    const double d = small_d_element(two_j, two_mp, two_m, q.beta);
    return exact_phase(-0.5 * two_mp * q.alpha) * d * exact_phase(-0.5 * two_m * q.gamma);
}

Eigen::MatrixXd small_d_matrix(SpinLabel spin, double beta) {
    const int n = spin.dimension();
    Eigen::MatrixXd d(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            d(r, c) = small_d_element(spin.two_s(), spin.two_sigma(r), spin.two_sigma(c), beta);
        }
    }
    return d;
}

WignerMatrix small_d(SpinLabel spin, double beta) {
    if (!(beta >= 0.0 && beta <= kPi)) {
        throw InvalidProjectionError("small_d requires beta in [0, pi]");
    }
    return {spin, small_d_matrix(spin, beta).cast<Complex>(), EulerAngles{0.0, beta, 0.0}};
}

WignerMatrix big_D(SpinLabel spin, const EulerAngles& q) {
    const int n = spin.dimension();
    const Eigen::MatrixXd d = small_d_matrix(spin, q.beta);
    Eigen::MatrixXcd out(n, n);
    for (int r = 0; r < n; ++r) {
        const Complex left = exact_phase(-0.5 * spin.two_sigma(r) * q.alpha);
        for (int c = 0; c < n; ++c) {
            out(r, c) = left * d(r, c) * exact_phase(-0.5 * spin.two_sigma(c) * q.gamma);
        }
    }
    return {spin, out, q};
}

Complex coefficient_c(SpinLabel spin, int two_sigma, double alpha, double beta) {
    spin.index_of(two_sigma);  // validates
    return exact_phase(0.5 * two_sigma * alpha) *
           small_d_element(spin.two_s(), two_sigma, spin.two_s(), beta);
}

Eigen::MatrixXcd rotation_about_axis(SpinLabel spin, const Eigen::Vector3d& axis, double angle) {
    const int n = spin.dimension();
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) phases(i) = exact_phase(-0.5 * spin.two_sigma(i) * angle);
    if ((phases.array() == phases(0)).all()) {
        // B diag(c) B^dagger = c * 1 exactly.
        return phases(0) * Eigen::MatrixXcd::Identity(n, n);
    }
    // Boost B(alpha_n, beta_n) carries z onto the axis: R_n(angle) = B R_z(angle) B^{-1}.
    const Eigen::Vector3d u = axis.normalized();
    const EulerAngles boost{std::atan2(u.y(), u.x()), std::acos(std::clamp(u.z(), -1.0, 1.0)), 0.0};
    const Eigen::MatrixXcd b = big_D(spin, boost).entries;
    return b * phases.asDiagonal() * b.adjoint();
}

Eigen::MatrixXcd lab_rotation_matrix(SpinLabel spin, const LabRotation& rotation) {
    if (rotation.is_euler()) return big_D(spin, rotation.euler()).entries;
    return rotation_about_axis(spin, rotation.axis(), rotation.angle());
}

}  // namespace spinframe::wigner

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace spinframe {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;
using RealField = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Spin quantum number stored as the integer 2s, so half-integers stay exact.
/// Projections sigma are likewise carried as 2*sigma.
class SpinLabel {
public:
    static constexpr int kMaxTwoS = 20;  // s <= 10

    constexpr SpinLabel() = default;
    explicit SpinLabel(int two_s);

    static SpinLabel from_spin(double s);

    constexpr int two_s() const { return two_s_; }
    constexpr double value() const { return 0.5 * two_s_; }
    constexpr int dimension() const { return two_s_ + 1; }
    constexpr bool is_half_integer() const { return (two_s_ % 2) != 0; }

    /// 2*sigma for projection index i; i = 0 is sigma = +s.
    constexpr int two_sigma(int index) const { return two_s_ - 2 * index; }
    /// Inverse of two_sigma(); throws InvalidProjectionError.
    int index_of(int two_sigma) const;
    bool has_projection(int two_sigma) const;

    /// (-1)^{2s} as an exact integer.
    constexpr int statistics_sign() const { return is_half_integer() ? -1 : 1; }

    friend constexpr bool operator==(SpinLabel, SpinLabel) = default;

private:
    int two_s_ = 0;
};

/// Orientation of a particle frame: R = R_z(alpha) R_y(beta) R_z(gamma).
/// gamma is kept on [0, 4pi) when reduced so half-integer phases are tracked;
/// paths keep unreduced values.
struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    /// alpha into [0, 2pi), gamma into [0, 4pi), beta unchanged.
    EulerAngles reduced() const;
    bool beta_in_range() const { return beta >= 0.0 && beta <= kPi; }
};

struct FrameConfiguration {
    std::array<double, 3> position{0.0, 0.0, 0.0};
    EulerAngles orientation;
};

struct PhysicalParameters {
    double mass = 1.0;
    double giration_radius = 1.0;  // a
    double hbar = 1.0;

    static constexpr int kDimension = 6;

    PhysicalParameters() = default;
    PhysicalParameters(double m, double a, double h);

    double inertia() const { return mass * giration_radius * giration_radius; }

    /// xi^2 = (n-2) / (4(n-1)) as a reduced integer ratio.
    static constexpr std::pair<int, int> xi_squared_ratio() {
        int num = kDimension - 2;
        int den = 4 * (kDimension - 1);
        int a = num, b = den;
        while (b != 0) {
            int t = a % b;
            a = b;
            b = t;
        }
        return {num / a, den / a};
    }
    static constexpr double xi_squared() {
        auto [n, d] = xi_squared_ratio();
        return static_cast<double>(n) / static_cast<double>(d);
    }

    /// Riemann scalar of E3 x SO(3): 3 / (2 a^2).
    double riemann_scalar() const { return 1.5 / (giration_radius * giration_radius); }

    void validate() const;
};

}  // namespace spinframe

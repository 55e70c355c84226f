#include "spinframe/types.hpp"

#include "spinframe/error.hpp"

#include <string>

namespace spinframe {

SpinLabel::SpinLabel(int two_s) : two_s_(two_s) {
    if (two_s < 0 || two_s > kMaxTwoS) {
        throw ConfigError("spin 2s=" + std::to_string(two_s) + " outside [0, " +
                          std::to_string(kMaxTwoS) + "]");
    }
}

SpinLabel SpinLabel::from_spin(double s) {
    double twice = 2.0 * s;
    double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12) {
        throw ConfigError("spin must be integer or half-integer");
    }
    return SpinLabel(static_cast<int>(rounded));
}

bool SpinLabel::has_projection(int two_sigma) const {
    return two_sigma >= -two_s_ && two_sigma <= two_s_ && ((two_s_ - two_sigma) % 2 == 0);
}

int SpinLabel::index_of(int two_sigma) const {
    if (!has_projection(two_sigma)) {
        throw InvalidProjectionError("2*sigma=" + std::to_string(two_sigma) +
                                     " is not a projection of 2s=" + std::to_string(two_s_));
    }
    return (two_s_ - two_sigma) / 2;
}

EulerAngles EulerAngles::reduced() const {
    auto wrap = [](double x, double period) {
        double r = std::fmod(x, period);
        if (r < 0.0) r += period;
        if (r >= period) r -= period;
        return r;
    };
    return {wrap(alpha, kTwoPi), beta, wrap(gamma, 2.0 * kTwoPi)};
}

PhysicalParameters::PhysicalParameters(double m, double a, double h)
    : mass(m), giration_radius(a), hbar(h) {
    validate();
}

void PhysicalParameters::validate() const {
    if (!(mass > 0.0) || !(giration_radius > 0.0) || !(hbar > 0.0)) {
        throw ConfigError("physical parameters require m > 0, a > 0, hbar > 0");
    }
}

}  // namespace spinframe

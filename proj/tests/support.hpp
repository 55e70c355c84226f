#pragma once

// Seeded generators and small oracles shared by the test suites.

#include "spinframe/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

namespace testing {

using spinframe::Complex;
using spinframe::EulerAngles;
using spinframe::kPi;
using spinframe::kTwoPi;

// splitmix64; fixed output across platforms, unlike the std distributions
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    double normal() {
        const double u1 = 1.0 - uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }
    Complex complex_normal() { return {normal(), normal()}; }

    // Haar-distributed Euler angles
    EulerAngles angles() { return {uniform(0.0, kTwoPi), std::acos(uniform(-1.0, 1.0)), uniform(0.0, kTwoPi)}; }
    Eigen::Vector3d unit_vector() {
        Eigen::Vector3d v(normal(), normal(), normal());
        return v.normalized();
    }
    Eigen::VectorXcd unit_complex(int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = complex_normal();
        return v.normalized();
    }
    std::vector<int> permutation(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(integer(0, i))]);
        return p;
    }

private:
    std::uint64_t state_;
};

// Angular momentum matrices in the basis m = j, j-1, ..., -j.
struct SpinMatrices {
    Eigen::MatrixXcd jx, jy, jz;
};

inline SpinMatrices spin_matrices(int two_j) {
    const int d = two_j + 1;
    const double j = 0.5 * two_j;
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d), jz = Eigen::MatrixXcd::Zero(d, d);
    for (int r = 0; r < d; ++r) {
        const double m = j - r;
        jz(r, r) = m;
        // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row up
        if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const Eigen::MatrixXcd jm = jp.adjoint();
    return {(jp + jm) / 2.0, (jp - jm) / Complex(0.0, 2.0), jz};
}

// exp(-i t H) for Hermitian H through its eigendecomposition
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace testing

#pragma once

// Differential geometry of E3 x SO(3) in Euler-angle coordinates.
//
// Coordinates are ordered (x, y, z, alpha, beta, gamma). Angles are stored
// unscaled; the giration radius enters the metric as g_angular = a^2 * Gamma3
// with Gamma3 = [[1, 0, cos b], [0, 1, 0], [cos b, 0, 1]].

#include "spinframe/types.hpp"

#include <Eigen/Dense>

#include <vector>

namespace spinframe::geometry {

inline constexpr int kFullDim = 6;
inline constexpr int kAngularDim = 3;
inline constexpr int kAlpha = 3;
inline constexpr int kBeta = 4;
inline constexpr int kGamma = 5;

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

struct MetricAtPoint {
    Matrix6 g = Matrix6::Zero();
    Matrix6 g_inv = Matrix6::Zero();  // NaN-filled at singular points
    double det_g = 0.0;
    double sqrt_det_g = 0.0;
    bool singular = false;

    /// The 3x3 SO(3) block Gamma3 (without the a^2 factor).
    Eigen::Matrix3d gamma3() const;
};

/// True when sin^2(beta) vanishes to rounding (beta at 0 or pi).
bool is_coordinate_singular(double beta);

MetricAtPoint metric_at(const EulerAngles& angles, const PhysicalParameters& params);

/// Metric with its first and second coordinate derivatives at a point.
/// Only beta-derivatives are nonzero for this metric, but the contraction
/// code below treats the jet generically.
struct MetricJet {
    int dim = 0;
    Eigen::MatrixXd g;
    std::vector<Eigen::MatrixXd> dg;                 // dg[l] = d_l g
    std::vector<std::vector<Eigen::MatrixXd>> ddg;   // ddg[l][m] = d_l d_m g
};

/// Jet of the full 6-D metric, or of the SO(3) block alone (fast path).
MetricJet metric_jet(const EulerAngles& angles, const PhysicalParameters& params,
                     bool angular_only = false);

/// Gamma^i_{jk}, stored dense with index (i*dim + j)*dim + k.
class ChristoffelSymbols {
public:
    explicit ChristoffelSymbols(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

    int dim() const { return dim_; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

private:
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>((i * dim_ + j) * dim_ + k);
    }
    int dim_;
    std::vector<double> data_;
};

/// Christoffel symbols of the second kind from a metric jet.
ChristoffelSymbols christoffel_from_jet(const MetricJet& jet);

/// d_l Gamma^i_{jk}, indexed [l](i, j, k); exact product-rule differentiation of the jet.
std::vector<ChristoffelSymbols> christoffel_derivatives_from_jet(const MetricJet& jet);

/// R = g^{jk} (d_i G^i_{jk} - d_k G^i_{ji} + G^i_{ip} G^p_{jk} - G^i_{kp} G^p_{ji}).
double scalar_curvature_from_jet(const MetricJet& jet);

/// Full 6-D Christoffel table. Throws SingularityError at beta in {0, pi}.
ChristoffelSymbols christoffel_symbols(const EulerAngles& angles, const PhysicalParameters& params);

/// Riemann scalar of the full 6-D metric by Christoffel contraction.
double riemann_scalar_curvature(const EulerAngles& angles, const PhysicalParameters& params);

/// Same contraction restricted to the SO(3) block (E3 is flat and decoupled).
double so3_scalar_curvature(const EulerAngles& angles, const PhysicalParameters& params);

/// Pointwise Laplace-Beltrami g^{ij}(d_i d_j f - Gamma^k_{ij} d_k f) of a real
/// function given its coordinate gradient and Hessian.
double laplace_beltrami_at(const EulerAngles& angles, const PhysicalParameters& params,
                           const Vector6& gradient, const Matrix6& hessian);

}  // namespace spinframe::geometry

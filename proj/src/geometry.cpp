#include "spinframe/geometry.hpp"

#include "spinframe/error.hpp"

#include <limits>
#include <string>

namespace spinframe::geometry {

namespace {

void require_beta_range(double beta) {
    if (!(beta >= 0.0 && beta <= kPi)) {
        throw SingularityError("beta=" + std::to_string(beta) + " outside [0, pi]");
    }
}

void require_regular(double beta) {
    require_beta_range(beta);
    if (is_coordinate_singular(beta)) {
        throw SingularityError("coordinate singularity at beta=" + std::to_string(beta));
    }
}

}  // namespace

bool is_coordinate_singular(double beta) {
    double s = std::sin(beta);
    return s * s < 1e-24;
}

Eigen::Matrix3d MetricAtPoint::gamma3() const {
    Eigen::Matrix3d block = g.block<3, 3>(kAlpha, kAlpha);
    double a2 = block(1, 1);
    return block / a2;
}

MetricAtPoint metric_at(const EulerAngles& angles, const PhysicalParameters& params) {
    require_beta_range(angles.beta);
    params.validate();

    const double a2 = params.giration_radius * params.giration_radius;
    const double cb = std::cos(angles.beta);
    const double sb = std::sin(angles.beta);

    MetricAtPoint out;
    out.g.setIdentity();
    out.g(kAlpha, kAlpha) = a2;
    out.g(kBeta, kBeta) = a2;
    out.g(kGamma, kGamma) = a2;
    out.g(kAlpha, kGamma) = a2 * cb;
    out.g(kGamma, kAlpha) = a2 * cb;

    // det(Gamma3) = 1 - cos^2 = sin^2; evaluated as sin^2 to keep full relative accuracy.
    out.det_g = a2 * a2 * a2 * sb * sb;
    out.sqrt_det_g = a2 * params.giration_radius * std::abs(sb);
    out.singular = is_coordinate_singular(angles.beta);

    if (out.singular) {
        out.g_inv.setConstant(std::numeric_limits<double>::quiet_NaN());
        return out;
    }
    const double inv_s2 = 1.0 / (sb * sb);
    out.g_inv.setIdentity();
    out.g_inv(kAlpha, kAlpha) = inv_s2 / a2;
    out.g_inv(kBeta, kBeta) = 1.0 / a2;
    out.g_inv(kGamma, kGamma) = inv_s2 / a2;
    out.g_inv(kAlpha, kGamma) = -cb * inv_s2 / a2;
    out.g_inv(kGamma, kAlpha) = -cb * inv_s2 / a2;
    return out;
}

MetricJet metric_jet(const EulerAngles& angles, const PhysicalParameters& params,
                     bool angular_only) {
    require_regular(angles.beta);
    MetricAtPoint point = metric_at(angles, params);
    const double a2 = params.giration_radius * params.giration_radius;
    const double cb = std::cos(angles.beta);
    const double sb = std::sin(angles.beta);

    const int dim = angular_only ? kAngularDim : kFullDim;
    const int off = angular_only ? kAlpha : 0;

    MetricJet jet;
    jet.dim = dim;
    jet.g = point.g.block(off, off, dim, dim);
    jet.dg.assign(static_cast<std::size_t>(dim), Eigen::MatrixXd::Zero(dim, dim));
    jet.ddg.assign(static_cast<std::size_t>(dim),
                   std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(dim), Eigen::MatrixXd::Zero(dim, dim)));

    const int ia = kAlpha - off;
    const int ib = kBeta - off;
    const int ig = kGamma - off;
    // g_{alpha gamma} = a^2 cos(beta) is the only non-constant entry.
    jet.dg[ib](ia, ig) = -a2 * sb;
    jet.dg[ib](ig, ia) = -a2 * sb;
    jet.ddg[ib][ib](ia, ig) = -a2 * cb;
    jet.ddg[ib][ib](ig, ia) = -a2 * cb;
    return jet;
}

ChristoffelSymbols christoffel_from_jet(const MetricJet& jet) {
    const int n = jet.dim;
    const Eigen::MatrixXd g_inv = jet.g.inverse();
    ChristoffelSymbols out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l) {
                    const auto uj = static_cast<std::size_t>(j);
                    const auto uk = static_cast<std::size_t>(k);
                    const auto ul = static_cast<std::size_t>(l);
                    sum += g_inv(i, l) * (jet.dg[uj](l, k) + jet.dg[uk](l, j) - jet.dg[ul](j, k));
                }
                out(i, j, k) = 0.5 * sum;
                out(i, k, j) = 0.5 * sum;
            }
        }
    }
    return out;
}

std::vector<ChristoffelSymbols> christoffel_derivatives_from_jet(const MetricJet& jet) {
    const int n = jet.dim;
    const Eigen::MatrixXd g_inv = jet.g.inverse();
    std::vector<ChristoffelSymbols> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto um = static_cast<std::size_t>(m);
        // d_m g^{-1} = -g^{-1} (d_m g) g^{-1}
        const Eigen::MatrixXd d_ginv = -g_inv * jet.dg[um] * g_inv;
        ChristoffelSymbols d(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = j; k < n; ++k) {
                    const auto uj = static_cast<std::size_t>(j);
                    const auto uk = static_cast<std::size_t>(k);
                    double sum = 0.0;
                    for (int l = 0; l < n; ++l) {
                        const auto ul = static_cast<std::size_t>(l);
                        double lower = jet.dg[uj](l, k) + jet.dg[uk](l, j) - jet.dg[ul](j, k);
                        double d_lower = jet.ddg[um][uj](l, k) + jet.ddg[um][uk](l, j) -
                                         jet.ddg[um][ul](j, k);
                        sum += d_ginv(i, l) * lower + g_inv(i, l) * d_lower;
                    }
                    d(i, j, k) = 0.5 * sum;
                    d(i, k, j) = 0.5 * sum;
                }
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

double scalar_curvature_from_jet(const MetricJet& jet) {
    const int n = jet.dim;
    const Eigen::MatrixXd g_inv = jet.g.inverse();
    const ChristoffelSymbols G = christoffel_from_jet(jet);
    const std::vector<ChristoffelSymbols> dG = christoffel_derivatives_from_jet(jet);

    // Ricci R_{jk} = d_i G^i_{jk} - d_k G^i_{ji} + G^i_{ip} G^p_{jk} - G^i_{kp} G^p_{ji}
    Eigen::MatrixXd ricci = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double r = 0.0;
            for (int i = 0; i < n; ++i) {
                r += dG[static_cast<std::size_t>(i)](i, j, k) - dG[static_cast<std::size_t>(k)](i, j, i);
                for (int p = 0; p < n; ++p) {
                    r += G(i, i, p) * G(p, j, k) - G(i, k, p) * G(p, j, i);
                }
            }
            ricci(j, k) = r;
        }
    }
    double scalar = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) scalar += g_inv(j, k) * ricci(j, k);
    }
    return scalar;
}

ChristoffelSymbols christoffel_symbols(const EulerAngles& angles, const PhysicalParameters& params) {
    return christoffel_from_jet(metric_jet(angles, params, false));
}

double riemann_scalar_curvature(const EulerAngles& angles, const PhysicalParameters& params) {
    return scalar_curvature_from_jet(metric_jet(angles, params, false));
}

double so3_scalar_curvature(const EulerAngles& angles, const PhysicalParameters& params) {
    return scalar_curvature_from_jet(metric_jet(angles, params, true));
}

double laplace_beltrami_at(const EulerAngles& angles, const PhysicalParameters& params,
                           const Vector6& gradient, const Matrix6& hessian) {
    const MetricAtPoint point = metric_at(angles, params);
    if (point.singular) {
        throw SingularityError("laplace_beltrami_at needs g^{-1}; beta is singular");
    }
    const ChristoffelSymbols G = christoffel_symbols(angles, params);
    double out = 0.0;
    for (int i = 0; i < kFullDim; ++i) {
        for (int j = 0; j < kFullDim; ++j) {
            double connection = 0.0;
            for (int k = 0; k < kFullDim; ++k) connection += G(k, i, j) * gradient(k);
            out += point.g_inv(i, j) * (hessian(i, j) - connection);
        }
    }
    return out;
}

}  // namespace spinframe::geometry

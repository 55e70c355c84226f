#include "spinframe/wavefunction.hpp"

#include "spinframe/error.hpp"
#include "spinframe/wigner.hpp"

#include <algorithm>
#include <string>

namespace spinframe {

SpinorField SpinorField::at_point(SpinLabel spin, const Eigen::VectorXcd& psi) {
    if (psi.size() != spin.dimension()) {
        throw InvalidProjectionError("spinor of 2s=" + std::to_string(spin.two_s()) + " needs " +
                                     std::to_string(spin.dimension()) + " components");
    }
    SpinorField f;
    f.spin = spin;
    f.components = psi.transpose();
    f.cell_volumes = {1.0};
    return f;
}

double SpinorField::norm_squared() const {
    double sum = 0.0;
    for (Eigen::Index p = 0; p < components.rows(); ++p) {
        sum += cell_volumes.at(static_cast<std::size_t>(p)) * components.row(p).squaredNorm();
    }
    return sum;
}

SpinorField SpinorField::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw NonNormalizableError("spinor has zero or non-finite norm");
    SpinorField out = *this;
    out.components /= std::sqrt(n2);
    return out;
}

RealField ScalarWavefunction::density(std::size_t point) const {
    const ComplexField& v = values.at(point);
    RealField rho(v.size());
    for (std::size_t n = 0; n < v.size(); ++n) rho[n] = std::norm(v[n]);
    return rho;
}

double ScalarWavefunction::norm_squared() const {
    double sum = 0.0;
    for (std::size_t p = 0; p < values.size(); ++p) sum += cell_volumes.at(p) * grid->integrate_metric(density(p));
    return sum;
}

double scalar_normalization(SpinLabel spin, const So3Grid& grid) {
    const double a = grid.giration_radius();
    return std::sqrt(spin.dimension() / (a * a * a * grid.haar_volume()));
}

double gamma_mode_leakage(const ComplexField& values, const So3Grid& grid, SpinLabel spin) {
    if (values.size() != grid.size()) throw GridMismatchError("field size does not match grid");
    if (spin.is_half_integer() && grid.gamma_period() != GammaPeriod::FourPi) {
        throw PeriodMismatchError("half-integer spin needs the 4pi gamma chart");
    }
    const auto ng = static_cast<std::size_t>(grid.n_gamma());
    std::vector<Complex> phase(ng);
    for (std::size_t g = 0; g < ng; ++g) phase[g] = wigner::exact_phase(-0.5 * spin.two_s() * grid.gamma(static_cast<int>(g)));
    double total = 0.0, leak = 0.0;
    for (std::size_t line = 0; line < values.size() / ng; ++line) {
        const std::size_t base = line * ng;
        Complex mean{0.0, 0.0};
        for (std::size_t g = 0; g < ng; ++g) mean += values[base + g] * phase[g];
        mean /= static_cast<double>(ng);
        for (std::size_t g = 0; g < ng; ++g) {
            const double w = grid.weight(base + g);
            leak += w * std::norm(values[base + g] * phase[g] - mean);
            total += w * std::norm(values[base + g]);
        }
    }
    if (!(total > 0.0)) return 0.0;
    return std::sqrt(leak / total);
}

ScalarWavefunction scalar_from_spinor(const SpinorField& spinor, GridPtr grid) {
    if (!grid) throw GridMismatchError("null grid");
    if (spinor.spin.is_half_integer() && grid->gamma_period() != GammaPeriod::FourPi) {
        throw PeriodMismatchError("half-integer spin needs the 4pi gamma chart");
    }
    if (static_cast<int>(spinor.components.cols()) != spinor.spin.dimension()) {
        throw InvalidProjectionError("spinor component count does not match its spin");
    }
    const double n2 = spinor.norm_squared();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-8) {
        throw NonNormalizableError("spinor must be normalized (norm^2 = " + std::to_string(n2) + ")");
    }
    ScalarWavefunction out;
    out.spin = spinor.spin;
    out.grid = grid;
    out.cell_volumes = spinor.cell_volumes;
    out.time = spinor.time;
    out.normalization = scalar_normalization(spinor.spin, *grid);

    const WignerBasis basis(grid, spinor.spin.two_s(), spinor.spin.two_s());
    for (std::size_t p = 0; p < spinor.n_points(); ++p) {
        out.values.push_back(basis.sample(out.normalization * spinor.at(p)));
    }
    return out;
}

SpinorField spinor_from_scalar(const ScalarWavefunction& scalar, double mixed_tolerance) {
    if (!scalar.grid) throw GridMismatchError("scalar wavefunction has no grid");
    const double n2 = scalar.norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw NonNormalizableError("scalar wavefunction has zero or non-finite norm");

    const SpinLabel spin = scalar.spin;
    const WignerBasis basis(scalar.grid, spin.two_s(), spin.two_s());
    const double norm_const = scalar_normalization(spin, *scalar.grid);

    SpinorField out;
    out.spin = spin;
    out.time = scalar.time;
    out.cell_volumes = scalar.cell_volumes;
    out.components.resize(static_cast<Eigen::Index>(scalar.n_points()), spin.dimension());
    for (std::size_t p = 0; p < scalar.n_points(); ++p) {
        const double leak = gamma_mode_leakage(scalar.values[p], *scalar.grid, spin);
        if (leak > mixed_tolerance) {
            throw MixedGammaModeError("gamma dependence is not a pure e^{i s gamma} mode (leakage " +
                                      std::to_string(leak) + ")");
        }
        out.components.row(static_cast<Eigen::Index>(p)) = (basis.project(scalar.values[p]) / norm_const).transpose();
    }
    return out;
}

SpinorField rotate_lab_frame(const SpinorField& spinor, const LabRotation& rotation) {
    const Eigen::MatrixXcd d = wigner::lab_rotation_matrix(spinor.spin, rotation);
    SpinorField out = spinor;
    out.components = (d * spinor.components.transpose()).transpose();
    return out;
}

ScalarWavefunction rotate_lab_frame(const ScalarWavefunction& scalar, const LabRotation& rotation) {
    const So3Grid& grid = *scalar.grid;
    const int two_j_max = WignerBasis::max_resolved_two_j(grid, scalar.spin.two_s());
    const WignerBasis basis(scalar.grid, scalar.spin.two_s(), two_j_max);
    const Su2 lift_inverse = rotation.canonical_lift().adjoint();

    std::vector<EulerAngles> pulled(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
        pulled[n] = euler_from_su2(lift_inverse * su2_from_euler(grid.node(n)));
    }

    ScalarWavefunction out = scalar;
    for (std::size_t p = 0; p < scalar.n_points(); ++p) {
        const Eigen::VectorXcd coeffs = basis.project(scalar.values[p]);
        ComplexField& dst = out.values[p];
        const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t n = 0; n < count; ++n) {
            dst[static_cast<std::size_t>(n)] = basis.evaluate(coeffs, pulled[static_cast<std::size_t>(n)]);
        }
    }
    return out;
}

PolarFields density_and_action(const ScalarWavefunction& scalar, double hbar, std::size_t point,
                               double node_threshold) {
    const So3Grid& grid = *scalar.grid;
    const ComplexField& psi = scalar.values.at(point);
    double peak = 0.0;
    for (const Complex& v : psi) peak = std::max(peak, std::abs(v));
    const double floor = node_threshold * peak;
    for (std::size_t n = 0; n < psi.size(); ++n) {
        if (!(std::abs(psi[n]) > floor)) {
            const EulerAngles q = grid.node(n);
            throw NodeCrossingError("|Psi| below threshold at (" + std::to_string(q.alpha) + ", " +
                                    std::to_string(q.beta) + ", " + std::to_string(q.gamma) +
                                    "); phase not unwrapped");
        }
    }

    PolarFields out;
    out.rho.resize(psi.size());
    RealField phase(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) out.rho[n] = std::norm(psi[n]);

    auto step = [&](std::size_t from, std::size_t to) { return std::arg(psi[to] * std::conj(psi[from])); };
    const int na = grid.n_alpha(), nb = grid.n_beta(), ng = grid.n_gamma();

    phase[grid.index(0, 0, 0)] = std::arg(psi[grid.index(0, 0, 0)]);
    for (int ia = 1; ia < na; ++ia) {
        phase[grid.index(ia, 0, 0)] = phase[grid.index(ia - 1, 0, 0)] + step(grid.index(ia - 1, 0, 0), grid.index(ia, 0, 0));
    }
    for (int ia = 0; ia < na; ++ia) {
        for (int ib = 1; ib < nb; ++ib) {
            phase[grid.index(ia, ib, 0)] = phase[grid.index(ia, ib - 1, 0)] + step(grid.index(ia, ib - 1, 0), grid.index(ia, ib, 0));
        }
    }
    const double s = scalar.spin.value();
    for (int ia = 0; ia < na; ++ia) {
        for (int ib = 0; ib < nb; ++ib) {
            for (int ig = 1; ig < ng; ++ig) {
                const std::size_t prev = grid.index(ia, ib, ig - 1), cur = grid.index(ia, ib, ig);
                const double slope = s * (grid.gamma(ig) - grid.gamma(ig - 1));
                const double residual = std::arg(psi[cur] * std::conj(psi[prev]) * std::polar(1.0, -slope));
                phase[cur] = phase[prev] + slope + residual;
            }
        }
    }
    out.action.resize(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) out.action[n] = hbar * phase[n];
    return out;
}

}  // namespace spinframe

#include "spinframe/dynamics.hpp"

#include "spinframe/error.hpp"
#include "spinframe/wigner.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace spinframe {

namespace {

using kernels::BlockOp;

// cos(beta) at every flat node.
RealField cos_beta_field(const So3Grid& g) {
    RealField x(g.size());
    const auto ng = static_cast<std::size_t>(g.n_gamma()), nb = static_cast<std::size_t>(g.n_beta());
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = g.cos_beta(static_cast<int>((n / ng) % nb));
    return x;
}

void require_positive(const RealField& rho) {
    for (std::size_t n = 0; n < rho.size(); ++n) {
        if (!(rho[n] > 0.0)) {
            throw NonPositiveDensityError("density must be positive at every node (node " + std::to_string(n) + ")");
        }
    }
}

void require_size(const So3Grid& g, std::initializer_list<const RealField*> fields) {
    for (const RealField* f : fields) {
        if (f->size() != g.size()) throw GridMismatchError("field size does not match grid");
    }
}

ComplexField to_complex(const RealField& f) { return ComplexField(f.begin(), f.end()); }

// Polar components of the probability current, hbar Im(psi* d psi) = rho d S:
// alpha, sin(beta)-weighted beta, gamma.
struct Current {
    RealField alpha, sin_beta, gamma;
};

Current current_of(const SpectralOperators& ops, const ComplexField& psi, double hbar) {
    const auto grad = ops.gradient(psi);
    Current j;
    j.alpha.resize(psi.size());
    j.sin_beta.resize(psi.size());
    j.gamma.resize(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) {
        const Complex c = std::conj(psi[n]);
        j.alpha[n] = hbar * (c * grad.d_alpha[n]).imag();
        j.sin_beta[n] = hbar * (c * grad.sin_beta_d_beta[n]).imag();
        j.gamma[n] = hbar * (c * grad.d_gamma[n]).imag();
    }
    return j;
}

ComplexField polar_to_psi(const RealField& rho, const RealField& action, double hbar) {
    ComplexField psi(rho.size());
    for (std::size_t n = 0; n < rho.size(); ++n) psi[n] = std::polar(std::sqrt(std::max(rho[n], 0.0)), action[n] / hbar);
    return psi;
}

}  // namespace

RealField bohm_ratio(const SpectralOperators& ops, const RealField& rho, BohmMethod method) {
    const So3Grid& g = ops.grid();
    require_size(g, {&rho});
    require_positive(rho);
    RealField q(rho.size());
    if (method == BohmMethod::DirectSqrt) {
        ComplexField root(rho.size());
        for (std::size_t n = 0; n < rho.size(); ++n) root[n] = std::sqrt(rho[n]);
        const ComplexField lap = ops.laplace_beltrami(root);
        for (std::size_t n = 0; n < rho.size(); ++n) q[n] = lap[n].real() / root[n].real();
        return q;
    }
    const auto d = ops.apply(to_complex(rho), {BlockOp::Laplacian, BlockOp::DAlpha, BlockOp::SinBetaDBeta, BlockOp::DGamma});
    const RealField x = cos_beta_field(g);
    const double inv_a2 = 1.0 / (g.giration_radius() * g.giration_radius());
    for (std::size_t n = 0; n < rho.size(); ++n) {
        const double ra = d[1][n].real(), rb = d[2][n].real(), rg = d[3][n].real();
        const double grad2 = inv_a2 * (ra * ra - 2.0 * x[n] * ra * rg + rg * rg + rb * rb) / (1.0 - x[n] * x[n]);
        q[n] = d[0][n].real() / (2.0 * rho[n]) - grad2 / (4.0 * rho[n] * rho[n]);
    }
    return q;
}

WeylCurvatureField weyl_curvature(const SpectralOperators& ops, const RealField& rho, const PhysicalParameters& params,
                                  BohmMethod method) {
    params.validate();
    WeylCurvatureField out;
    out.riemann = params.riemann_scalar();
    const RealField q = bohm_ratio(ops, rho, method);
    const double inv_xi2 = 1.0 / PhysicalParameters::xi_squared();
    out.quantum.resize(q.size());
    out.values.resize(q.size());
    for (std::size_t n = 0; n < q.size(); ++n) {
        out.quantum[n] = -inv_xi2 * q[n];
        out.values[n] = out.riemann + out.quantum[n];
    }
    return out;
}

ResidualNorm hje_residual(const SpectralOperators& ops, const RealField& rho, const RealField& action,
                          const RealField& dS_dt, const PhysicalParameters& params, BohmMethod method) {
    params.validate();
    const So3Grid& g = ops.grid();
    require_size(g, {&rho, &action, &dS_dt});
    require_positive(rho);
    const double hbar = params.hbar, m = params.mass;
    const double inv_a2 = 1.0 / (g.giration_radius() * g.giration_radius());

    const Current j = current_of(ops, polar_to_psi(rho, action, hbar), hbar);
    const WeylCurvatureField rw = weyl_curvature(ops, rho, params, method);
    const RealField x = cos_beta_field(g);
    const double curvature_coeff = PhysicalParameters::xi_squared() * hbar * hbar / (2.0 * m);

    ResidualNorm out;
    out.field.resize(rho.size());
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n) {
        const double s2 = 1.0 - x[n] * x[n];
        const double flux2 = j.alpha[n] * j.alpha[n] - 2.0 * x[n] * j.alpha[n] * j.gamma[n] + j.gamma[n] * j.gamma[n] +
                             j.sin_beta[n] * j.sin_beta[n];
        const double kinetic = inv_a2 * flux2 / (s2 * rho[n] * rho[n]);
        const double r = dS_dt[n] + kinetic / (2.0 * m) + curvature_coeff * rw.values[n];
        out.field[n] = r;
        out.max_abs = std::max(out.max_abs, std::abs(r));
        num += g.weight(n) * rho[n] * r * r;
        den += g.weight(n) * rho[n];
    }
    out.rms = std::sqrt(num / den);
    return out;
}

ResidualNorm continuity_residual(const SpectralOperators& ops, const RealField& rho, const RealField& action,
                                 const RealField& drho_dt, const PhysicalParameters& params) {
    params.validate();
    const So3Grid& g = ops.grid();
    require_size(g, {&rho, &action, &drho_dt});
    const double inv_a2 = 1.0 / (g.giration_radius() * g.giration_radius());
    const Current j = current_of(ops, polar_to_psi(rho, action, params.hbar), params.hbar);
    const RealField x = cos_beta_field(g);

    ComplexField v_alpha(rho.size()), v_gamma(rho.size()), j_beta(rho.size());
    for (std::size_t n = 0; n < rho.size(); ++n) {
        const double s2 = 1.0 - x[n] * x[n];
        v_alpha[n] = inv_a2 * (j.alpha[n] - x[n] * j.gamma[n]) / s2;
        v_gamma[n] = inv_a2 * (j.gamma[n] - x[n] * j.alpha[n]) / s2;
        j_beta[n] = j.sin_beta[n];
    }
    const ComplexField da = ops.d_alpha(v_alpha);
    const ComplexField dg = ops.d_gamma(v_gamma);
    const ComplexField db = ops.sin_beta_d_beta(j_beta);

    ResidualNorm out;
    out.field.resize(rho.size());
    double num = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n) {
        const double s2 = 1.0 - x[n] * x[n];
        const double div = da[n].real() + dg[n].real() + inv_a2 * db[n].real() / s2;
        const double r = drho_dt[n] + div / params.mass;
        out.field[n] = r;
        out.max_abs = std::max(out.max_abs, std::abs(r));
        num += g.weight(n) * r * r;
    }
    out.rms = std::sqrt(num / g.haar_volume());
    return out;
}

double mode_energy(int two_j, const PhysicalParameters& params) {
    const double j = 0.5 * two_j;
    const double a2 = params.giration_radius * params.giration_radius;
    return params.hbar * params.hbar * j * (j + 1.0) / (2.0 * params.mass * a2) +
           params.hbar * params.hbar * PhysicalParameters::xi_squared() * params.riemann_scalar() / (2.0 * params.mass);
}

ComplexField apply_hamiltonian(const SpectralOperators& ops, const ComplexField& psi, const PhysicalParameters& params) {
    const ComplexField lap = ops.laplace_beltrami(psi);
    const double kin = -params.hbar * params.hbar / (2.0 * params.mass);
    const double shift = params.hbar * params.hbar * PhysicalParameters::xi_squared() * params.riemann_scalar() /
                         (2.0 * params.mass);
    ComplexField out(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) out[n] = kin * lap[n] + shift * psi[n];
    return out;
}

DynamicalRun::DynamicalRun(SpinLabel spin, PhysicalParameters params, std::shared_ptr<const WignerBasis> basis,
                           Eigen::VectorXcd initial, std::vector<double> energies)
    : spin_(spin), params_(params), basis_(std::move(basis)), initial_(std::move(initial)) {
    energies_ = Eigen::Map<const Eigen::VectorXd>(energies.data(), static_cast<Eigen::Index>(energies.size()));
}

Eigen::VectorXcd DynamicalRun::coefficients_at(double t) const {
    Eigen::VectorXcd c(initial_.size());
    for (Eigen::Index q = 0; q < c.size(); ++q) c(q) = initial_(q) * std::polar(1.0, -energies_(q) * t / params_.hbar);
    return c;
}

ScalarWavefunction DynamicalRun::wavefunction_at(double t) const {
    ScalarWavefunction w;
    w.spin = spin_;
    w.grid = basis_->grid_ptr();
    w.values = {basis_->sample(coefficients_at(t))};
    w.cell_volumes = {1.0};
    w.normalization = scalar_normalization(spin_, basis_->grid());
    w.time = t;
    return w;
}

double DynamicalRun::max_norm_drift() const {
    double drift = 0.0, ref = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : states_) {
        if (!s.audited) continue;
        if (std::isnan(ref)) ref = s.norm;
        drift = std::max(drift, std::abs(s.norm - ref));
    }
    return drift;
}

double DynamicalRun::max_energy_drift() const {
    double drift = 0.0, ref = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : states_) {
        if (!s.audited) continue;
        if (std::isnan(ref)) ref = s.energy;
        drift = std::max(drift, std::abs(s.energy - ref));
    }
    return drift;
}

DynamicalRun evolve(const ScalarWavefunction& initial, double dt, int steps, const PhysicalParameters& params,
                    const EvolveOptions& options) {
    params.validate();
    if (!initial.grid) throw GridMismatchError("initial state has no grid");
    if (initial.n_points() != 1) throw ConfigError("evolve handles the angular sector at a single spatial point");
    if (!(dt > 0.0) || steps < 0) throw ConfigError("evolve needs dt > 0 and steps >= 0");
    const So3Grid& grid = *initial.grid;
    const SpinLabel spin = initial.spin;
    const ComplexField& psi0 = initial.values[0];

    const double leak = gamma_mode_leakage(psi0, grid, spin);
    if (leak > options.projection_tolerance) {
        throw MixedGammaModeError("initial state is not a pure e^{i s gamma} mode (leakage " + std::to_string(leak) + ")");
    }
    int two_j_max = options.two_j_cap - ((options.two_j_cap - spin.two_s()) % 2 != 0 ? 1 : 0);
    two_j_max = std::min(two_j_max, WignerBasis::max_resolved_two_j(grid, spin.two_s()));
    if (two_j_max < spin.two_s()) throw ModeCapError("mode cap is below the spin");

    auto basis = std::make_shared<const WignerBasis>(initial.grid, spin.two_s(), two_j_max);
    const Eigen::VectorXcd coeffs = basis->project(psi0);
    const ComplexField recon = basis->sample(coeffs);
    RealField miss(psi0.size()), full(psi0.size());
    for (std::size_t n = 0; n < psi0.size(); ++n) {
        miss[n] = std::norm(psi0[n] - recon[n]);
        full[n] = std::norm(psi0[n]);
    }
    const double rel = std::sqrt(grid.integrate(miss) / grid.integrate(full));
    if (!(rel <= options.projection_tolerance)) {
        throw ModeCapError("state has content above j = " + std::to_string(0.5 * two_j_max) +
                           " (relative residual " + std::to_string(rel) + ")");
    }

    std::vector<double> energies;
    for (const ModeIndex& mode : basis->modes()) energies.push_back(mode_energy(mode.two_j, params));
    DynamicalRun run(spin, params, basis, coeffs, energies);

    const SpectralOperators ops(initial.grid);
    const double a3 = std::pow(grid.giration_radius(), 3);
    for (int i = 0; i <= steps; ++i) {
        DynamicalState st;
        st.time = i * dt;
        st.dt = dt;
        st.coefficients = run.coefficients_at(st.time);
        const bool audit = i == 0 || i == steps || (options.audit_every > 0 && i % options.audit_every == 0);
        if (audit) {
            const ComplexField psi = basis->sample(st.coefficients);
            const ComplexField hpsi = apply_hamiltonian(ops, psi, params);
            Complex e{0.0, 0.0};
            double nrm = 0.0;
            for (std::size_t n = 0; n < psi.size(); ++n) {
                e += grid.weight(n) * std::conj(psi[n]) * hpsi[n];
                nrm += grid.weight(n) * std::norm(psi[n]);
            }
            st.norm = a3 * nrm;
            st.energy = e.real() / nrm;
            st.audited = true;
        }
        run.mutable_states().push_back(std::move(st));
    }
    return run;
}

MadelungReport madelung_report(const std::vector<MadelungLevel>& levels, double rounding_floor, double required_order) {
    if (levels.size() < 3) {
        throw RefinementError("convergence fit needs at least 3 refinement levels, got " + std::to_string(levels.size()));
    }
    MadelungReport rep;
    rep.levels = levels;
    rep.rounding_floor = rounding_floor;
    rep.required_order = required_order;

    auto fit = [&](auto pick, double& order, bool& at_rounding) -> bool {
        std::vector<double> lx, ly;
        for (const auto& l : levels) {
            const double r = pick(l);
            if (r > rounding_floor) {
                lx.push_back(std::log(l.h));
                ly.push_back(std::log(r));
            }
        }
        order = std::numeric_limits<double>::quiet_NaN();
        at_rounding = false;
        if (lx.size() >= 2) {
            const double n = static_cast<double>(lx.size());
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxx += lx[i] * lx[i];
                sxy += lx[i] * ly[i];
            }
            order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            return order >= required_order;
        }
        // at most one level above the floor: acceptable only if it is the coarsest
        at_rounding = lx.empty() || pick(levels.front()) > rounding_floor;
        return at_rounding;
    };
    const bool hje_ok = fit([](const MadelungLevel& l) { return l.hje; }, rep.hje_order, rep.hje_at_rounding);
    const bool cont_ok =
        fit([](const MadelungLevel& l) { return l.continuity; }, rep.continuity_order, rep.continuity_at_rounding);
    rep.pass = hje_ok && cont_ok;
    return rep;
}

std::vector<MadelungLevel> madelung_study(const MadelungConfig& config, const PhysicalParameters& params) {
    params.validate();
    if (config.levels < 1) throw RefinementError("need at least one refinement level");
    if (config.modes.empty()) throw ConfigError("madelung study needs at least one initial mode");
    const SpinLabel spin = config.spin;
    int two_j_max = spin.two_s();
    for (const auto& [mode, amp] : config.modes) {
        if (mode.two_j < spin.two_s() || (mode.two_j - spin.two_s()) % 2 != 0 || std::abs(mode.two_m) > mode.two_j ||
            (mode.two_j - mode.two_m) % 2 != 0) {
            throw InvalidProjectionError("initial mode (2j=" + std::to_string(mode.two_j) + ", 2m=" +
                                         std::to_string(mode.two_m) + ") is not a spin-" +
                                         std::to_string(spin.value()) + " harmonic");
        }
        two_j_max = std::max(two_j_max, mode.two_j);
    }
    const double t_max = *std::max_element(config.sample_times.begin(), config.sample_times.end());

    std::vector<MadelungLevel> out;
    for (int level = 0; level < config.levels; ++level) {
        const double scale = std::pow(config.refine_factor, level);
        const int n = static_cast<int>(std::lround(config.base_n * scale));
        const double dt = config.dt0 / scale;
        const GridPtr grid = make_grid(GridSpec{n, n, n, natural_period(spin)}, params.giration_radius);
        const WignerBasis basis(grid, spin.two_s(), two_j_max);

        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
        double norm2 = 0.0;
        for (const auto& [mode, amp] : config.modes) {
            c(static_cast<Eigen::Index>(basis.index_of(mode.two_j, mode.two_m))) += amp;
        }
        for (std::size_t q = 0; q < basis.size(); ++q) {
            norm2 += std::norm(c(static_cast<Eigen::Index>(q))) * basis.mode_norm(basis.modes()[q].two_j);
        }
        c /= std::sqrt(norm2 * std::pow(params.giration_radius, 3));

        ScalarWavefunction initial;
        initial.spin = spin;
        initial.grid = grid;
        initial.values = {basis.sample(c)};
        initial.cell_volumes = {1.0};
        initial.normalization = scalar_normalization(spin, *grid);

        EvolveOptions opts;
        opts.two_j_cap = std::max(two_j_max, opts.two_j_cap);
        opts.audit_every = 0;
        const int steps = static_cast<int>(std::ceil((t_max + 2.0 * dt) / dt));
        const DynamicalRun run = evolve(initial, dt, steps, params, opts);
        const SpectralOperators ops(grid);

        MadelungLevel lv;
        lv.n = n;
        lv.h = kTwoPi / n;
        lv.dt = dt;
        lv.norm_drift = run.max_norm_drift();
        for (double t : config.sample_times) {
            const ComplexField p0 = run.wavefunction_at(t).values[0];
            const ComplexField pp1 = run.wavefunction_at(t + dt).values[0];
            const ComplexField pm1 = run.wavefunction_at(t - dt).values[0];
            const ComplexField pp2 = run.wavefunction_at(t + 2.0 * dt).values[0];
            const ComplexField pm2 = run.wavefunction_at(t - 2.0 * dt).values[0];
            RealField rho(p0.size()), action(p0.size()), ds(p0.size()), drho(p0.size());
            for (std::size_t k = 0; k < p0.size(); ++k) {
                const Complex dpsi = (-pp2[k] + 8.0 * pp1[k] - 8.0 * pm1[k] + pm2[k]) / (12.0 * dt);
                rho[k] = std::norm(p0[k]);
                action[k] = params.hbar * std::arg(p0[k]);
                const Complex z = std::conj(p0[k]) * dpsi;
                ds[k] = params.hbar * z.imag() / rho[k];
                drho[k] = 2.0 * z.real();
            }
            lv.hje = std::max(lv.hje, hje_residual(ops, rho, action, ds, params).rms);
            lv.continuity = std::max(lv.continuity, continuity_residual(ops, rho, action, drho, params).rms);
        }
        out.push_back(lv);
    }
    return out;
}

}  // namespace spinframe

#include "spinframe/suites.hpp"

#include "spinframe/error.hpp"
#include "spinframe/geometry.hpp"
#include "spinframe/spectral.hpp"
#include "spinframe/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace spinframe::suites {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EulerAngles random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {kTwoPi * u(rng), std::acos(1.0 - 2.0 * u(rng)), kTwoPi * u(rng)};
}

Eigen::Vector3d random_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Vector3d v(n(rng), n(rng), n(rng));
    return v.normalized();
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

double max_abs(const ComplexField& a) {
    double e = 0.0;
    for (const auto& v : a) e = std::max(e, std::abs(v));
    return e;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Haar inner product <f, g> on the grid.
Complex inner(const So3Grid& grid, const ComplexField& f, const ComplexField& g) {
    ComplexField p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p[i] = std::conj(f[i]) * g[i];
    return grid.integrate(p);
}

ComplexField sample_D(const So3Grid& grid, int two_j, int two_m, int two_k) {
    ComplexField f(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) f[n] = wigner::big_D_element(two_j, two_m, two_k, grid.node(n));
    return f;
}

Check fitted_order_check(const std::string& name, double order, bool at_rounding, double required) {
    if (std::isnan(order)) {
        Check c = make_check(name, kNaN, required, Comparison::AtLeast);
        c.pass = at_rounding;
        c.note = at_rounding ? "residuals at rounding floor; no slope to fit" : "too few levels above rounding floor";
        return c;
    }
    return make_check(name, order, required, Comparison::AtLeast);
}

}  // namespace

GridPtr SuiteOptions::grid() const { return grid(natural_period(spin)); }

GridPtr SuiteOptions::grid(GammaPeriod period) const {
    return make_grid(GridSpec{n_alpha, n_beta, n_gamma, period}, params.giration_radius);
}

Eigen::VectorXcd random_spinor(SpinLabel spin, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXcd psi(spin.dimension());
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(n(rng), n(rng));
    return psi.normalized();
}

// ---------------------------------------------------------------- wigner

std::vector<Check> wigner_checks(const SuiteOptions& opt, Json& data) {
    std::mt19937_64 rng(opt.seed);
    const SpinLabel spin = opt.spin;
    std::vector<Check> out;

    double unitarity = 0.0;
    for (int i = 0; i < 20; ++i) {
        const EulerAngles q = random_angles(rng);
        unitarity = std::max(unitarity, wigner::big_D(spin, q).unitarity_error());
        unitarity = std::max(unitarity, wigner::small_d(spin, q.beta).unitarity_error());
    }
    out.push_back(make_check("wigner.unitarity", unitarity, 1e-12));

    double rep = 0.0;
    for (int i = 0; i < 50; ++i) {
        const EulerAngles q1 = random_angles(rng);
        const EulerAngles q2 = random_angles(rng);
        const EulerAngles q12 = euler_from_matrix(euler_matrix(q1) * euler_matrix(q2));
        const Eigen::MatrixXcd lhs = wigner::big_D(spin, q1).entries * wigner::big_D(spin, q2).entries;
        const Eigen::MatrixXcd rhs = wigner::big_D(spin, q12).entries;
        double e = max_abs(lhs - rhs);
        // half-integer spin: representation of SU(2), so only up to sign on SO(3)
        if (spin.is_half_integer()) e = std::min(e, max_abs(lhs + rhs));
        rep = std::max(rep, e);
    }
    out.push_back(make_check("wigner.representation", rep, 1e-10, Comparison::AtMost,
                             spin.is_half_integer() ? "compared up to the SU(2) sign" : ""));

    double diag = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double g = kTwoPi * std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        Eigen::MatrixXcd m = wigner::big_D(spin, {0.0, 0.0, g}).entries;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            diag = std::max(diag, std::abs(std::abs(m(r, r)) - 1.0));
            m(r, r) = 0.0;
        }
        diag = std::max(diag, max_abs(m));
    }
    out.push_back(make_check("wigner.gamma_rotation_diagonal", diag, 1e-14));

    double coeff = 0.0;
    for (int i = 0; i < 20; ++i) {
        const EulerAngles q = random_angles(rng);
        for (int idx = 0; idx < spin.dimension(); ++idx) {
            const int ts = spin.two_sigma(idx);
            const Complex c = wigner::coefficient_c(spin, ts, q.alpha, q.beta);
            const Complex d = std::conj(wigner::big_D_element(spin.two_s(), ts, spin.two_s(), {q.alpha, q.beta, 0.0}));
            coeff = std::max(coeff, std::abs(c - d));
        }
    }
    out.push_back(make_check("wigner.coefficient_consistency", coeff, 1e-14));

    // s = 1/2 closed forms
    double half = 0.0;
    const SpinLabel s_half(1);
    for (int i = 0; i < 20; ++i) {
        const EulerAngles q = random_angles(rng);
        const double c = std::cos(0.5 * q.beta), s = std::sin(0.5 * q.beta);
        const Eigen::MatrixXd d = wigner::small_d_matrix(s_half, q.beta);
        half = std::max({half, std::abs(d(0, 0) - c), std::abs(d(0, 1) + s), std::abs(d(1, 0) - s),
                         std::abs(d(1, 1) - c)});
        half = std::max(half, std::abs(wigner::coefficient_c(s_half, 1, q.alpha, q.beta) -
                                       std::polar(1.0, 0.5 * q.alpha) * c));
        half = std::max(half, std::abs(wigner::coefficient_c(s_half, -1, q.alpha, q.beta) -
                                       std::polar(1.0, -0.5 * q.alpha) * s));
    }
    out.push_back(make_check("wigner.spin_half_coefficients", half, 0.0, Comparison::AtMost, "exact"));

    double turn = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Eigen::MatrixXcd m = wigner::rotation_about_axis(spin, random_axis(rng), kTwoPi);
        const Eigen::MatrixXcd expect =
            static_cast<double>(spin.statistics_sign()) * Eigen::MatrixXcd::Identity(spin.dimension(), spin.dimension());
        turn = std::max(turn, max_abs(m - expect));
    }
    out.push_back(make_check("wigner.two_pi_sign", turn, 0.0, Comparison::AtMost, "exact"));

    // orthogonality of every harmonic with 2j <= 4 on the 4pi chart
    {
        const GridPtr g = make_grid(GridSpec{16, 16, 16, GammaPeriod::FourPi});
        struct Mode {
            int tj, tm, tk;
            ComplexField f;
        };
        std::vector<Mode> modes;
        for (int tj = 0; tj <= 4; ++tj)
            for (int tm = -tj; tm <= tj; tm += 2)
                for (int tk = -tj; tk <= tj; tk += 2) modes.push_back({tj, tm, tk, sample_D(*g, tj, tm, tk)});
        double orth = 0.0;
        for (std::size_t a = 0; a < modes.size(); ++a) {
            for (std::size_t b = a; b < modes.size(); ++b) {
                const Complex ip = inner(*g, modes[a].f, modes[b].f);
                const double na = g->haar_volume() / (modes[a].tj + 1);
                const double nb = g->haar_volume() / (modes[b].tj + 1);
                orth = std::max(orth, std::abs(ip / std::sqrt(na * nb) - (a == b ? 1.0 : 0.0)));
            }
        }
        out.push_back(make_check("wigner.orthogonality", orth, 1e-10));
        data["orthogonality_modes"] = modes.size();
    }

    data["two_s"] = spin.two_s();
    data["dimension"] = spin.dimension();
    return out;
}

// ---------------------------------------------------------------- transform

std::vector<Check> transform_checks(const SpinorField& spinor, const GridPtr& grid, const PhysicalParameters& params,
                                    Json& data) {
    std::vector<Check> out;
    const ScalarWavefunction scalar = scalar_from_spinor(spinor, grid);
    const SpinLabel spin = spinor.spin;
    const So3Grid& g = *grid;

    out.push_back(make_check("transform.norm", std::abs(scalar.norm_squared() - spinor.norm_squared()), 1e-10));

    double rho_var = 0.0, rho_max = 0.0, leak = 0.0;
    for (std::size_t p = 0; p < scalar.n_points(); ++p) {
        const RealField rho = scalar.density(p);
        for (double r : rho) rho_max = std::max(rho_max, r);
        for (int ia = 0; ia < g.n_alpha(); ++ia) {
            for (int ib = 0; ib < g.n_beta(); ++ib) {
                const double r0 = rho[g.index(ia, ib, 0)];
                for (int ig = 1; ig < g.n_gamma(); ++ig) rho_var = std::max(rho_var, std::abs(rho[g.index(ia, ib, ig)] - r0));
            }
        }
        leak = std::max(leak, gamma_mode_leakage(scalar.angular(p), g, spin));
    }
    out.push_back(make_check("transform.density_gamma_independence", rho_max > 0 ? rho_var / rho_max : kNaN, 1e-12));
    out.push_back(make_check("transform.gamma_mode_leakage", leak, 1e-12));

    const SpinorField back = spinor_from_scalar(scalar);
    out.push_back(make_check("transform.round_trip", max_abs(back.components - spinor.components), 1e-10));

    // -i hbar d_gamma Psi = hbar s Psi, and S = hbar s gamma + f(alpha, beta)
    const SpectralOperators ops(grid);
    double eig = 0.0, polar = 0.0, slope = 0.0;
    for (std::size_t p = 0; p < scalar.n_points(); ++p) {
        const ComplexField& psi = scalar.angular(p);
        const ComplexField dg = ops.d_gamma(psi);
        const double scale = max_abs(psi);
        for (std::size_t n = 0; n < psi.size(); ++n) {
            eig = std::max(eig, std::abs(-Complex(0, 1) * dg[n] - spin.value() * psi[n]) / scale);
        }
        const PolarFields pf = density_and_action(scalar, params.hbar, p);
        for (std::size_t n = 0; n < psi.size(); ++n) {
            polar = std::max(polar, std::abs(std::sqrt(pf.rho[n]) * std::polar(1.0, pf.action[n] / params.hbar) - psi[n]) / scale);
        }
        // s_zeta = d_gamma S = hbar Im(Psi* d_gamma Psi) / rho, away from density nodes
        double rmax = 0.0;
        for (double r : pf.rho) rmax = std::max(rmax, r);
        for (std::size_t n = 0; n < psi.size(); ++n) {
            if (pf.rho[n] < 1e-8 * rmax) continue;
            const double sz = params.hbar * (std::conj(psi[n]) * dg[n]).imag() / std::norm(psi[n]);
            slope = std::max(slope, std::abs(sz - params.hbar * spin.value()));
        }
    }
    out.push_back(make_check("transform.gamma_eigenvalue", eig, 1e-10));
    out.push_back(make_check("transform.polar_reconstruction", polar, 1e-10));
    out.push_back(make_check("transform.intrinsic_angular_momentum", slope, 1e-10 * std::max(1.0, params.hbar)));

    data["two_s"] = spin.two_s();
    data["points"] = scalar.n_points();
    data["gamma_period"] = to_string(g.gamma_period());
    data["haar_volume"] = g.haar_volume();
    data["normalization"] = scalar.normalization;
    return out;
}

// ---------------------------------------------------------------- rotation

std::vector<Check> rotation_checks(const SuiteOptions& opt, Json& data) {
    std::vector<Check> out;
    std::mt19937_64 rng(opt.seed);
    const SpinLabel spin = opt.spin;
    const GridPtr grid = opt.grid();
    const SpinorField sp = SpinorField::at_point(spin, random_spinor(spin, opt.seed));
    const ScalarWavefunction sc = scalar_from_spinor(sp, grid);
    const Eigen::Vector3d axis = random_axis(rng);
    const double sign = spin.statistics_sign();

    const SpinorField sp2 = rotate_lab_frame(sp, LabRotation::about_axis(axis, kTwoPi));
    out.push_back(make_check("rotation.spinor_two_pi_sign", max_abs(sp2.components - sign * sp.components), 0.0,
                             Comparison::AtMost, "exact"));
    const SpinorField sp4 = rotate_lab_frame(sp, LabRotation::about_axis(axis, 2.0 * kTwoPi));
    out.push_back(make_check("rotation.spinor_four_pi_identity", max_abs(sp4.components - sp.components), 0.0,
                             Comparison::AtMost, "exact"));

    const ScalarWavefunction sc2 = rotate_lab_frame(sc, LabRotation::about_axis(axis, kTwoPi));
    out.push_back(make_check("rotation.scalar_two_pi_invariance",
                             max_abs_diff(sc2.angular(), sc.angular()) / max_abs(sc.angular()), 1e-10));

    const ScalarWavefunction sc0 = rotate_lab_frame(sc, LabRotation::identity());
    out.push_back(make_check("rotation.identity", max_abs_diff(sc0.angular(), sc.angular()) / max_abs(sc.angular()), 1e-12));

    const LabRotation q = LabRotation::about_axis(random_axis(rng), std::uniform_real_distribution<double>(0.1, 3.0)(rng));
    const SpinorField spq = rotate_lab_frame(sp, q);
    const ScalarWavefunction scq = rotate_lab_frame(sc, q);
    const ScalarWavefunction via = scalar_from_spinor(spq, grid);
    out.push_back(make_check("rotation.pullback_matches_spinor",
                             max_abs_diff(scq.angular(), via.angular()) / max_abs(sc.angular()), 1e-10));
    out.push_back(make_check("rotation.norm_preserved",
                             std::max(std::abs(spq.norm_squared() - 1.0), std::abs(scq.norm_squared() - 1.0)), 1e-10));

    data["two_s"] = spin.two_s();
    data["sign"] = spin.statistics_sign();
    data["axis"] = {axis.x(), axis.y(), axis.z()};
    return out;
}

// ---------------------------------------------------------------- geometry

std::vector<Check> geometry_checks(const SuiteOptions& opt, Json& data) {
    std::vector<Check> out;
    std::mt19937_64 rng(opt.seed);
    const PhysicalParameters& p = opt.params;
    const double rbar = p.riemann_scalar();
    const double a6 = std::pow(p.giration_radius, 6);

    double r6 = 0.0, r3 = 0.0, det = 0.0, inv = 0.0, sym = 0.0;
    Json points = Json::array();
    for (int i = 0; i < 10; ++i) {
        EulerAngles q = random_angles(rng);
        const double r = geometry::riemann_scalar_curvature(q, p);
        r6 = std::max(r6, std::abs(r - rbar));
        r3 = std::max(r3, std::abs(geometry::so3_scalar_curvature(q, p) - rbar));
        points.push_back({{"alpha", q.alpha}, {"beta", q.beta}, {"gamma", q.gamma}, {"R", r}});

        const auto m = geometry::metric_at(q, p);
        det = std::max(det, std::abs(m.det_g - a6 * std::pow(std::sin(q.beta), 2)) / a6);
        inv = std::max(inv, (m.g * m.g_inv - geometry::Matrix6::Identity()).cwiseAbs().maxCoeff());
        const auto gam = geometry::christoffel_symbols(q, p);
        for (int a = 0; a < geometry::kFullDim; ++a)
            for (int b = 0; b < geometry::kFullDim; ++b)
                for (int c = 0; c < geometry::kFullDim; ++c) sym = std::max(sym, std::abs(gam(a, b, c) - gam(a, c, b)));
    }
    out.push_back(make_check("geometry.riemann_scalar", r6, 1e-8));
    out.push_back(make_check("geometry.riemann_scalar_so3_block", r3, 1e-8));
    const auto xi = PhysicalParameters::xi_squared_ratio();
    out.push_back(make_check("geometry.xi_squared_exact", (xi.first == 1 && xi.second == 5) ? 1.0 : 0.0, 1.0,
                             Comparison::Equal, std::to_string(xi.first) + "/" + std::to_string(xi.second)));
    out.push_back(make_check("geometry.metric_determinant", det, 1e-12));
    out.push_back(make_check("geometry.metric_inverse", inv, 1e-12));
    out.push_back(make_check("geometry.christoffel_symmetry", sym, 0.0, Comparison::AtMost, "exact"));

    // curvature scales as 1/a^2
    PhysicalParameters p2(p.mass, 2.0 * p.giration_radius, p.hbar);
    const EulerAngles q = random_angles(rng);
    const double ratio = geometry::so3_scalar_curvature(q, p2) / geometry::so3_scalar_curvature(q, p);
    out.push_back(make_check("geometry.curvature_scaling", std::abs(ratio - 0.25), 1e-10));

    const GridPtr g = opt.grid();
    out.push_back(make_check("geometry.haar_volume",
                             std::abs(g->integrate(RealField(g->size(), 1.0)) - g->haar_volume()) / g->haar_volume(), 1e-12));

    data["riemann_scalar"] = rbar;
    data["xi_squared"] = std::to_string(xi.first) + "/" + std::to_string(xi.second);
    data["points"] = points;
    return out;
}

// ---------------------------------------------------------------- laplacian

std::vector<Check> laplacian_checks(const SuiteOptions& opt, Json& data) {
    std::vector<Check> out;
    const GridPtr grid = opt.grid(GammaPeriod::FourPi);
    const SpectralOperators ops(grid);
    const So3Grid& g = *grid;
    const double a2 = opt.params.giration_radius * opt.params.giration_radius;

    const ComplexField one(g.size(), Complex(1.0, 0.0));
    out.push_back(make_check("laplacian.constant_annihilated", max_abs(ops.laplace_beltrami(one)) * a2, 1e-10));

    double eig_err = 0.0, resid = 0.0;
    Json spectrum = Json::array();
    std::vector<ComplexField> harmonics;
    for (int tj = 0; tj <= 4; ++tj) {
        const double j = 0.5 * tj;
        const double lambda = -j * (j + 1.0) / a2;
        double worst_num = lambda;
        double worst_err = -1.0;
        for (int tm = -tj; tm <= tj; tm += 2) {
            for (int tk = -tj; tk <= tj; tk += 2) {
                const ComplexField f = sample_D(g, tj, tm, tk);
                const ComplexField lf = ops.laplace_beltrami(f);
                const double num = (inner(g, f, lf) / inner(g, f, f)).real();
                const double err = tj == 0 ? std::abs(num) * a2 : std::abs(num - lambda) / std::abs(lambda);
                if (err > worst_err) {
                    worst_err = err;
                    worst_num = num;
                }
                double r = 0.0;
                for (std::size_t n = 0; n < f.size(); ++n) r = std::max(r, std::abs(lf[n] - lambda * f[n]));
                resid = std::max(resid, r * a2 / max_abs(f));
                if (tj == 2 || tj == 3) harmonics.push_back(f);
            }
        }
        eig_err = std::max(eig_err, worst_err);
        spectrum.push_back({{"two_j", tj}, {"analytic", lambda}, {"numeric", worst_num}});
    }
    out.push_back(make_check("laplacian.eigenvalue_relative_error", eig_err, 1e-6));
    out.push_back(make_check("laplacian.eigenfield_residual", resid, 1e-6));

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    ComplexField f(g.size()), h(g.size());
    for (const auto& hm : harmonics) {
        const Complex cf(nd(rng), nd(rng)), ch(nd(rng), nd(rng));
        for (std::size_t n = 0; n < g.size(); ++n) {
            f[n] += cf * hm[n];
            h[n] += ch * hm[n];
        }
    }
    const ComplexField lf = ops.laplace_beltrami(f), lh = ops.laplace_beltrami(h);
    const double denom = std::sqrt(inner(g, f, f).real() * inner(g, lh, lh).real());
    out.push_back(make_check("laplacian.self_adjoint", std::abs(inner(g, f, lh) - inner(g, lf, h)) / denom, 1e-10));

    data["grid"] = {g.n_alpha(), g.n_beta(), g.n_gamma()};
    data["spectrum"] = spectrum;
    return out;
}

// ---------------------------------------------------------------- weyl curvature

std::vector<Check> weyl_checks(const SuiteOptions& opt, Json& data) {
    std::vector<Check> out;
    const GridPtr grid = opt.grid(GammaPeriod::TwoPi);
    const SpectralOperators ops(grid);
    const So3Grid& g = *grid;
    const PhysicalParameters& p = opt.params;
    const double a2 = p.giration_radius * p.giration_radius;

    const auto flat = weyl_curvature(ops, RealField(g.size(), 0.37), p);
    double dev = 0.0;
    for (double v : flat.values) dev = std::max(dev, std::abs(v - p.riemann_scalar()));
    out.push_back(make_check("weyl.constant_density", dev, 1e-10));

    RealField rho(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        const EulerAngles q = g.node(n);
        const double x = std::cos(q.beta);
        rho[n] = 1.0 + 0.3 * x + 0.2 * std::sin(q.beta) * std::cos(q.alpha) + 0.1 * (1.0 - x * x) * std::cos(2.0 * q.gamma);
    }
    RealField scaled = rho;
    for (double& r : scaled) r *= 3.7;
    const auto w1 = weyl_curvature(ops, rho, p);
    const auto w2 = weyl_curvature(ops, scaled, p);
    double inv = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) inv = std::max(inv, std::abs(w1.values[n] - w2.values[n]));
    out.push_back(make_check("weyl.scale_invariance", inv, 1e-10));

    // rho = |c_{+1/2}|^2 = cos^2(beta/2): (LB sqrt rho)/sqrt rho = (tan^2(beta/2)/4 - 1/2) / a^2
    RealField half(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) half[n] = 0.5 * (1.0 + std::cos(g.node(n).beta));
    const RealField ratio = bohm_ratio(ops, half);
    double err = 0.0, ref_max = 0.0;
    Json profile = Json::array();
    for (int ib = 0; ib < g.n_beta(); ++ib) {
        const double t = std::tan(0.5 * g.beta(ib));
        const double ref = (0.25 * t * t - 0.5) / a2;
        ref_max = std::max(ref_max, std::abs(ref));
        for (int ia = 0; ia < g.n_alpha(); ++ia)
            for (int ig = 0; ig < g.n_gamma(); ++ig) err = std::max(err, std::abs(ratio[g.index(ia, ib, ig)] - ref));
        profile.push_back({g.beta(ib), p.riemann_scalar() - ratio[g.index(0, ib, 0)] / PhysicalParameters::xi_squared()});
    }
    out.push_back(make_check("weyl.spin_half_profile", err / ref_max, 1e-10));

    data["riemann_scalar"] = p.riemann_scalar();
    data["spin_half_profile"] = profile;
    return out;
}

// ---------------------------------------------------------------- evolution

EvolveSetup default_evolve_setup(SpinLabel spin) {
    const int ts = spin.two_s();
    EvolveSetup s;
    s.modes = {{{ts, ts}, Complex(0.8, 0.1)}, {{ts + 2, ts}, Complex(0.3, -0.5)}, {{ts + 4, -ts}, Complex(0.2, 0.2)}};
    return s;
}

ScalarWavefunction superposition(SpinLabel spin, const GridPtr& grid, const std::vector<std::pair<ModeIndex, Complex>>& modes) {
    if (modes.empty()) throw ConfigError("no initial modes given");
    int two_j_max = spin.two_s();
    for (const auto& [m, amp] : modes) {
        if (m.two_j < spin.two_s() || (m.two_j - spin.two_s()) % 2 != 0 || std::abs(m.two_m) > m.two_j ||
            (m.two_j - m.two_m) % 2 != 0) {
            throw InvalidProjectionError("mode (2j=" + std::to_string(m.two_j) + ", 2m=" + std::to_string(m.two_m) +
                                         ") is not a harmonic of spin 2s=" + std::to_string(spin.two_s()));
        }
        two_j_max = std::max(two_j_max, m.two_j);
    }
    if (two_j_max > WignerBasis::max_resolved_two_j(*grid, spin.two_s())) {
        throw ResolutionError("grid does not resolve 2j=" + std::to_string(two_j_max));
    }
    const WignerBasis basis(grid, spin.two_s(), two_j_max);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (const auto& [m, amp] : modes) c(static_cast<Eigen::Index>(basis.index_of(m.two_j, m.two_m))) += amp;
    double norm2 = 0.0;
    for (std::size_t q = 0; q < basis.size(); ++q) {
        norm2 += std::norm(c(static_cast<Eigen::Index>(q))) * basis.mode_norm(basis.modes()[q].two_j);
    }
    if (!(norm2 > 0.0)) throw NonNormalizableError("initial amplitudes are all zero");
    c /= std::sqrt(norm2 * std::pow(grid->giration_radius(), 3));

    ScalarWavefunction w;
    w.spin = spin;
    w.grid = grid;
    w.values = {basis.sample(c)};
    w.cell_volumes = {1.0};
    w.normalization = scalar_normalization(spin, *grid);
    return w;
}

std::vector<Check> evolve_checks(const SuiteOptions& opt, const EvolveSetup& setup, Json& data, std::optional<DynamicalRun>* run_out) {
    std::vector<Check> out;
    const PhysicalParameters& p = opt.params;
    const GridPtr grid = opt.grid();
    const ScalarWavefunction init = superposition(opt.spin, grid, setup.modes);

    int two_j_max = 0;
    for (const auto& [m, amp] : setup.modes) two_j_max = std::max(two_j_max, m.two_j);
    EvolveOptions eo;
    eo.two_j_cap = std::max(eo.two_j_cap, two_j_max);
    DynamicalRun run = evolve(init, setup.dt, setup.steps, p, eo);

    out.push_back(make_check("evolve.norm_drift", run.max_norm_drift(), 1e-9));
    out.push_back(make_check("evolve.energy_drift", run.max_energy_drift(), 1e-9));

    // grid <H> against the mode energies
    const Eigen::VectorXcd& c0 = run.states().front().coefficients;
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < run.basis().size(); ++q) {
        const int tj = run.basis().modes()[q].two_j;
        const double w = std::norm(c0(static_cast<Eigen::Index>(q))) * run.basis().mode_norm(tj);
        num += w * mode_energy(tj, p);
        den += w;
    }
    const double e_modes = num / den;
    const double e_grid = run.states().front().energy;
    out.push_back(make_check("evolve.energy_expectation", std::abs(e_grid - e_modes) / std::abs(e_modes), 1e-10));

    // every j(j+1) difference is an integer, so T = 4 pi m a^2 / hbar is a full revival
    const double revival = 4.0 * kPi * p.inertia() / p.hbar;
    const ComplexField psi0 = run.wavefunction_at(0.0).values[0];
    const ComplexField psit = run.wavefunction_at(revival).values[0];
    const So3Grid& g = *grid;
    const double fid = std::abs(inner(g, psi0, psit)) / inner(g, psi0, psi0).real();
    out.push_back(make_check("evolve.revival_fidelity", std::abs(1.0 - fid), 1e-10));

    data["two_s"] = opt.spin.two_s();
    data["dt"] = setup.dt;
    data["steps"] = setup.steps;
    data["energy"] = e_modes;
    data["revival_time"] = revival;
    if (run_out) run_out->emplace(std::move(run));
    return out;
}

// ---------------------------------------------------------------- madelung

MadelungConfig default_madelung_config(SpinLabel spin, int levels) {
    const int ts = spin.two_s();
    MadelungConfig c;
    c.spin = spin;
    c.levels = levels;
    c.modes = {{{ts, ts}, Complex(0.8, 0.1)}, {{ts + 2, ts - 2}, Complex(0.3, -0.5)}, {{ts + 2, ts + 2}, Complex(0.2, 0.2)}};
    return c;
}

std::vector<Check> madelung_checks(const SuiteOptions& opt, const MadelungConfig& config, Json& data) {
    std::vector<Check> out;
    const PhysicalParameters& p = opt.params;
    const std::vector<MadelungLevel> levels = madelung_study(config, p);
    const MadelungReport rep = madelung_report(levels);
    out.push_back(fitted_order_check("madelung.hje_order", rep.hje_order, rep.hje_at_rounding, rep.required_order));
    out.push_back(fitted_order_check("madelung.continuity_order", rep.continuity_order, rep.continuity_at_rounding,
                                     rep.required_order));

    // norm over 10^3 audited steps on the coarsest grid
    {
        SuiteOptions o = opt;
        o.n_alpha = o.n_beta = o.n_gamma = config.base_n;
        const ScalarWavefunction init = superposition(config.spin, o.grid(), config.modes);
        EvolveOptions eo;
        for (const auto& [m, amp] : config.modes) eo.two_j_cap = std::max(eo.two_j_cap, m.two_j);
        const DynamicalRun run = evolve(init, config.dt0, 1000, p, eo);
        out.push_back(make_check("madelung.norm_drift_1000_steps", run.max_norm_drift(), 1e-9));
    }

    // stationary state conj D^s_{ss}: S = hbar s (alpha + gamma) - E t, rho = d^2
    {
        const GridPtr grid = make_grid(GridSpec{config.base_n, config.base_n, config.base_n, natural_period(config.spin)},
                                       p.giration_radius);
        const SpectralOperators ops(grid);
        const ScalarWavefunction st =
            superposition(config.spin, grid, {{{config.spin.two_s(), config.spin.two_s()}, Complex(1.0, 0.0)}});
        const PolarFields pf = density_and_action(st, p.hbar);
        const RealField ds(grid->size(), -mode_energy(config.spin.two_s(), p));
        const RealField dr(grid->size(), 0.0);
        out.push_back(make_check("madelung.stationary_hje", hje_residual(ops, pf.rho, pf.action, ds, p).rms, 1e-8));
        out.push_back(
            make_check("madelung.stationary_continuity", continuity_residual(ops, pf.rho, pf.action, dr, p).rms, 1e-8));
    }

    Json lv = Json::array();
    for (const auto& l : levels) {
        lv.push_back({{"n", l.n}, {"h", l.h}, {"dt", l.dt}, {"hje", l.hje}, {"continuity", l.continuity},
                      {"norm_drift", l.norm_drift}});
    }
    data["two_s"] = config.spin.two_s();
    data["levels"] = lv;
    data["rounding_floor"] = rep.rounding_floor;
    return out;
}

// ---------------------------------------------------------------- exchange

std::vector<FramePair> random_frame_pairs(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FramePair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const EulerAngles a = random_angles(rng);
        const EulerAngles b = random_angles(rng);
        out.push_back({a, b});
    }
    return out;
}

std::vector<Check> exchange_checks(const SuiteOptions& opt, const std::vector<FramePair>& pairs, Json& data) {
    std::vector<Check> out;
    const SpinLabel spin = opt.spin;
    int mismatches = 0;
    double sum_err = 0.0, min_step = std::numeric_limits<double>::infinity(), composite = 0.0, maps = 0.0;
    Json records = Json::array();
    for (const auto& fp : pairs) {
        const ExchangePath path = monotone_exchange_path(fp.a, fp.b, 64);
        const PathAudit audit = audit_path(path);
        const Complex phase = exchange_phase(spin, path);
        if (phase != Complex(spin.statistics_sign(), 0.0)) ++mismatches;
        sum_err = std::max(sum_err, audit.sum_error);
        min_step = std::min(min_step, audit.min_step);

        const ExchangeRotations rot = exchange_rotations(fp.a, fp.b);
        composite = std::max(composite, (rot.composite().matrix - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
        const Eigen::Matrix3d ra = euler_matrix(fp.a), rb = euler_matrix(fp.b);
        maps = std::max({maps, (rot.a_to_b.matrix * ra - rb).cwiseAbs().maxCoeff(),
                         (rot.b_to_a.matrix * rb - ra).cwiseAbs().maxCoeff()});
        if (records.size() < 16) {
            records.push_back({{"frame_a", {fp.a.alpha, fp.a.beta, fp.a.gamma}},
                               {"frame_b", {fp.b.alpha, fp.b.beta, fp.b.gamma}},
                               {"delta_gamma_a", path.delta_gamma_a},
                               {"delta_gamma_b", path.delta_gamma_b},
                               {"monotone", audit.monotone},
                               {"min_step", audit.min_step},
                               {"phase", static_cast<int>(phase.real())}});
        }
    }
    out.push_back(make_check("exchange.phase", mismatches, 0.0, Comparison::Equal,
                             "pairs whose phase differs from " + std::to_string(spin.statistics_sign())));
    out.push_back(make_check("exchange.increment_sum", sum_err, 1e-12));
    out.push_back(make_check("exchange.monotone_paths", min_step, 0.0, Comparison::AtLeast));
    out.push_back(make_check("exchange.composite_full_turn", composite, 1e-12));
    out.push_back(make_check("exchange.maps_frames", maps, 1e-12));

    std::mt19937_64 rng(opt.seed);
    double boost_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const EulerAngles q = random_angles(rng);
        const RotationOp b = boost(q.alpha, q.beta);
        const Eigen::Matrix3d lhs = b.matrix * rotation_z(q.gamma).matrix;
        const Eigen::Vector3d zeta = b.matrix * Eigen::Vector3d::UnitZ();
        boost_err = std::max({boost_err, (lhs - euler_matrix(q)).cwiseAbs().maxCoeff(),
                              (lhs - axis_angle_matrix(zeta, q.gamma) * b.matrix).cwiseAbs().maxCoeff()});
    }
    out.push_back(make_check("exchange.boost_factorization", boost_err, 1e-12));

    int perm_bad = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto a = PermutationRecord::from_cycles(perm);
        const auto b = PermutationRecord::from_adjacent(perm);
        if (statistics_sign(spin, a) != statistics_sign(spin, b) || a.compose() != perm || b.compose() != perm ||
            a.parity != permutation_sign(perm)) {
            ++perm_bad;
        }
    }
    out.push_back(make_check("exchange.decomposition_independence", perm_bad, 0.0, Comparison::Equal));

    const auto inc = permutation_action_increment(spin, PermutationRecord::from_cycles({1, 0}), opt.params);
    const double expect = kTwoPi * opt.params.hbar * spin.value();
    out.push_back(make_check("exchange.transposition_action", std::abs(inc.delta_S - expect), 1e-12));

    data["two_s"] = spin.two_s();
    data["phase"] = spin.statistics_sign();
    data["pairs"] = pairs.size();
    data["records"] = records;
    return out;
}

// ---------------------------------------------------------------- statistics

std::vector<Check> statistics_checks(const SuiteOptions& opt, Json& data) {
    std::vector<Check> out;
    const SpinLabel spin = opt.spin;
    const int n_modes = 2;
    const int d = n_modes * spin.dimension();
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto state = [&] {
        Eigen::VectorXcd v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(nd(rng), nd(rng));
        return Eigen::VectorXcd(v.normalized());
    };
    const std::vector<Eigen::VectorXcd> states{state(), state(), state()};
    const NParticleSpinor psi = symmetrize(states, spin, n_modes);
    const double sign = spin.statistics_sign();
    double swap = 0.0;
    for (const std::vector<int>& t : {std::vector<int>{1, 0, 2}, std::vector<int>{0, 2, 1}, std::vector<int>{2, 1, 0}}) {
        const NParticleSpinor q = psi.permuted(t);
        for (std::size_t i = 0; i < psi.tensor.size(); ++i) swap = std::max(swap, std::abs(q.tensor[i] - sign * psi.tensor[i]));
    }
    out.push_back(make_check("statistics.transposition_eigenvalue", swap, 1e-12));

    const NParticleSpinor rep = symmetrize({states[0], states[0], states[1]}, spin, n_modes);
    if (spin.is_half_integer()) {
        Check c = make_check("statistics.pauli_exclusion", rep.raw_norm, 1e-12);
        c.pass = c.pass && rep.is_zero;
        out.push_back(c);
    } else {
        out.push_back(make_check("statistics.repeated_state_allowed", rep.raw_norm, 1e-6, Comparison::AtLeast));
    }

    const ProjectorCheck pc = symmetry_projector_check(spin, 3, 3, opt.seed);
    out.push_back(make_check("statistics.projector_rank", pc.rank - pc.expected_rank, 0.0, Comparison::Equal,
                             "rank " + std::to_string(pc.rank) + ", expected " + std::to_string(pc.expected_rank)));
    out.push_back(make_check("statistics.projector_idempotent", pc.idempotency_error, 1e-12));
    out.push_back(make_check("statistics.mixed_symmetry_annihilated", pc.mixed_leakage, 1e-12));

    const ActionSymmetryReport ok = verify_action_symmetry(spin, 3, 12, opt.seed);
    int failed = 0;
    for (const auto& t : ok.trials) failed += t.pass ? 0 : 1;
    out.push_back(make_check("statistics.action_symmetry", failed, 0.0, Comparison::Equal));

    const ActionSymmetryReport wrong = verify_action_symmetry(spin, 3, 12, opt.seed, true);
    int odd = 0, odd_passing = 0;
    for (const auto& t : wrong.trials) {
        if (t.k_p % 2 != 0) {
            ++odd;
            odd_passing += t.pass ? 1 : 0;
        }
    }
    out.push_back(make_check("statistics.wrong_statistics_rejected", odd > 0 ? odd_passing : kNaN, 0.0,
                             Comparison::Equal, std::to_string(odd) + " odd permutations tried"));

    const NParticleSpinor serial = symmetrize(states, spin, n_modes, false);
    double par = 0.0;
    for (std::size_t i = 0; i < psi.tensor.size(); ++i) par = std::max(par, std::abs(psi.tensor[i] - serial.tensor[i]));
    out.push_back(make_check("statistics.serial_parallel_agreement", par, 0.0, Comparison::Equal));

    data["two_s"] = spin.two_s();
    data["particles"] = 3;
    data["local_dim"] = d;
    data["projector_rank"] = pc.rank;
    return out;
}

}  // namespace spinframe::suites

#include "spinframe/error.hpp"
#include "spinframe/spectral.hpp"
#include "spinframe/wavefunction.hpp"
#include "spinframe/wigner.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace spinframe;

namespace {

GridPtr grid_for(SpinLabel s, int n = 16, double a = 1.0) { return make_grid(GridSpec{n, n, n, natural_period(s)}, a); }

SpinorField random_spinor(SpinLabel s, testing::Rng& rng) { return SpinorField::at_point(s, rng.unit_complex(s.dimension())); }

double cover_normalization(SpinLabel s, double a) {
    const double V = s.is_half_integer() ? 16 * kPi * kPi : 8 * kPi * kPi;
    return std::sqrt((s.two_s() + 1) / (a * a * a * V));
}

}  // namespace

TEST_CASE("round trip spinor -> scalar -> spinor") {
    testing::Rng rng(101);
    for (int two_s = 0; two_s <= 4; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s, 16, 1.4);
        for (int trial = 0; trial < 10; ++trial) {
            const SpinorField sp = random_spinor(s, rng);
            const ScalarWavefunction sc = scalar_from_spinor(sp, g);
            CHECK(sc.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
            const SpinorField back = spinor_from_scalar(sc);
            CHECK(testing::max_abs(back.components - sp.components) < 1e-10);
        }
    }
}

TEST_CASE("round trip at several spatial points with cell volumes") {
    testing::Rng rng(102);
    const SpinLabel s(3);
    SpinorField sp;
    sp.spin = s;
    sp.components.resize(3, 4);
    for (int p = 0; p < 3; ++p) sp.components.row(p) = rng.unit_complex(4).transpose() / std::sqrt(3.0 * 0.5);
    sp.cell_volumes = {0.5, 0.5, 0.5};
    CHECK(sp.norm_squared() == doctest::Approx(1.0));
    const ScalarWavefunction sc = scalar_from_spinor(sp, grid_for(s, 10));
    CHECK(sc.n_points() == 3);
    CHECK(sc.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(testing::max_abs(spinor_from_scalar(sc).components - sp.components) < 1e-10);
}

TEST_CASE("density is independent of gamma") {
    testing::Rng rng(103);
    for (int two_s = 0; two_s <= 4; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s);
        const ScalarWavefunction sc = scalar_from_spinor(random_spinor(s, rng), g);
        const RealField rho = sc.density();
        double rmax = 0, dev = 0;
        for (double r : rho) rmax = std::max(rmax, r);
        for (int ia = 0; ia < g->n_alpha(); ++ia)
            for (int ib = 0; ib < g->n_beta(); ++ib)
                for (int ig = 1; ig < g->n_gamma(); ++ig)
                    dev = std::max(dev, std::abs(rho[g->index(ia, ib, ig)] - rho[g->index(ia, ib, 0)]));
        CHECK(dev / rmax < 1e-12);
        CHECK(gamma_mode_leakage(sc.angular(), *g, s) < 1e-12);
    }
}

TEST_CASE("spin 1/2 closed forms") {
    const SpinLabel half(1);
    const double a = 1.2;
    const GridPtr g = grid_for(half, 12, a);
    const double N = cover_normalization(half, a);
    CHECK(scalar_normalization(half, *g) == doctest::Approx(N).epsilon(1e-14));

    Eigen::VectorXcd up(2);
    up << 1.0, 0.0;
    const ScalarWavefunction s_up = scalar_from_spinor(SpinorField::at_point(half, up), g);
    double err = 0;
    for (std::size_t n = 0; n < g->size(); ++n) {
        const EulerAngles q = g->node(n);
        const Complex expect = N * std::polar(1.0, q.gamma / 2 + q.alpha / 2) * std::cos(q.beta / 2);
        err = std::max(err, std::abs(s_up.angular()[n] - expect));
    }
    CHECK(err < 1e-14);

    Eigen::VectorXcd both(2);
    both << std::sqrt(0.5), std::sqrt(0.5);
    const RealField rho = scalar_from_spinor(SpinorField::at_point(half, both), g).density();
    err = 0;
    for (std::size_t n = 0; n < g->size(); ++n) {
        const EulerAngles q = g->node(n);
        const double expect = N * N * (1 + 2 * std::cos(q.beta / 2) * std::sin(q.beta / 2) * std::cos(q.alpha)) / 2;
        err = std::max(err, std::abs(rho[n] - expect));
    }
    CHECK(err < 1e-14);
}

TEST_CASE("spin 0 is a constant") {
    const SpinLabel zero(0);
    const GridPtr g = grid_for(zero, 8);
    Eigen::VectorXcd one(1);
    one << 1.0;
    const ScalarWavefunction sc = scalar_from_spinor(SpinorField::at_point(zero, one), g);
    for (const auto& v : sc.angular()) CHECK(std::abs(v - cover_normalization(zero, 1.0)) < 1e-15);

    ScalarWavefunction c;
    c.spin = zero;
    c.grid = g;
    c.values = {ComplexField(g->size(), Complex(0.3, 0.4))};
    c.cell_volumes = {1.0};
    const SpinorField sp = spinor_from_scalar(c);
    CHECK(sp.components.cols() == 1);
    CHECK(std::abs(std::abs(sp.components(0, 0)) - 0.5 / cover_normalization(zero, 1.0)) < 1e-12);
}

TEST_CASE("inverse transform of the spin-up closed form") {
    const SpinLabel half(1);
    const GridPtr g = grid_for(half, 10);
    ScalarWavefunction w;
    w.spin = half;
    w.grid = g;
    w.cell_volumes = {1.0};
    ComplexField v(g->size());
    for (std::size_t n = 0; n < g->size(); ++n) {
        const EulerAngles q = g->node(n);
        v[n] = std::polar(1.0, q.gamma / 2) * std::polar(1.0, q.alpha / 2) * std::cos(q.beta / 2);
    }
    w.values = {v};
    const SpinorField sp = spinor_from_scalar(w);
    CHECK(std::abs(sp.components(0, 0) - 1.0 / cover_normalization(half, 1.0)) < 1e-12);
    CHECK(std::abs(sp.components(0, 1)) < 1e-12);
}

TEST_CASE("intrinsic angular momentum: -i hbar d_gamma Psi = hbar s Psi") {
    testing::Rng rng(104);
    for (int two_s = 0; two_s <= 4; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s);
        const SpectralOperators ops(g);
        const ScalarWavefunction sc = scalar_from_spinor(random_spinor(s, rng), g);
        const ComplexField dg = ops.d_gamma(sc.angular());
        double err = 0;
        for (std::size_t n = 0; n < dg.size(); ++n) err = std::max(err, std::abs(-Complex(0, 1) * dg[n] - s.value() * sc.angular()[n]));
        CHECK(err < 1e-10);

        // and through the action: the gamma slope of S is hbar s
        const double hbar = 0.7;
        const PolarFields pf = density_and_action(sc, hbar);
        const double dgam = g->gamma(1) - g->gamma(0);
        double slope = 0;
        for (int ia = 0; ia < g->n_alpha(); ++ia)
            for (int ib = 0; ib < g->n_beta(); ++ib)
                for (int ig = 1; ig < g->n_gamma(); ++ig)
                    slope = std::max(slope, std::abs((pf.action[g->index(ia, ib, ig)] - pf.action[g->index(ia, ib, ig - 1)]) / dgam -
                                                     hbar * s.value()));
        CHECK(slope < 1e-8);
    }
}

TEST_CASE("2pi lab rotation: spinor flips, scalar does not") {
    testing::Rng rng(105);
    for (int two_s = 0; two_s <= 4; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s);
        const SpinorField sp = random_spinor(s, rng);
        const ScalarWavefunction sc = scalar_from_spinor(sp, g);
        const LabRotation turn = LabRotation::about_axis(rng.unit_vector(), kTwoPi);
        const SpinorField sp2 = rotate_lab_frame(sp, turn);
        CHECK(testing::max_abs(sp2.components - double(s.statistics_sign()) * sp.components) == 0.0);
        const ScalarWavefunction sc2 = rotate_lab_frame(sc, turn);
        CHECK(testing::max_abs_diff(sc2.angular(), sc.angular()) < 1e-10);
    }
}

TEST_CASE("identity rotation and norm preservation") {
    testing::Rng rng(106);
    for (int two_s = 0; two_s <= 3; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s, 12);
        const SpinorField sp = random_spinor(s, rng);
        const ScalarWavefunction sc = scalar_from_spinor(sp, g);
        CHECK(testing::max_abs_diff(rotate_lab_frame(sc, LabRotation::identity()).angular(), sc.angular()) < 1e-12);
        CHECK(testing::max_abs(rotate_lab_frame(sp, LabRotation::identity()).components - sp.components) < 1e-15);
        for (int i = 0; i < 3; ++i) {
            const LabRotation r = LabRotation::from_euler(rng.angles());
            CHECK(rotate_lab_frame(sp, r).norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(rotate_lab_frame(sc, r).norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("scalar pullback agrees with the spinor rotation") {
    testing::Rng rng(107);
    for (int two_s = 0; two_s <= 3; ++two_s) {
        const SpinLabel s(two_s);
        const GridPtr g = grid_for(s, 12);
        const SpinorField sp = random_spinor(s, rng);
        const ScalarWavefunction sc = scalar_from_spinor(sp, g);
        for (int i = 0; i < 3; ++i) {
            const LabRotation r = LabRotation::about_axis(rng.unit_vector(), rng.uniform(0.0, 3.0));
            const ScalarWavefunction a = rotate_lab_frame(sc, r);
            const ScalarWavefunction b = scalar_from_spinor(rotate_lab_frame(sp, r), g);
            CHECK(testing::max_abs_diff(a.angular(), b.angular()) < 1e-10);
        }
    }
}

TEST_CASE("polar decomposition") {
    testing::Rng rng(108);
    const SpinLabel half(1);
    const GridPtr g = grid_for(half);
    for (int i = 0; i < 5; ++i) {
        const ScalarWavefunction sc = scalar_from_spinor(random_spinor(half, rng), g);
        const PolarFields pf = density_and_action(sc, 1.3);
        double err = 0;
        for (std::size_t n = 0; n < g->size(); ++n) {
            err = std::max(err, std::abs(std::sqrt(pf.rho[n]) * std::polar(1.0, pf.action[n] / 1.3) - sc.angular()[n]));
        }
        CHECK(err < 1e-10);
    }

    // spin down empty: S = hbar (alpha + gamma) / 2 up to a constant, no beta dependence
    Eigen::VectorXcd up(2);
    up << Complex(0.6, 0.8), 0.0;
    const PolarFields pf = density_and_action(scalar_from_spinor(SpinorField::at_point(half, up), g));
    double dev = 0;
    for (int ia = 0; ia < g->n_alpha(); ++ia)
        for (int ig = 0; ig < g->n_gamma(); ++ig)
            for (int ib = 1; ib < g->n_beta(); ++ib)
                dev = std::max(dev, std::abs(pf.action[g->index(ia, ib, ig)] - pf.action[g->index(ia, 0, ig)]));
    CHECK(dev < 1e-12);

    // a pure gamma phase: constant density, slope hbar/2
    ScalarWavefunction w;
    w.spin = half;
    w.grid = g;
    w.cell_volumes = {1.0};
    ComplexField v(g->size());
    for (std::size_t n = 0; n < g->size(); ++n) v[n] = 0.1 * std::polar(1.0, g->node(n).gamma / 2);
    w.values = {v};
    const PolarFields pp = density_and_action(w);
    for (std::size_t n = 0; n < g->size(); ++n) {
        CHECK(pp.rho[n] == doctest::Approx(0.01).epsilon(1e-13));
        CHECK(pp.action[n] - pp.action[g->index(0, 0, 0)] == doctest::Approx(g->node(n).gamma / 2).epsilon(1e-12));
    }
}

TEST_CASE("error conditions") {
    const SpinLabel half(1);
    Eigen::VectorXcd up(2);
    up << 1.0, 0.0;
    const SpinorField sp = SpinorField::at_point(half, up);
    CHECK_THROWS_AS(scalar_from_spinor(sp, make_grid(GridSpec{8, 8, 8, GammaPeriod::TwoPi})), PeriodMismatchError);
    CHECK_THROWS_AS(scalar_from_spinor(SpinorField::at_point(half, 2.0 * up), grid_for(half, 8)), NonNormalizableError);
    CHECK_THROWS_AS(SpinorField::at_point(half, Eigen::VectorXcd::Zero(2)).normalized(), NonNormalizableError);

    const GridPtr g = grid_for(half, 8);
    ScalarWavefunction w;
    w.spin = half;
    w.grid = g;
    w.cell_volumes = {1.0};
    ComplexField mixed(g->size());
    for (std::size_t n = 0; n < g->size(); ++n) {
        const EulerAngles q = g->node(n);
        mixed[n] = std::polar(1.0, q.gamma / 2) * std::cos(q.beta / 2) + 0.3 * std::polar(1.0, 1.5 * q.gamma);
    }
    w.values = {mixed};
    CHECK_THROWS_AS(spinor_from_scalar(w), MixedGammaModeError);
    CHECK(gamma_mode_leakage(mixed, *g, half) > 0.1);

    w.values = {ComplexField(g->size())};
    CHECK_THROWS_AS(spinor_from_scalar(w), NonNormalizableError);

    ScalarWavefunction node = scalar_from_spinor(sp, g);
    node.values[0][17] = 0.0;
    CHECK_THROWS_AS(density_and_action(node), NodeCrossingError);
}

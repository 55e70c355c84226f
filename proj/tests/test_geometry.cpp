#include "spinframe/error.hpp"
#include "spinframe/geometry.hpp"
#include "spinframe/grid.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace spinframe;
using geometry::Matrix6;

namespace {

Matrix6 metric(const EulerAngles& q, const PhysicalParameters& p) { return geometry::metric_at(q, p).g; }

EulerAngles shifted(EulerAngles q, int coord, double h) {
    if (coord == geometry::kAlpha) q.alpha += h;
    if (coord == geometry::kBeta) q.beta += h;
    if (coord == geometry::kGamma) q.gamma += h;
    return q;  // spatial coordinates never enter the metric
}

// Gamma^i_{jk} = g^{il} (d_j g_lk + d_k g_lj - d_l g_jk) / 2 with central differences
std::vector<double> fd_christoffel(const EulerAngles& q, const PhysicalParameters& p, double h = 1e-5) {
    std::vector<Matrix6> dg(6, Matrix6::Zero());
    for (int l = 3; l < 6; ++l) dg[l] = (metric(shifted(q, l, h), p) - metric(shifted(q, l, -h), p)) / (2 * h);
    const Matrix6 ginv = metric(q, p).inverse();
    std::vector<double> out(216, 0.0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                double s = 0;
                for (int l = 0; l < 6; ++l) s += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
                out[(i * 6 + j) * 6 + k] = 0.5 * s;
            }
    return out;
}

// Ricci scalar from finite-difference Christoffels and their finite differences
double fd_scalar_curvature(const EulerAngles& q, const PhysicalParameters& p) {
    const double h = 1e-3;
    auto G = fd_christoffel(q, p);
    std::vector<std::vector<double>> dG(6, std::vector<double>(216, 0.0));
    for (int l = 3; l < 6; ++l) {
        auto a = fd_christoffel(shifted(q, l, h), p), b = fd_christoffel(shifted(q, l, -h), p);
        for (int n = 0; n < 216; ++n) dG[l][n] = (a[n] - b[n]) / (2 * h);
    }
    auto g = [&](int i, int j, int k) { return G[(i * 6 + j) * 6 + k]; };
    const Matrix6 ginv = metric(q, p).inverse();
    double r = 0;
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) {
            double ric = 0;
            for (int i = 0; i < 6; ++i) {
                ric += dG[i][(i * 6 + j) * 6 + k] - dG[k][(i * 6 + j) * 6 + i];
                for (int m = 0; m < 6; ++m) ric += g(i, i, m) * g(m, j, k) - g(i, k, m) * g(m, j, i);
            }
            r += ginv(j, k) * ric;
        }
    return r;
}

}  // namespace

TEST_CASE("metric block values") {
    const PhysicalParameters p;
    auto m = geometry::metric_at({0.4, kPi / 2, 1.0}, p);
    CHECK((m.gamma3() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    m = geometry::metric_at({0.0, kPi / 3, 0.0}, p);
    CHECK(m.gamma3()(0, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.gamma3()(2, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.gamma3().determinant() == doctest::Approx(0.75).epsilon(1e-14));

    m = geometry::metric_at({0.0, 0.0, 0.0}, p);
    CHECK(m.singular);
    CHECK(std::abs(m.gamma3().determinant()) < 1e-15);
    CHECK(geometry::is_coordinate_singular(kPi));
    CHECK_FALSE(geometry::is_coordinate_singular(1.0));
}

TEST_CASE("det g = a^6 sin^2 beta at random points") {
    testing::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const PhysicalParameters p(1.0, rng.uniform(0.3, 3.0), 1.0);
        const EulerAngles q = rng.angles();
        const double expect = std::pow(p.giration_radius, 6) * std::pow(std::sin(q.beta), 2);
        const auto m = geometry::metric_at(q, p);
        CHECK(std::abs(m.det_g - expect) <= 1e-12 * std::pow(p.giration_radius, 6));
        CHECK(m.sqrt_det_g == doctest::Approx(std::pow(p.giration_radius, 3) * std::sin(q.beta)).epsilon(1e-12));
    }
}

TEST_CASE("Christoffel symbols match a finite-difference oracle") {
    testing::Rng rng(3);
    std::vector<EulerAngles> pts{{0.2, kPi / 2, 0.7}};
    for (int i = 0; i < 10; ++i) pts.push_back(rng.angles());
    for (const double a : {1.0, 1.7}) {
        const PhysicalParameters p(1.0, a, 1.0);
        for (const auto& q : pts) {
            const auto G = geometry::christoffel_symbols(q, p);
            const auto oracle = fd_christoffel(q, p);
            double err = 0;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    for (int k = 0; k < 6; ++k) err = std::max(err, std::abs(G(i, j, k) - oracle[(i * 6 + j) * 6 + k]));
            CHECK(err < 1e-8);
        }
    }
}

TEST_CASE("Christoffel symmetry and flat spatial block") {
    testing::Rng rng(5);
    const PhysicalParameters p(1.0, 1.3, 1.0);
    for (int n = 0; n < 100; ++n) {
        const auto G = geometry::christoffel_symbols(rng.angles(), p);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                for (int k = 0; k < 6; ++k) {
                    CHECK(G(i, j, k) == G(i, k, j));
                    if (i < 3 || j < 3 || k < 3) CHECK(G(i, j, k) == 0.0);
                }
    }
    CHECK_THROWS_AS(geometry::christoffel_symbols({0.0, 0.0, 0.0}, p), SingularityError);
    CHECK_THROWS_AS(geometry::christoffel_symbols({0.0, kPi, 0.0}, p), SingularityError);
}

TEST_CASE("scalar curvature is 3/(2a^2) everywhere") {
    CHECK(geometry::riemann_scalar_curvature({0.3, 1.1, 2.0}, PhysicalParameters(1, 1, 1)) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(geometry::riemann_scalar_curvature({0.3, 1.1, 2.0}, PhysicalParameters(1, 2, 1)) ==
          doctest::Approx(0.375).epsilon(1e-12));

    testing::Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const PhysicalParameters p(1.0, rng.uniform(0.5, 2.5), 1.0);
        const EulerAngles q = rng.angles();
        const double expect = 1.5 / (p.giration_radius * p.giration_radius);
        CHECK(std::abs(geometry::riemann_scalar_curvature(q, p) - expect) < 1e-8);
        CHECK(std::abs(geometry::so3_scalar_curvature(q, p) - expect) < 1e-8);
        CHECK(p.riemann_scalar() == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("scalar curvature agrees with a nested finite-difference oracle") {
    testing::Rng rng(23);
    for (int i = 0; i < 4; ++i) {
        const PhysicalParameters p(1.0, rng.uniform(0.7, 1.5), 1.0);
        EulerAngles q = rng.angles();
        q.beta = rng.uniform(0.4, 2.7);
        CHECK(std::abs(fd_scalar_curvature(q, p) - geometry::riemann_scalar_curvature(q, p)) < 1e-5);
    }
}

TEST_CASE("xi^2 is exactly 1/5 for six coordinates") {
    constexpr auto r = PhysicalParameters::xi_squared_ratio();
    static_assert(r.first == 1 && r.second == 5);
    CHECK(PhysicalParameters::xi_squared() == 0.2);
}

TEST_CASE("pointwise Laplace-Beltrami on a known function") {
    // f = cos(beta): LB f = -2 cos(beta) / a^2
    const PhysicalParameters p(1.0, 1.4, 1.0);
    testing::Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const EulerAngles q = rng.angles();
        geometry::Vector6 grad = geometry::Vector6::Zero();
        Matrix6 hess = Matrix6::Zero();
        grad(geometry::kBeta) = -std::sin(q.beta);
        hess(geometry::kBeta, geometry::kBeta) = -std::cos(q.beta);
        const double lb = geometry::laplace_beltrami_at(q, p, grad, hess);
        CHECK(lb == doctest::Approx(-2.0 * std::cos(q.beta) / (1.4 * 1.4)).epsilon(1e-12));
    }
}

TEST_CASE("grid weights reproduce the Haar volume") {
    for (int nb : {2, 4, 8, 16, 32}) {
        const So3Grid g2(GridSpec{8, nb, 8, GammaPeriod::TwoPi});
        const So3Grid g4(GridSpec{8, nb, 8, GammaPeriod::FourPi});
        CHECK(g2.integrate(RealField(g2.size(), 1.0)) == doctest::Approx(8 * kPi * kPi).epsilon(1e-12));
        CHECK(g4.integrate(RealField(g4.size(), 1.0)) == doctest::Approx(16 * kPi * kPi).epsilon(1e-12));
    }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    for (int n : {1, 3, 8, 17}) {
        const auto gl = gauss_legendre(n);
        for (int k = 0; k < 2 * n; ++k) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
            const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
        for (int i = 1; i < n; ++i) CHECK(gl.nodes[i] < gl.nodes[i - 1]);
    }
    CHECK_THROWS_AS(gauss_legendre(0), ResolutionError);
}

TEST_CASE("grid config round trip and errors") {
    GridConfig c;
    c.grid = GridSpec{12, 10, 14, GammaPeriod::FourPi};
    c.params = PhysicalParameters(2.0, 1.5, 0.5);
    const GridConfig back = parse_grid_config(grid_config_to_json(c));
    CHECK(back.grid.n_alpha == 12);
    CHECK(back.grid.n_beta == 10);
    CHECK(back.grid.n_gamma == 14);
    CHECK(back.grid.gamma_period == GammaPeriod::FourPi);
    CHECK(back.params.mass == 2.0);
    CHECK(back.params.giration_radius == 1.5);
    CHECK(back.params.hbar == 0.5);
    CHECK_THROWS_AS(parse_grid_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_grid_config("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_grid_config(R"({"gamma_period":"3pi"})"), ConfigError);
    CHECK_THROWS_AS(parse_grid_config(R"({"n_alpha":0})"), ConfigError);
    CHECK_THROWS_AS(PhysicalParameters(1.0, -1.0, 1.0), ConfigError);
}

TEST_CASE("grid layout") {
    const So3Grid g(GridSpec{6, 5, 4, GammaPeriod::FourPi});
    CHECK(g.size() == 120);
    CHECK(g.index(2, 3, 1) == (2 * 5 + 3) * 4 + 1);
    const EulerAngles q = g.node(g.index(2, 3, 1));
    CHECK(q.alpha == doctest::Approx(2 * kTwoPi / 6));
    CHECK(q.gamma == doctest::Approx(4 * kPi / 4));
    CHECK(std::cos(q.beta) == doctest::Approx(g.cos_beta(3)));
    CHECK(natural_period(SpinLabel(3)) == GammaPeriod::FourPi);
    CHECK(natural_period(SpinLabel(2)) == GammaPeriod::TwoPi);
}

#include "spinframe/error.hpp"
#include "spinframe/exchange.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace spinframe;

namespace {

Eigen::Matrix3d rz(double t) {
    Eigen::Matrix3d m;
    m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return m;
}
Eigen::Matrix3d ry(double t) {
    Eigen::Matrix3d m;
    m << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
    return m;
}
Eigen::Matrix3d frame(const EulerAngles& q) { return rz(q.alpha) * ry(q.beta) * rz(q.gamma); }

double mdiff(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) { return (a - b).cwiseAbs().maxCoeff(); }

// determinant (sign = -1) or permanent (sign = +1) of the n x n matrix m
Complex det_or_perm(const Eigen::MatrixXcd& m, int sign) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Complex total = 0;
    do {
        Complex term = (sign < 0) ? double(permutation_sign(p)) : 1.0;
        for (int i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// every entry of the (anti)symmetrized product, normalized
std::vector<Complex> oracle_tensor(const std::vector<Eigen::VectorXcd>& states, int sign) {
    const int n = static_cast<int>(states.size()), d = static_cast<int>(states[0].size());
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(d);
    std::vector<Complex> out(total);
    double nrm = 0;
    for (std::size_t f = 0; f < total; ++f) {
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::size_t r = f;
        for (int i = n - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(d));
            r /= static_cast<std::size_t>(d);
        }
        Eigen::MatrixXcd m(n, n);  // m(state, slot)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) = states[static_cast<std::size_t>(a)](idx[static_cast<std::size_t>(b)]);
        out[f] = det_or_perm(m, sign);
        nrm += std::norm(out[f]);
    }
    for (auto& v : out) v /= std::sqrt(nrm);
    return out;
}

}  // namespace

TEST_CASE("boosts and the Euler factorization") {
    CHECK(mdiff(boost(0, 0).matrix, Eigen::Matrix3d::Identity()) == 0.0);
    const Eigen::Vector3d x = boost(0, kPi / 2).matrix * Eigen::Vector3d::UnitZ();
    CHECK((x - Eigen::Vector3d::UnitX()).norm() < 1e-15);

    testing::Rng rng(301);
    for (int i = 0; i < 100; ++i) {
        const EulerAngles q = rng.angles();
        const RotationOp b = boost(q.alpha, q.beta);
        CHECK(mdiff(b.matrix, rz(q.alpha) * ry(q.beta)) < 1e-14);
        CHECK(mdiff((b * rotation_z(q.gamma)).matrix, frame(q)) < 1e-14);
        CHECK(mdiff(RotationOp::from_euler(q).matrix, frame(q)) < 1e-14);
        CHECK(b.orthogonality_error() < 1e-14);
        CHECK(mdiff((b * b.inverse()).matrix, Eigen::Matrix3d::Identity()) < 1e-14);
    }
}

TEST_CASE("rotation operators reject improper matrices") {
    CHECK_THROWS_AS(RotationOp::from_matrix(2.0 * Eigen::Matrix3d::Identity()), ConfigError);
    CHECK_THROWS_AS(RotationOp::from_matrix(Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()), ConfigError);
    Eigen::Matrix3d skew = Eigen::Matrix3d::Identity();
    skew(0, 1) = 1e-9;
    CHECK_THROWS_AS(RotationOp::from_matrix(skew), ConfigError);
    CHECK_NOTHROW(RotationOp::from_matrix(rz(0.4) * ry(1.1)));
}

TEST_CASE("monotone increments") {
    const ExchangeIncrements e = monotone_increments(0.3, 1.7);
    CHECK(e.delta_gamma_a == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(e.delta_gamma_b == doctest::Approx(kTwoPi - 1.4).epsilon(1e-15));

    const ExchangeIncrements r = monotone_increments(1.7, 0.3);
    CHECK(r.delta_gamma_a == doctest::Approx(kTwoPi - 1.4).epsilon(1e-15));
    CHECK(r.delta_gamma_b == doctest::Approx(1.4).epsilon(1e-15));

    const ExchangeIncrements tie = monotone_increments(2.0, 2.0);
    CHECK(tie.delta_gamma_a == 0.0);
    CHECK(tie.delta_gamma_b == kTwoPi);

    testing::Rng rng(302);
    for (int i = 0; i < 200; ++i) {
        const double ga = rng.uniform(-20.0, 20.0), gb = rng.uniform(-20.0, 20.0);
        const ExchangeIncrements x = monotone_increments(ga, gb);
        CHECK(x.delta_gamma_a >= 0.0);
        CHECK(x.delta_gamma_a < kTwoPi);
        CHECK(x.delta_gamma_b > 0.0);
        CHECK(x.delta_gamma_a + x.delta_gamma_b == doctest::Approx(kTwoPi).epsilon(1e-14));
        // a lands on b modulo a full turn
        const double k = (ga + x.delta_gamma_a - gb) / kTwoPi;
        CHECK(std::abs(k - std::round(k)) < 1e-12);
    }
}

TEST_CASE("exchange rotations map each frame onto the other") {
    testing::Rng rng(303);
    for (int i = 0; i < 100; ++i) {
        const EulerAngles a = rng.angles(), b = rng.angles();
        const ExchangeRotations x = exchange_rotations(a, b);
        CHECK(mdiff(x.a_to_b.matrix * frame(a), frame(b)) < 1e-13);
        CHECK(mdiff(x.b_to_a.matrix * frame(b), frame(a)) < 1e-13);
        CHECK(mdiff(x.composite().matrix, Eigen::Matrix3d::Identity()) < 1e-13);
        CHECK(x.a_to_b.orthogonality_error() < 1e-13);
        CHECK(x.a_to_b.determinant() == doctest::Approx(1.0).epsilon(1e-13));
    }
    const EulerAngles q{0.4, 1.2, 2.2};
    const ExchangeRotations same = exchange_rotations(q, q);
    CHECK(mdiff(same.a_to_b.matrix, Eigen::Matrix3d::Identity()) < 1e-14);
    CHECK(mdiff(same.b_to_a.matrix, Eigen::Matrix3d::Identity()) < 1e-14);
}

TEST_CASE("monotone paths") {
    const ExchangePath p = monotone_exchange_path(0.3, 1.7, 64);
    REQUIRE(p.gamma_a.size() == 64);
    CHECK(p.gamma_a.front() == doctest::Approx(0.3));
    CHECK(p.gamma_a.back() == doctest::Approx(1.7));
    CHECK(p.gamma_b.back() == doctest::Approx(0.3 + kTwoPi));
    const PathAudit au = audit_path(p);
    CHECK(au.monotone);
    CHECK(au.min_step >= 0.0);
    CHECK(au.integrated_a == doctest::Approx(1.4).epsilon(1e-13));
    CHECK(au.integrated_b == doctest::Approx(kTwoPi - 1.4).epsilon(1e-13));
    CHECK(au.sum_error < 1e-13);

    CHECK_THROWS_AS(monotone_exchange_path(0.1, 0.2, 1), ConfigError);

    ExchangePath bad = p;
    bad.gamma_a[10] = bad.gamma_a[9] - 0.1;
    CHECK_FALSE(audit_path(bad).monotone);
    CHECK_THROWS_AS(exchange_phase(SpinLabel(1), bad), InvalidPathError);

    ExchangePath short_turn = p;
    short_turn.delta_gamma_b -= 0.5;
    for (auto& g : short_turn.gamma_b) g = std::min(g, short_turn.gamma_b.front() + short_turn.delta_gamma_b);
    CHECK_THROWS_AS(exchange_phase(SpinLabel(1), short_turn), InvalidPathError);
}

TEST_CASE("exchange phase is (-1)^{2s}, independent of the frames") {
    testing::Rng rng(304);
    for (int two_s = 0; two_s <= 6; ++two_s) {
        const SpinLabel s(two_s);
        const Complex expect = double(two_s % 2 ? -1 : 1);
        for (int i = 0; i < 100; ++i) {
            const ExchangePath p = monotone_exchange_path(rng.angles(), rng.angles(), 16);
            CHECK(exchange_phase(s, p) == expect);
        }
        CHECK(exchange_phase(s, monotone_exchange_path(1.0, 1.0)) == expect);
    }
}

TEST_CASE("permutation records") {
    testing::Rng rng(305);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::vector<int> p = rng.permutation(n);
            const PermutationRecord c = PermutationRecord::from_cycles(p);
            const PermutationRecord a = PermutationRecord::from_adjacent(p);
            CHECK(c.compose() == p);
            CHECK(a.compose() == p);
            CHECK(c.k_p == static_cast<int>(c.transpositions.size()));
            CHECK(a.k_p == static_cast<int>(a.transpositions.size()));
            CHECK(c.parity == permutation_sign(p));
            CHECK(a.parity == permutation_sign(p));
            CHECK((c.k_p - a.k_p) % 2 == 0);
            int inversions = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
            CHECK(a.k_p == inversions);
            // the statistics sign does not depend on the decomposition
            for (int two_s = 0; two_s <= 3; ++two_s) CHECK(statistics_sign(SpinLabel(two_s), c) == statistics_sign(SpinLabel(two_s), a));
        }
    }
    CHECK_THROWS_AS(permutation_sign({0, 0, 2}), ConfigError);
    CHECK_THROWS_AS(permutation_sign({0, 3}), ConfigError);
}

TEST_CASE("action increments") {
    const PhysicalParameters p(1.0, 1.0, 1.0);
    const SpinLabel half(1);
    const ActionIncrement id = permutation_action_increment(half, PermutationRecord::from_cycles({0, 1, 2}), p);
    CHECK(id.delta_S == 0.0);
    CHECK(id.phase == 1);
    const ActionIncrement swap = permutation_action_increment(half, PermutationRecord::from_cycles({1, 0}), p);
    CHECK(swap.delta_S == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(swap.phase == -1);
    const ActionIncrement cyc = permutation_action_increment(half, PermutationRecord::from_cycles({1, 2, 0}), p);
    CHECK(cyc.delta_S == doctest::Approx(2 * kPi).epsilon(1e-15));
    CHECK(cyc.phase == 1);
    const ActionIncrement big =
        permutation_action_increment(SpinLabel(3), PermutationRecord::from_cycles({1, 0}), PhysicalParameters(1.0, 1.0, 0.5));
    CHECK(big.delta_S == doctest::Approx(2 * kPi * 1.5 * 0.5).epsilon(1e-15));
    CHECK(big.phase == -1);
    CHECK(permutation_action_increment(SpinLabel(2), PermutationRecord::from_cycles({1, 0}), p).phase == 1);
}

TEST_CASE("symmetrized products match determinant and permanent oracles") {
    testing::Rng rng(306);
    struct Case {
        int two_s, n_modes, n;
    };
    for (const Case c : {Case{1, 1, 2}, Case{1, 2, 3}, Case{3, 1, 3}, Case{2, 1, 3}, Case{0, 3, 3}, Case{2, 2, 4}}) {
        const SpinLabel s(c.two_s);
        const int d = c.n_modes * s.dimension();
        std::vector<Eigen::VectorXcd> states;
        for (int i = 0; i < c.n; ++i) states.push_back(rng.unit_complex(d));
        const NParticleSpinor t = symmetrize(states, s, c.n_modes);
        const std::vector<Complex> oracle = oracle_tensor(states, s.statistics_sign());
        CHECK_FALSE(t.is_zero);
        CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(testing::max_abs_diff(t.tensor, oracle) < 1e-12);

        // the permuted tensor picks up the statistics sign
        std::vector<int> p(static_cast<std::size_t>(c.n));
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[0], p[1]);
        const NParticleSpinor tp = t.permuted(p);
        std::vector<Complex> signed_t = t.tensor;
        for (auto& v : signed_t) v *= double(s.statistics_sign());
        CHECK(testing::max_abs_diff(tp.tensor, signed_t) < 1e-14);

        // serial and parallel agree exactly
        CHECK(symmetrize(states, s, c.n_modes, false).tensor == t.tensor);

        // single entries, unnormalized with the 1/N! prefactor
        double fact = 1;
        for (int i = 2; i <= c.n; ++i) fact *= i;
        std::vector<int> idx(static_cast<std::size_t>(c.n));
        for (int trial = 0; trial < 10; ++trial) {
            for (auto& v : idx) v = rng.integer(0, d - 1);
            Eigen::MatrixXcd m(c.n, c.n);
            for (int a = 0; a < c.n; ++a)
                for (int b = 0; b < c.n; ++b) m(a, b) = states[static_cast<std::size_t>(a)](idx[static_cast<std::size_t>(b)]);
            CHECK(std::abs(symmetrized_entry(states, s, idx) - det_or_perm(m, s.statistics_sign()) / fact) < 1e-14);
        }
    }
}

TEST_CASE("Pauli exclusion and repeated bosons") {
    testing::Rng rng(307);
    const Eigen::VectorXcd phi = rng.unit_complex(4);
    const NParticleSpinor f = symmetrize({phi, phi}, SpinLabel(1), 2);
    CHECK(f.is_zero);
    CHECK(f.raw_norm < 1e-12);
    const NParticleSpinor b = symmetrize({phi, phi}, SpinLabel(0), 4);
    CHECK_FALSE(b.is_zero);
    const NParticleSpinor bos = symmetrize({rng.unit_complex(3), rng.unit_complex(3)}, SpinLabel(2), 1);
    CHECK_FALSE(bos.is_zero);
    const Eigen::VectorXcd chi = rng.unit_complex(3);
    const NParticleSpinor same = symmetrize({chi, chi, chi}, SpinLabel(2), 1);
    CHECK_FALSE(same.is_zero);
    CHECK(same.norm() == doctest::Approx(1.0));

    // linearly dependent fermion states vanish too
    const Eigen::VectorXcd u = rng.unit_complex(4), v = rng.unit_complex(4);
    const NParticleSpinor dep = symmetrize({u, v, (0.3 * u - 1.1 * v).eval()}, SpinLabel(1), 2);
    CHECK(dep.is_zero);
}

TEST_CASE("symmetrize argument checks") {
    testing::Rng rng(308);
    std::vector<Eigen::VectorXcd> seven(7, rng.unit_complex(2));
    CHECK_THROWS_AS(symmetrize(seven, SpinLabel(1), 1), ConfigError);
    CHECK_THROWS_AS(symmetrize({rng.unit_complex(2), rng.unit_complex(3)}, SpinLabel(1), 1), ConfigError);
    CHECK_THROWS_AS(symmetrize({}, SpinLabel(1), 1), ConfigError);
}

TEST_CASE("symmetry projector ranks") {
    auto binom = [](int n, int k) {
        double r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return static_cast<int>(std::lround(r));
    };
    struct Case {
        int two_s, n, d;
    };
    for (const Case c : {Case{1, 2, 2}, Case{1, 3, 4}, Case{2, 2, 3}, Case{0, 3, 2}, Case{3, 2, 4}, Case{2, 3, 3}, Case{1, 4, 4}}) {
        const SpinLabel s(c.two_s);
        const ProjectorCheck pc = symmetry_projector_check(s, c.n, c.d);
        const int expect = s.is_half_integer() ? binom(c.d, c.n) : binom(c.d + c.n - 1, c.n);
        CHECK(pc.expected_rank == expect);
        CHECK(pc.rank == expect);
        CHECK(pc.idempotency_error < 1e-12);
        CHECK(pc.mixed_leakage < 1e-12);
        CHECK(pc.pass);
    }
}

TEST_CASE("action symmetry of the N-particle wavefunction") {
    struct Case {
        int two_s, n, trials;
    };
    for (const Case c : {Case{1, 2, 10}, Case{2, 3, 10}, Case{3, 4, 20}, Case{0, 3, 10}}) {
        const ActionSymmetryReport r = verify_action_symmetry(SpinLabel(c.two_s), c.n, c.trials, 11);
        CHECK(r.pass);
        CHECK(r.trials.size() == static_cast<std::size_t>(c.trials));
        for (const auto& t : r.trials) {
            CHECK(t.angular_phase * t.spatial_phase == 1);
            CHECK(std::abs(t.transported_ratio - 1.0) < 1e-10);
        }
    }
    // the opposite sign rule must be caught whenever an odd permutation is drawn
    for (const Case c : {Case{1, 2, 10}, Case{2, 3, 10}}) {
        const ActionSymmetryReport r = verify_action_symmetry(SpinLabel(c.two_s), c.n, c.trials, 11, true);
        CHECK_FALSE(r.pass);
    }
}

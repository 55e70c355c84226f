#include "spinframe/exchange.hpp"

#include "spinframe/error.hpp"
#include "spinframe/kernels.hpp"
#include "spinframe/wigner.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace spinframe {

RotationOp RotationOp::from_matrix(const Eigen::Matrix3d& m) {
    RotationOp r;
    r.matrix = m;
    if (r.orthogonality_error() > 1e-12 || std::abs(r.determinant() - 1.0) > 1e-12) {
        throw ConfigError("matrix is not a proper rotation");
    }
    return r;
}

RotationOp RotationOp::from_euler(const EulerAngles& q) {
    RotationOp r;
    r.matrix = euler_matrix(q);
    r.euler = q;
    return r;
}

double RotationOp::orthogonality_error() const {
    return (matrix * matrix.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

RotationOp RotationOp::operator*(const RotationOp& other) const {
    RotationOp r;
    r.matrix = matrix * other.matrix;
    return r;
}

RotationOp RotationOp::inverse() const {
    RotationOp r;
    r.matrix = matrix.transpose();
    return r;
}

RotationOp boost(double alpha, double beta) { return RotationOp::from_euler({alpha, beta, 0.0}); }

RotationOp rotation_z(double gamma) { return RotationOp::from_euler({0.0, 0.0, gamma}); }

ExchangeIncrements monotone_increments(double gamma_a, double gamma_b) {
    double d = std::fmod(gamma_b - gamma_a, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    if (d >= kTwoPi) d = 0.0;
    return {d, kTwoPi - d};
}

ExchangeRotations exchange_rotations(const EulerAngles& a, const EulerAngles& b) {
    ExchangeRotations out;
    out.increments = monotone_increments(a.gamma, b.gamma);
    const RotationOp ba = boost(a.alpha, a.beta), bb = boost(b.alpha, b.beta);
    out.a_to_b = bb * rotation_z(out.increments.delta_gamma_a) * ba.inverse();
    out.b_to_a = ba * rotation_z(out.increments.delta_gamma_b) * bb.inverse();
    return out;
}

ExchangePath monotone_exchange_path(double gamma_a, double gamma_b, int samples) {
    if (samples < 2) throw ConfigError("exchange path needs at least 2 samples");
    ExchangePath path;
    path.frame_a.gamma = gamma_a;
    path.frame_b.gamma = gamma_b;
    const ExchangeIncrements inc = monotone_increments(gamma_a, gamma_b);
    path.delta_gamma_a = inc.delta_gamma_a;
    path.delta_gamma_b = inc.delta_gamma_b;
    path.gamma_a.resize(static_cast<std::size_t>(samples));
    path.gamma_b.resize(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        path.gamma_a[static_cast<std::size_t>(i)] = gamma_a + t * inc.delta_gamma_a;
        path.gamma_b[static_cast<std::size_t>(i)] = gamma_b + t * inc.delta_gamma_b;
    }
    return path;
}

ExchangePath monotone_exchange_path(const EulerAngles& frame_a, const EulerAngles& frame_b, int samples) {
    ExchangePath path = monotone_exchange_path(frame_a.gamma, frame_b.gamma, samples);
    path.frame_a = frame_a;
    path.frame_b = frame_b;
    return path;
}

PathAudit audit_path(const ExchangePath& path) {
    PathAudit audit;
    audit.min_step = std::numeric_limits<double>::infinity();
    auto walk = [&](const std::vector<double>& g, double& integrated) {
        for (std::size_t i = 1; i < g.size(); ++i) {
            const double step = g[i] - g[i - 1];
            audit.min_step = std::min(audit.min_step, step);
            if (step < 0.0) audit.monotone = false;
            integrated += step;
        }
    };
    walk(path.gamma_a, audit.integrated_a);
    walk(path.gamma_b, audit.integrated_b);
    audit.sum_error = std::abs(path.delta_gamma_a + path.delta_gamma_b - kTwoPi);
    return audit;
}

Complex exchange_phase(SpinLabel spin, const ExchangePath& path) {
    const PathAudit audit = audit_path(path);
    if (!audit.monotone) throw InvalidPathError("exchange path violates d gamma / dt >= 0");
    if (path.delta_gamma_a < 0.0 || path.delta_gamma_b < 0.0) throw InvalidPathError("negative gamma increment");
    const double turns = (path.delta_gamma_a + path.delta_gamma_b) / kTwoPi;
    const double winding = std::round(turns);
    if (std::abs(turns - winding) > 1e-12) {
        throw InvalidPathError("gamma increments do not close to whole turns");
    }
    // e^{i s 2 pi W} = (-1)^{2s W}
    const long w = static_cast<long>(winding);
    const bool odd = (static_cast<long>(spin.two_s()) * w) % 2 != 0;
    return {odd ? -1.0 : 1.0, 0.0};
}

namespace {

void check_permutation(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) {
            throw ConfigError("not a permutation");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

std::vector<int> identity_permutation(std::size_t n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p = identity_permutation(static_cast<std::size_t>(n));
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int sign_rule(SpinLabel spin, int k_p, bool flip) {
    const bool odd = (spin.two_s() * k_p) % 2 != 0;
    const int s = odd ? -1 : 1;
    return flip ? s * (k_p % 2 == 0 ? 1 : -1) : s;
}

Complex entry_with_rule(const std::vector<Eigen::VectorXcd>& states, SpinLabel spin, const std::vector<int>& idx,
                        bool flip) {
    const int n = static_cast<int>(states.size());
    Complex acc{0.0, 0.0};
    std::vector<int> p = identity_permutation(static_cast<std::size_t>(n));
    double count = 0.0;
    do {
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            prod *= states[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])](idx[static_cast<std::size_t>(i)]);
        }
        acc += static_cast<double>(sign_rule(spin, PermutationRecord::from_cycles(p).k_p, flip)) * prod;
        count += 1.0;
    } while (std::next_permutation(p.begin(), p.end()));
    return acc / count;
}

}  // namespace

PermutationRecord PermutationRecord::from_cycles(const std::vector<int>& p) {
    check_permutation(p);
    PermutationRecord rec;
    rec.p = p;
    std::vector<int> arr = identity_permutation(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (arr[i] == p[i]) continue;
        std::size_t j = i + 1;
        while (arr[j] != p[i]) ++j;
        std::swap(arr[i], arr[j]);
        rec.transpositions.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    rec.k_p = static_cast<int>(rec.transpositions.size());
    rec.parity = rec.k_p % 2 == 0 ? 1 : -1;
    return rec;
}

PermutationRecord PermutationRecord::from_adjacent(const std::vector<int>& p) {
    check_permutation(p);
    PermutationRecord rec;
    rec.p = p;
    std::vector<int> arr = identity_permutation(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::size_t j = i;
        while (arr[j] != p[i]) ++j;
        for (; j > i; --j) {
            std::swap(arr[j - 1], arr[j]);
            rec.transpositions.emplace_back(static_cast<int>(j - 1), static_cast<int>(j));
        }
    }
    rec.k_p = static_cast<int>(rec.transpositions.size());
    rec.parity = rec.k_p % 2 == 0 ? 1 : -1;
    return rec;
}

std::vector<int> PermutationRecord::compose() const {
    std::vector<int> arr = identity_permutation(p.size());
    for (const auto& [i, j] : transpositions) std::swap(arr[static_cast<std::size_t>(i)], arr[static_cast<std::size_t>(j)]);
    return arr;
}

int permutation_sign(const std::vector<int>& p) {
    check_permutation(p);
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

int statistics_sign(SpinLabel spin, const PermutationRecord& perm) { return sign_rule(spin, perm.k_p, false); }

ActionIncrement permutation_action_increment(SpinLabel spin, const PermutationRecord& perm,
                                             const PhysicalParameters& params) {
    params.validate();
    ActionIncrement out;
    out.delta_S = kTwoPi * perm.k_p * params.hbar * spin.value();
    out.phase = statistics_sign(spin, perm);
    return out;
}

std::size_t NParticleSpinor::flat(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != n_particles) throw ConfigError("index rank does not match particle count");
    std::size_t f = 0;
    for (int e : idx) {
        if (e < 0 || e >= local_dim()) throw ConfigError("tensor index out of range");
        f = f * static_cast<std::size_t>(local_dim()) + static_cast<std::size_t>(e);
    }
    return f;
}

NParticleSpinor NParticleSpinor::permuted(const std::vector<int>& p) const {
    check_permutation(p);
    if (static_cast<int>(p.size()) != n_particles) throw ConfigError("permutation size does not match particle count");
    NParticleSpinor out = *this;
    const auto d = static_cast<std::size_t>(local_dim());
    std::vector<int> e(static_cast<std::size_t>(n_particles)), ep(e.size());
    for (std::size_t f = 0; f < tensor.size(); ++f) {
        std::size_t rem = f;
        for (int i = n_particles - 1; i >= 0; --i) {
            e[static_cast<std::size_t>(i)] = static_cast<int>(rem % d);
            rem /= d;
        }
        for (std::size_t i = 0; i < e.size(); ++i) ep[i] = e[static_cast<std::size_t>(p[i])];
        out.tensor[f] = tensor[this->flat(ep)];
    }
    return out;
}

double NParticleSpinor::norm() const {
    double s = 0.0;
    for (const Complex& v : tensor) s += std::norm(v);
    return std::sqrt(s);
}

NParticleSpinor symmetrize(const std::vector<Eigen::VectorXcd>& states, SpinLabel spin, int n_modes, bool parallel,
                           double zero_tolerance) {
    const int n = static_cast<int>(states.size());
    if (n < 1 || n > kMaxParticles) {
        throw ConfigError("symmetrize handles 1.." + std::to_string(kMaxParticles) + " particles");
    }
    if (n_modes < 1) throw ConfigError("need at least one spatial mode");
    NParticleSpinor out;
    out.spin = spin;
    out.n_particles = n;
    out.n_modes = n_modes;
    const int d = out.local_dim();
    double scale = 1.0;
    std::vector<std::vector<Complex>> factors;
    for (const auto& s : states) {
        if (s.size() != d) throw ConfigError("single-particle state has wrong dimension");
        factors.emplace_back(s.data(), s.data() + s.size());
        scale *= s.norm();
    }
    const auto perms = all_permutations(n);
    std::vector<int> signs;
    for (const auto& p : perms) signs.push_back(sign_rule(spin, PermutationRecord::from_cycles(p).k_p, false));

    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(d);
    out.tensor.assign(total, Complex{0.0, 0.0});
    if (parallel) {
        kernels::omp::permutation_sum(n, d, factors, perms, signs, out.tensor.data());
    } else {
        kernels::serial::permutation_sum(n, d, factors, perms, signs, out.tensor.data());
    }
    out.raw_norm = out.norm();
    if (!(out.raw_norm > zero_tolerance * scale)) {
        out.is_zero = true;
        return out;
    }
    for (Complex& v : out.tensor) v /= out.raw_norm;
    return out;
}

Complex symmetrized_entry(const std::vector<Eigen::VectorXcd>& states, SpinLabel spin, const std::vector<int>& idx) {
    if (idx.size() != states.size()) throw ConfigError("index rank does not match particle count");
    return entry_with_rule(states, spin, idx, false);
}

ProjectorCheck symmetry_projector_check(SpinLabel spin, int n_particles, int local_dim, std::uint64_t seed) {
    if (n_particles < 1 || n_particles > 4 || local_dim < 1) throw ConfigError("projector check sizes out of range");
    ProjectorCheck out;
    out.n_particles = n_particles;
    out.local_dim = local_dim;
    std::size_t dim = 1;
    for (int i = 0; i < n_particles; ++i) dim *= static_cast<std::size_t>(local_dim);
    const auto ed = static_cast<Eigen::Index>(dim);

    auto perm_matrix = [&](const std::vector<int>& p) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ed, ed);
        std::vector<int> e(static_cast<std::size_t>(n_particles)), ep(e.size());
        for (std::size_t f = 0; f < dim; ++f) {
            std::size_t rem = f;
            for (int i = n_particles - 1; i >= 0; --i) {
                e[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(local_dim));
                rem /= static_cast<std::size_t>(local_dim);
            }
            std::size_t g = 0;
            for (std::size_t i = 0; i < e.size(); ++i) g = g * static_cast<std::size_t>(local_dim) + static_cast<std::size_t>(e[static_cast<std::size_t>(p[i])]);
            m(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(g)) = 1.0;
        }
        return m;
    };

    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(ed, ed);
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(ed, ed), anti = Eigen::MatrixXd::Zero(ed, ed);
    const auto perms = all_permutations(n_particles);
    for (const auto& p : perms) {
        const Eigen::MatrixXd m = perm_matrix(p);
        const int k = PermutationRecord::from_cycles(p).k_p;
        proj += sign_rule(spin, k, false) * m;
        sym += m;
        anti += (k % 2 == 0 ? 1.0 : -1.0) * m;
    }
    const double inv = 1.0 / static_cast<double>(perms.size());
    proj *= inv;
    sym *= inv;
    anti *= inv;

    out.idempotency_error = (proj * proj - proj).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (proj + proj.transpose()));
    out.rank = static_cast<int>((eig.eigenvalues().array() > 0.5).count());

    auto binom = [](int n, int k) {
        if (k < 0 || k > n) return 0;
        long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return static_cast<int>(r);
    };
    out.expected_rank = spin.is_half_integer() ? binom(local_dim, n_particles)
                                               : binom(local_dim + n_particles - 1, n_particles);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(ed);
    for (Eigen::Index i = 0; i < ed; ++i) x(i) = normal(rng);
    const Eigen::VectorXd mixed = x - sym * x - anti * x;
    out.mixed_leakage = mixed.norm() > 1e-12 * x.norm() ? (proj * mixed).norm() / mixed.norm() : 0.0;
    out.pass = out.rank == out.expected_rank && out.idempotency_error < 1e-12 && out.mixed_leakage < 1e-12;
    return out;
}

ActionSymmetryReport verify_action_symmetry(SpinLabel spin, int n_particles, int trials, std::uint64_t seed,
                                            bool wrong_statistics) {
    if (n_particles < 2 || n_particles > kMaxParticles) {
        throw ConfigError("action symmetry check handles 2.." + std::to_string(kMaxParticles) + " particles");
    }
    ActionSymmetryReport rep;
    rep.spin = spin;
    rep.n_particles = n_particles;
    const int n = n_particles;
    const int n_modes = n;
    const int dim_s = spin.dimension();
    const int d = n_modes * dim_s;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const PhysicalParameters params;

    struct Particle {
        int mode;
        EulerAngles q;
    };

    for (int t = 0; t < trials; ++t) {
        std::vector<Eigen::VectorXcd> states;
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXcd v(d);
            for (int k = 0; k < d; ++k) v(k) = Complex(normal(rng), normal(rng));
            states.push_back(v.normalized());
        }

        auto psi_at = [&](const std::vector<Particle>& cfg) {
            std::vector<std::vector<Complex>> single(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(dim_s)));
            for (int i = 0; i < n; ++i) {
                const auto& q = cfg[static_cast<std::size_t>(i)].q;
                const Complex gp = wigner::exact_phase(0.5 * spin.two_s() * q.gamma);
                for (int si = 0; si < dim_s; ++si) {
                    single[static_cast<std::size_t>(i)][static_cast<std::size_t>(si)] =
                        wigner::coefficient_c(spin, spin.two_sigma(si), q.alpha, q.beta) * gp;
                }
            }
            Complex total{0.0, 0.0};
            std::vector<int> sig(static_cast<std::size_t>(n), 0), idx(static_cast<std::size_t>(n));
            while (true) {
                Complex w{1.0, 0.0};
                for (int i = 0; i < n; ++i) {
                    const auto ui = static_cast<std::size_t>(i);
                    idx[ui] = cfg[ui].mode * dim_s + sig[ui];
                    w *= single[ui][static_cast<std::size_t>(sig[ui])];
                }
                total += entry_with_rule(states, spin, idx, wrong_statistics) * w;
                int pos = n - 1;
                while (pos >= 0 && ++sig[static_cast<std::size_t>(pos)] == dim_s) sig[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
            return total;
        };

        std::vector<Particle> cfg;
        Complex before{0.0, 0.0};
        for (int attempt = 0; attempt < 20 && std::abs(before) < 1e-6; ++attempt) {
            cfg.clear();
            std::vector<int> modes = identity_permutation(static_cast<std::size_t>(n));
            std::shuffle(modes.begin(), modes.end(), rng);
            for (int i = 0; i < n; ++i) {
                cfg.push_back({modes[static_cast<std::size_t>(i)],
                               {kTwoPi * unif(rng), std::acos(2.0 * unif(rng) - 1.0), kTwoPi * unif(rng)}});
            }
            before = psi_at(cfg);
        }

        std::vector<int> p = identity_permutation(static_cast<std::size_t>(n));
        std::shuffle(p.begin(), p.end(), rng);
        const PermutationRecord rec = PermutationRecord::from_cycles(p);

        ActionSymmetryTrial trial;
        trial.permutation = p;
        trial.k_p = rec.k_p;
        trial.angular_phase = permutation_action_increment(spin, rec, params).phase;

        // spatial phase: psi(e_p) / psi(e) on a generic index
        std::vector<int> e(static_cast<std::size_t>(n)), ep(e.size());
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i * dim_s + static_cast<int>(rng() % static_cast<std::uint64_t>(dim_s));
        for (std::size_t i = 0; i < e.size(); ++i) ep[i] = e[static_cast<std::size_t>(p[i])];
        const Complex r = entry_with_rule(states, spin, ep, wrong_statistics) / entry_with_rule(states, spin, e, wrong_statistics);
        trial.spatial_phase = r.real() < 0.0 ? -1 : 1;

        // carry the particles through each transposition along monotone gamma paths
        std::vector<Particle> moved = cfg;
        for (const auto& [i, j] : rec.transpositions) {
            Particle& pi = moved[static_cast<std::size_t>(i)];
            Particle& pj = moved[static_cast<std::size_t>(j)];
            const ExchangePath path = monotone_exchange_path(pi.q, pj.q, 16);
            const Particle old_i = pi, old_j = pj;
            pi = {old_j.mode, {old_j.q.alpha, old_j.q.beta, old_i.q.gamma + path.delta_gamma_a}};
            pj = {old_i.mode, {old_i.q.alpha, old_i.q.beta, old_j.q.gamma + path.delta_gamma_b}};
        }
        const Complex after = psi_at(moved);
        trial.transported_ratio = after / before;
        trial.pass = trial.angular_phase * trial.spatial_phase == 1 &&
                     std::abs(trial.transported_ratio - Complex(1.0, 0.0)) < 1e-9;
        rep.trials.push_back(trial);
    }
    rep.pass = std::all_of(rep.trials.begin(), rep.trials.end(), [](const auto& tr) { return tr.pass; });
    return rep;
}

}  // namespace spinframe

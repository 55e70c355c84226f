#pragma once

// Particle exchange under the ratchet constraint d gamma / dt >= 0.
//
// Exchanging frames a and b rotates a onto b and b onto a with
//   R_{a->b} = B(alpha_b, beta_b) R_z(dgamma_a) B^{-1}(alpha_a, beta_a)
// where B(alpha, beta) = R_z(alpha) R_y(beta). With only counter-clockwise
// gamma motion allowed, dgamma_a = (gamma_b - gamma_a) mod 2pi and
// dgamma_b = 2pi - dgamma_a, so the total gamma advance is one full turn and
// the action picks up 2 pi hbar s per transposition.

#include "spinframe/rotation.hpp"
#include "spinframe/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace spinframe {

struct RotationOp {
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();
    std::optional<EulerAngles> euler;

    /// Throws ConfigError unless the matrix is proper orthogonal to 1e-12.
    static RotationOp from_matrix(const Eigen::Matrix3d& m);
    static RotationOp from_euler(const EulerAngles& q);

    double orthogonality_error() const;  // max |R R^T - 1|
    double determinant() const { return matrix.determinant(); }
    RotationOp operator*(const RotationOp& other) const;
    RotationOp inverse() const;
};

RotationOp boost(double alpha, double beta);
RotationOp rotation_z(double gamma);

struct ExchangeIncrements {
    double delta_gamma_a = 0.0;
    double delta_gamma_b = 0.0;
};

/// dgamma_a = (gamma_b - gamma_a) mod 2pi in [0, 2pi); ties give (0, 2pi).
ExchangeIncrements monotone_increments(double gamma_a, double gamma_b);

struct ExchangeRotations {
    RotationOp a_to_b;
    RotationOp b_to_a;
    ExchangeIncrements increments;

    /// R_{a->b} R_{b->a} = B_b R_z(dgamma_a + dgamma_b) B_b^{-1}.
    RotationOp composite() const { return a_to_b * b_to_a; }
};

ExchangeRotations exchange_rotations(const EulerAngles& frame_a, const EulerAngles& frame_b);

struct ExchangePath {
    int particle_a = 0;
    int particle_b = 1;
    EulerAngles frame_a, frame_b;
    std::vector<double> gamma_a;  // unreduced samples along the exchange
    std::vector<double> gamma_b;
    double delta_gamma_a = 0.0;
    double delta_gamma_b = 0.0;
};

/// Uniform samples of both gamma trajectories; samples >= 2 (ConfigError otherwise).
ExchangePath monotone_exchange_path(double gamma_a, double gamma_b, int samples = 128);
ExchangePath monotone_exchange_path(const EulerAngles& frame_a, const EulerAngles& frame_b, int samples = 128);

struct PathAudit {
    bool monotone = true;
    double min_step = 0.0;        // smallest sampled gamma increment over both particles
    double integrated_a = 0.0;    // sum of sampled increments
    double integrated_b = 0.0;
    double sum_error = 0.0;       // |dgamma_a + dgamma_b - 2pi|
};

PathAudit audit_path(const ExchangePath& path);

/// exp(i s (dgamma_a + dgamma_b)) from the integer winding of the path:
/// exactly +1 or -1. Throws InvalidPathError if the path is not monotone or
/// its increments do not sum to a whole number of turns.
Complex exchange_phase(SpinLabel spin, const ExchangePath& path);

/// A permutation i -> p[i] with a transposition decomposition such that
/// swapping positions in order, starting from the identity, yields p.
struct PermutationRecord {
    std::vector<int> p;
    std::vector<std::pair<int, int>> transpositions;
    int k_p = 0;
    int parity = 1;

    /// Cycle-based decomposition, k_p = N - (number of cycles).
    static PermutationRecord from_cycles(const std::vector<int>& p);
    /// Adjacent transpositions only, k_p = number of inversions.
    static PermutationRecord from_adjacent(const std::vector<int>& p);

    std::vector<int> compose() const;
};

/// Sign of a permutation by inversion count; throws ConfigError if p is not a permutation.
int permutation_sign(const std::vector<int>& p);

struct ActionIncrement {
    double delta_S = 0.0;  // 2 pi k_p hbar s
    int phase = 1;         // (-1)^{2s k_p}
};

ActionIncrement permutation_action_increment(SpinLabel spin, const PermutationRecord& perm,
                                             const PhysicalParameters& params);

/// (-1)^{2s k_p}
int statistics_sign(SpinLabel spin, const PermutationRecord& perm);

/// N-particle spinor tensor over local labels (spatial mode, spin projection),
/// local index = mode * (2s+1) + projection index; particle 0 is the most
/// significant tensor index.
struct NParticleSpinor {
    SpinLabel spin;
    int n_particles = 0;
    int n_modes = 0;
    std::vector<Complex> tensor;
    double raw_norm = 0.0;  // norm before normalization
    bool is_zero = false;

    int local_dim() const { return n_modes * spin.dimension(); }
    std::size_t flat(const std::vector<int>& idx) const;
    Complex at(const std::vector<int>& idx) const { return tensor[flat(idx)]; }
    /// (P psi)(e_0, ..., e_{N-1}) = psi(e_{p[0]}, ..., e_{p[N-1]})
    NParticleSpinor permuted(const std::vector<int>& p) const;
    double norm() const;
};

inline constexpr int kMaxParticles = 6;

/// psi = (1/N!) sum_p (-1)^{2s k_p} prod_i phi_{p(i)}(e_i), then normalized.
/// A tensor with raw norm below zero_tolerance (relative to the product of the
/// input norms) is returned unnormalized and flagged is_zero.
NParticleSpinor symmetrize(const std::vector<Eigen::VectorXcd>& states, SpinLabel spin, int n_modes,
                           bool parallel = true, double zero_tolerance = 1e-12);

/// Single entry of the symmetrized (unnormalized) product, without building the tensor.
Complex symmetrized_entry(const std::vector<Eigen::VectorXcd>& states, SpinLabel spin, const std::vector<int>& idx);

struct ProjectorCheck {
    int n_particles = 0;
    int local_dim = 0;
    int rank = 0;
    int expected_rank = 0;         // C(d, N) or C(d+N-1, N)
    double idempotency_error = 0;  // max |P^2 - P|
    double mixed_leakage = 0;      // |P v| / |v| for v in the mixed-symmetry subspace
    bool pass = false;
};

/// Builds P = (1/N!) sum_p (-1)^{2s k_p} P_p on (C^d)^{(x)N} and checks it is the
/// projector onto the totally (anti)symmetric subspace only.
ProjectorCheck symmetry_projector_check(SpinLabel spin, int n_particles, int local_dim, std::uint64_t seed = 7);

struct ActionSymmetryTrial {
    std::vector<int> permutation;
    int k_p = 0;
    int angular_phase = 1;     // from the action increment
    int spatial_phase = 1;     // measured from the symmetrized tensor
    Complex transported_ratio;  // Psi after the monotone exchanges / Psi before
    bool pass = false;
};

struct ActionSymmetryReport {
    SpinLabel spin;
    int n_particles = 0;
    std::vector<ActionSymmetryTrial> trials;
    bool pass = false;
};

/// For random permutations: the angular phase (-1)^{2s k_p} must cancel the
/// spatial exchange phase of the symmetrized spinor, and the N-particle scalar
/// wavefunction carried along monotone exchange paths must return to itself.
/// With wrong_statistics the symmetrizer uses the opposite sign rule (control).
ActionSymmetryReport verify_action_symmetry(SpinLabel spin, int n_particles, int trials, std::uint64_t seed = 1,
                                            bool wrong_statistics = false);

}  // namespace spinframe

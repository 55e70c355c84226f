#pragma once

// Grid-wide kernels in two builds: serial:: is the reference, omp:: splits the
// same per-line work across threads. Every output element is produced by the
// same arithmetic in the same order in both, so results agree bitwise.

#include "spinframe/types.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace spinframe::kernels {

enum class BlockOp { Laplacian, DAlpha, DGamma, SinBetaDBeta };

/// Precomputed tables for the Fourier x Gauss-node spectral transform.
/// Built by SpectralOperators; plain data so kernels can be benchmarked alone.
struct SpectralPlan {
    int na = 0, nb = 0, ng = 0;
    double inv_a2 = 1.0;

    std::vector<double> x;                     // cos(beta) nodes
    std::vector<Complex> fwd_gamma, inv_gamma;  // ng x ng, row-major
    std::vector<Complex> fwd_alpha, inv_alpha;  // na x na, row-major
    std::vector<Complex> twist;                 // e^{-i alpha/2} per alpha node

    std::vector<int> two_k;        // per gamma mode
    std::vector<bool> k_valid;     // false at the Nyquist mode
    std::vector<bool> k_half;      // k half-integer: alpha lines are twisted
    std::vector<int> two_m_int;    // 2 * integer alpha frequency per alpha mode
    std::vector<bool> m_valid;

    // Per parity class e = 2*(|m+k| mod 2) + (|m-k| mod 2), nb x nb.
    std::array<Eigen::MatrixXd, 4> lb_radial;  // (1-x^2) D2 - 2x D1
    std::array<Eigen::MatrixXd, 4> sin_d_beta;  // -(1-x^2) D1

    std::size_t size() const {
        return static_cast<std::size_t>(na) * static_cast<std::size_t>(nb) * static_cast<std::size_t>(ng);
    }
    int two_m(int mode_a, int mode_g) const {
        return two_m_int[static_cast<std::size_t>(mode_a)] + (k_half[static_cast<std::size_t>(mode_g)] ? 1 : 0);
    }
    int parity_class(int two_m, int two_k) const {
        const int e1 = std::abs((two_m + two_k) / 2) % 2;
        const int e2 = std::abs((two_m - two_k) / 2) % 2;
        return 2 * e1 + e2;
    }
};

/// Wigner functions tabulated on the beta nodes for an expansion
/// sum_{j,m} a_{jm} e^{i m alpha} d^j_{m k}(beta) e^{i k gamma} with fixed k.
struct ExpansionTable {
    int two_k = 0;
    std::vector<int> two_j, two_m;  // one entry per mode
    std::vector<double> d;          // [mode * nb + ib]
    std::vector<double> projection_scale;  // (2j+1)/V per mode
};

struct GridView {
    int na, nb, ng;
    const double* alpha;
    const double* gamma;
    const double* weights;
};

namespace serial {
void spectral_apply(const SpectralPlan& plan, const Complex* in, const std::vector<BlockOp>& ops,
                    const std::vector<Complex*>& outs);
void sample_expansion(const ExpansionTable& table, const GridView& grid, const Complex* coeffs,
                      Complex* out);
void project_expansion(const ExpansionTable& table, const GridView& grid, const Complex* field,
                       Complex* coeffs);
/// Signed sum over permutations: out[e] = (1/N!) sum_p sign[p] prod_i factors[i][idx_p(e, i)].
void permutation_sum(int n_particles, int local_dim, const std::vector<std::vector<Complex>>& factors,
                     const std::vector<std::vector<int>>& perms, const std::vector<int>& signs,
                     Complex* out);
}  // namespace serial

namespace omp {
void spectral_apply(const SpectralPlan& plan, const Complex* in, const std::vector<BlockOp>& ops,
                    const std::vector<Complex*>& outs);
void sample_expansion(const ExpansionTable& table, const GridView& grid, const Complex* coeffs,
                      Complex* out);
void project_expansion(const ExpansionTable& table, const GridView& grid, const Complex* field,
                       Complex* coeffs);
void permutation_sum(int n_particles, int local_dim, const std::vector<std::vector<Complex>>& factors,
                     const std::vector<std::vector<int>>& perms, const std::vector<int>& signs,
                     Complex* out);
}  // namespace omp

}  // namespace spinframe::kernels

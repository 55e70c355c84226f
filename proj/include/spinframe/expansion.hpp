#pragma once

// Truncated expansions in conjugate Wigner functions with a fixed right index k:
//   f(alpha, beta, gamma) = sum_{j,m} a_{jm} conj(D^j_{m k}(alpha, beta, gamma))
//                         = sum_{j,m} a_{jm} e^{i m alpha} d^j_{m k}(beta) e^{i k gamma}
// For k = s this is the function space of scalar wavefunctions of spin s.

#include "spinframe/grid.hpp"
#include "spinframe/kernels.hpp"

#include <Eigen/Dense>

namespace spinframe {

struct ModeIndex {
    int two_j;
    int two_m;
};

class WignerBasis {
public:
    /// Modes j = |k|, |k|+1, ..., j_max with every m. two_j_max must have the parity of two_k.
    WignerBasis(GridPtr grid, int two_k, int two_j_max, bool parallel = true);

    /// Largest 2j with the parity of two_k that the grid integrates exactly against
    /// every other mode of the basis (n_alpha > 2j, n_beta > j), capped at SpinLabel::kMaxTwoS.
    static int max_resolved_two_j(const So3Grid& grid, int two_k);

    const So3Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int two_k() const { return table_.two_k; }
    int two_j_max() const { return two_j_max_; }
    std::size_t size() const { return modes_.size(); }
    const std::vector<ModeIndex>& modes() const { return modes_; }
    /// Position of (j, m) in the coefficient vector; throws InvalidProjectionError.
    std::size_t index_of(int two_j, int two_m) const;

    ComplexField sample(const Eigen::VectorXcd& coeffs) const;
    Eigen::VectorXcd project(const ComplexField& field) const;
    /// Evaluate at an arbitrary point; angles may be unreduced (SU(2) cover).
    Complex evaluate(const Eigen::VectorXcd& coeffs, const EulerAngles& angles) const;

    /// Haar integral of |conj D^j_{mk}|^2 over the grid's chart: V / (2j+1).
    double mode_norm(int two_j) const;

    const kernels::ExpansionTable& table() const { return table_; }

private:
    GridPtr grid_;
    int two_j_max_;
    bool parallel_;
    std::vector<ModeIndex> modes_;
    kernels::ExpansionTable table_;
};

}  // namespace spinframe

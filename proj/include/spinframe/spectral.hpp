#pragma once

// Spectral derivative operators on So3Grid.
//
// Fields are expanded in Fourier modes e^{i m alpha} e^{i k gamma}; half-integer
// k (4pi chart) pairs with half-integer m, handled by twisting alpha lines by
// e^{-i alpha/2}. Each (m, k) block is a function of x = cos(beta) equal to
// (1+x)^{|m+k|/2} (1-x)^{|m-k|/2} times a polynomial for Wigner harmonics; the
// beta derivative strips the odd part of those powers and differentiates the
// rest on the Gauss nodes, so band-limited fields are differentiated exactly.

#include "spinframe/grid.hpp"
#include "spinframe/kernels.hpp"

namespace spinframe {

class SpectralOperators {
public:
    static constexpr int kMinResolution = 8;

    /// Throws ResolutionError if any grid size is below kMinResolution.
    explicit SpectralOperators(GridPtr grid, bool parallel = true);

    const So3Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const kernels::SpectralPlan& plan() const { return plan_; }
    bool parallel() const { return parallel_; }

    /// One forward transform, one inverse per requested operator.
    std::vector<ComplexField> apply(const ComplexField& field, const std::vector<kernels::BlockOp>& ops) const;

    /// (1/sqrt g) d_i (sqrt g g^{ij} d_j f) on the SO(3) block, including the 1/a^2.
    ComplexField laplace_beltrami(const ComplexField& field) const;
    ComplexField d_alpha(const ComplexField& field) const;
    ComplexField d_gamma(const ComplexField& field) const;
    ComplexField sin_beta_d_beta(const ComplexField& field) const;

    struct Gradient {
        ComplexField d_alpha;
        ComplexField sin_beta_d_beta;
        ComplexField d_gamma;
    };
    Gradient gradient(const ComplexField& field) const;

private:
    void check(const ComplexField& field) const;

    GridPtr grid_;
    bool parallel_;
    kernels::SpectralPlan plan_;
};

/// Barycentric differentiation matrix on arbitrary distinct nodes.
Eigen::MatrixXd differentiation_matrix(const std::vector<double>& nodes);

}  // namespace spinframe

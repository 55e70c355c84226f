#include "spinframe/expansion.hpp"

#include "spinframe/error.hpp"
#include "spinframe/wigner.hpp"

#include <string>

namespace spinframe {

int WignerBasis::max_resolved_two_j(const So3Grid& grid, int two_k) {
    int best = -1;
    for (int two_j = std::abs(two_k); two_j <= SpinLabel::kMaxTwoS; two_j += 2) {
        if (grid.n_alpha() > two_j && 2 * grid.n_beta() > two_j + 2) best = two_j;
    }
    if (best < 0) throw ResolutionError("grid too coarse for any mode with 2k=" + std::to_string(two_k));
    return best;
}

WignerBasis::WignerBasis(GridPtr grid, int two_k, int two_j_max, bool parallel)
    : grid_(std::move(grid)), two_j_max_(two_j_max), parallel_(parallel) {
    if (!grid_) throw GridMismatchError("null grid");
    if (two_j_max < std::abs(two_k) || (two_j_max - two_k) % 2 != 0 || two_j_max > SpinLabel::kMaxTwoS) {
        throw InvalidProjectionError("bad expansion range 2j_max=" + std::to_string(two_j_max) +
                                     " for 2k=" + std::to_string(two_k));
    }
    if (two_k % 2 != 0 && grid_->gamma_period() != GammaPeriod::FourPi) {
        throw PeriodMismatchError("half-integer k needs the 4pi gamma chart");
    }
    table_.two_k = two_k;
    const auto nb = static_cast<std::size_t>(grid_->n_beta());
    for (int two_j = std::abs(two_k); two_j <= two_j_max; two_j += 2) {
        for (int two_m = two_j; two_m >= -two_j; two_m -= 2) {
            modes_.push_back({two_j, two_m});
            table_.two_j.push_back(two_j);
            table_.two_m.push_back(two_m);
            table_.projection_scale.push_back((two_j + 1.0) / grid_->haar_volume());
            for (std::size_t ib = 0; ib < nb; ++ib) {
                table_.d.push_back(wigner::small_d_element(two_j, two_m, two_k, grid_->beta(static_cast<int>(ib))));
            }
        }
    }
}

std::size_t WignerBasis::index_of(int two_j, int two_m) const {
    for (std::size_t q = 0; q < modes_.size(); ++q) {
        if (modes_[q].two_j == two_j && modes_[q].two_m == two_m) return q;
    }
    throw InvalidProjectionError("mode (2j=" + std::to_string(two_j) + ", 2m=" + std::to_string(two_m) +
                                 ") not in basis");
}

namespace {
kernels::GridView view(const So3Grid& g) {
    return {g.n_alpha(), g.n_beta(), g.n_gamma(), g.alphas().data(), g.gammas().data(), g.weights().data()};
}
}  // namespace

ComplexField WignerBasis::sample(const Eigen::VectorXcd& coeffs) const {
    if (static_cast<std::size_t>(coeffs.size()) != modes_.size()) {
        throw GridMismatchError("coefficient count does not match basis");
    }
    ComplexField out(grid_->size());
    if (parallel_) {
        kernels::omp::sample_expansion(table_, view(*grid_), coeffs.data(), out.data());
    } else {
        kernels::serial::sample_expansion(table_, view(*grid_), coeffs.data(), out.data());
    }
    return out;
}

Eigen::VectorXcd WignerBasis::project(const ComplexField& field) const {
    if (field.size() != grid_->size()) throw GridMismatchError("field size does not match basis grid");
    Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(modes_.size()));
    if (parallel_) {
        kernels::omp::project_expansion(table_, view(*grid_), field.data(), coeffs.data());
    } else {
        kernels::serial::project_expansion(table_, view(*grid_), field.data(), coeffs.data());
    }
    return coeffs;
}

Complex WignerBasis::evaluate(const Eigen::VectorXcd& coeffs, const EulerAngles& q) const {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        sum += coeffs(static_cast<Eigen::Index>(i)) *
               std::conj(wigner::big_D_element(modes_[i].two_j, modes_[i].two_m, table_.two_k, q));
    }
    return sum;
}

double WignerBasis::mode_norm(int two_j) const { return grid_->haar_volume() / (two_j + 1.0); }

}  // namespace spinframe

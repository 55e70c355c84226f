#include "spinframe/spectral.hpp"

#include "spinframe/error.hpp"
#include "spinframe/wigner.hpp"

namespace spinframe {

namespace {

int signed_frequency(int n, int size) { return n <= (size - 1) / 2 ? n : n - size; }

bool is_nyquist(int n, int size) { return size % 2 == 0 && n == size / 2; }

void dft_tables(int size, std::vector<Complex>& fwd, std::vector<Complex>& inv) {
    const auto s = static_cast<std::size_t>(size);
    fwd.resize(s * s);
    inv.resize(s * s);
    for (int n = 0; n < size; ++n) {
        for (int j = 0; j < size; ++j) {
            const double angle = kTwoPi * static_cast<double>((n * j) % size) / size;
            const Complex ph = wigner::exact_phase(angle);
            fwd[static_cast<std::size_t>(n) * s + static_cast<std::size_t>(j)] = std::conj(ph) / static_cast<double>(size);
            inv[static_cast<std::size_t>(j) * s + static_cast<std::size_t>(n)] = ph;
        }
    }
}

}  // namespace

Eigen::MatrixXd differentiation_matrix(const std::vector<double>& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    // Barycentric weights in log form to stay finite for large n.
    Eigen::VectorXd log_abs(n), sign(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double l = 0.0, sg = 1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == j) continue;
            const double diff = nodes[static_cast<std::size_t>(j)] - nodes[static_cast<std::size_t>(k)];
            l -= std::log(std::abs(diff));
            if (diff < 0.0) sg = -sg;
        }
        log_abs(j) = l;
        sign(j) = sg;
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double diag = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double ratio = sign(j) * sign(i) * std::exp(log_abs(j) - log_abs(i));
            d(i, j) = ratio / (nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)]);
            diag -= d(i, j);
        }
        d(i, i) = diag;
    }
    return d;
}

SpectralOperators::SpectralOperators(GridPtr grid, bool parallel) : grid_(std::move(grid)), parallel_(parallel) {
    if (!grid_) throw GridMismatchError("null grid");
    const So3Grid& g = *grid_;
    if (g.n_alpha() < kMinResolution || g.n_beta() < kMinResolution || g.n_gamma() < kMinResolution) {
        throw ResolutionError("spectral operators need at least " + std::to_string(kMinResolution) +
                              " nodes per angle");
    }
    auto& p = plan_;
    p.na = g.n_alpha();
    p.nb = g.n_beta();
    p.ng = g.n_gamma();
    p.inv_a2 = 1.0 / (g.giration_radius() * g.giration_radius());
    p.x = g.cos_beta_nodes();

    dft_tables(p.ng, p.fwd_gamma, p.inv_gamma);
    dft_tables(p.na, p.fwd_alpha, p.inv_alpha);
    p.twist.resize(static_cast<std::size_t>(p.na));
    for (int a = 0; a < p.na; ++a) p.twist[static_cast<std::size_t>(a)] = wigner::exact_phase(-0.5 * g.alpha(a));

    const bool four_pi = g.gamma_period() == GammaPeriod::FourPi;
    for (int n = 0; n < p.ng; ++n) {
        const int sn = signed_frequency(n, p.ng);
        const int two_k = four_pi ? sn : 2 * sn;
        p.two_k.push_back(two_k);
        p.k_valid.push_back(!is_nyquist(n, p.ng));
        p.k_half.push_back(two_k % 2 != 0);
    }
    for (int n = 0; n < p.na; ++n) {
        p.two_m_int.push_back(2 * signed_frequency(n, p.na));
        p.m_valid.push_back(!is_nyquist(n, p.na));
    }

    const auto nb = static_cast<Eigen::Index>(p.nb);
    const Eigen::MatrixXd d = differentiation_matrix(p.x);
    const Eigen::MatrixXd dd = d * d;
    Eigen::VectorXd x(nb);
    for (Eigen::Index i = 0; i < nb; ++i) x(i) = p.x[static_cast<std::size_t>(i)];
    const Eigen::VectorXd one_minus_x2 = (1.0 - x.array().square()).matrix();

    for (int e1 = 0; e1 < 2; ++e1) {
        for (int e2 = 0; e2 < 2; ++e2) {
            Eigen::VectorXd w(nb), l1(nb), l2(nb);
            for (Eigen::Index i = 0; i < nb; ++i) {
                const double xp = 1.0 + x(i), xm = 1.0 - x(i);
                w(i) = std::pow(xp, 0.5 * e1) * std::pow(xm, 0.5 * e2);
                l1(i) = 0.5 * e1 / xp - 0.5 * e2 / xm;
                l2(i) = -0.5 * e1 / (xp * xp) - 0.5 * e2 / (xm * xm);
            }
            const Eigen::VectorXd inv_w = w.cwiseInverse();
            const Eigen::MatrixXd dw = w.asDiagonal() * d * inv_w.asDiagonal();
            const Eigen::MatrixXd ddw = w.asDiagonal() * dd * inv_w.asDiagonal();
            const Eigen::MatrixXd d1 = Eigen::MatrixXd(l1.asDiagonal()) + dw;
            const Eigen::VectorXd w2 = (l1.array().square() + l2.array()).matrix();
            const Eigen::MatrixXd d2 = Eigen::MatrixXd(w2.asDiagonal()) + 2.0 * (l1.asDiagonal() * dw) + ddw;
            const auto e = static_cast<std::size_t>(2 * e1 + e2);
            p.lb_radial[e] = one_minus_x2.asDiagonal() * d2 - 2.0 * (x.asDiagonal() * d1);
            p.sin_d_beta[e] = -(one_minus_x2.asDiagonal() * d1);
        }
    }
}

void SpectralOperators::check(const ComplexField& field) const {
    if (field.size() != grid_->size()) throw GridMismatchError("field size does not match spectral grid");
}

std::vector<ComplexField> SpectralOperators::apply(const ComplexField& field,
                                                   const std::vector<kernels::BlockOp>& ops) const {
    check(field);
    std::vector<ComplexField> outs(ops.size(), ComplexField(field.size()));
    std::vector<Complex*> ptrs;
    for (auto& o : outs) ptrs.push_back(o.data());
    if (parallel_) {
        kernels::omp::spectral_apply(plan_, field.data(), ops, ptrs);
    } else {
        kernels::serial::spectral_apply(plan_, field.data(), ops, ptrs);
    }
    return outs;
}

ComplexField SpectralOperators::laplace_beltrami(const ComplexField& field) const {
    return std::move(apply(field, {kernels::BlockOp::Laplacian})[0]);
}

ComplexField SpectralOperators::d_alpha(const ComplexField& field) const {
    return std::move(apply(field, {kernels::BlockOp::DAlpha})[0]);
}

ComplexField SpectralOperators::d_gamma(const ComplexField& field) const {
    return std::move(apply(field, {kernels::BlockOp::DGamma})[0]);
}

ComplexField SpectralOperators::sin_beta_d_beta(const ComplexField& field) const {
    return std::move(apply(field, {kernels::BlockOp::SinBetaDBeta})[0]);
}

SpectralOperators::Gradient SpectralOperators::gradient(const ComplexField& field) const {
    auto outs = apply(field, {kernels::BlockOp::DAlpha, kernels::BlockOp::SinBetaDBeta, kernels::BlockOp::DGamma});
    return {std::move(outs[0]), std::move(outs[1]), std::move(outs[2])};
}

}  // namespace spinframe

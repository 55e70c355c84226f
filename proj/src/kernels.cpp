#include "spinframe/kernels.hpp"

#include "spinframe/wigner.hpp"

namespace spinframe::kernels {

namespace {

template <bool Par, class Body>
void for_each(std::ptrdiff_t n, Body&& body) {
    if constexpr (Par) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
}

// Forward transform: gamma DFT on contiguous rows, then twisted alpha DFT.
template <bool Par>
void forward(const SpectralPlan& p, const Complex* in, std::vector<Complex>& spec) {
    const std::size_t na = static_cast<std::size_t>(p.na), nb = static_cast<std::size_t>(p.nb),
                      ng = static_cast<std::size_t>(p.ng);
    std::vector<Complex> tmp(p.size());
    for_each<Par>(static_cast<std::ptrdiff_t>(na * nb), [&](std::ptrdiff_t row) {
        const Complex* src = in + static_cast<std::size_t>(row) * ng;
        Complex* dst = tmp.data() + static_cast<std::size_t>(row) * ng;
        for (std::size_t n = 0; n < ng; ++n) {
            Complex acc{0.0, 0.0};
            const Complex* f = p.fwd_gamma.data() + n * ng;
            for (std::size_t g = 0; g < ng; ++g) acc += f[g] * src[g];
            dst[n] = acc;
        }
    });
    spec.assign(p.size(), Complex{0.0, 0.0});
    for_each<Par>(static_cast<std::ptrdiff_t>(nb * ng), [&](std::ptrdiff_t line) {
        const std::size_t ib = static_cast<std::size_t>(line) / ng;
        const std::size_t n = static_cast<std::size_t>(line) % ng;
        const bool half = p.k_half[n];
        std::vector<Complex> col(na);
        for (std::size_t a = 0; a < na; ++a) {
            Complex v = tmp[(a * nb + ib) * ng + n];
            col[a] = half ? v * p.twist[a] : v;
        }
        for (std::size_t m = 0; m < na; ++m) {
            Complex acc{0.0, 0.0};
            const Complex* f = p.fwd_alpha.data() + m * na;
            for (std::size_t a = 0; a < na; ++a) acc += f[a] * col[a];
            spec[(m * nb + ib) * ng + n] = acc;
        }
    });
}

template <bool Par>
void inverse(const SpectralPlan& p, const std::vector<Complex>& spec, Complex* out) {
    const std::size_t na = static_cast<std::size_t>(p.na), nb = static_cast<std::size_t>(p.nb),
                      ng = static_cast<std::size_t>(p.ng);
    std::vector<Complex> tmp(p.size());
    for_each<Par>(static_cast<std::ptrdiff_t>(nb * ng), [&](std::ptrdiff_t line) {
        const std::size_t ib = static_cast<std::size_t>(line) / ng;
        const std::size_t n = static_cast<std::size_t>(line) % ng;
        const bool half = p.k_half[n];
        for (std::size_t a = 0; a < na; ++a) {
            Complex acc{0.0, 0.0};
            const Complex* f = p.inv_alpha.data() + a * na;
            for (std::size_t m = 0; m < na; ++m) acc += f[m] * spec[(m * nb + ib) * ng + n];
            tmp[(a * nb + ib) * ng + n] = half ? acc * std::conj(p.twist[a]) : acc;
        }
    });
    for_each<Par>(static_cast<std::ptrdiff_t>(na * nb), [&](std::ptrdiff_t row) {
        const Complex* src = tmp.data() + static_cast<std::size_t>(row) * ng;
        Complex* dst = out + static_cast<std::size_t>(row) * ng;
        for (std::size_t g = 0; g < ng; ++g) {
            Complex acc{0.0, 0.0};
            const Complex* f = p.inv_gamma.data() + g * ng;
            for (std::size_t n = 0; n < ng; ++n) acc += f[n] * src[n];
            dst[g] = acc;
        }
    });
}

template <bool Par>
void apply_blocks(const SpectralPlan& p, const std::vector<Complex>& spec, BlockOp op,
                  std::vector<Complex>& result) {
    const std::size_t na = static_cast<std::size_t>(p.na), nb = static_cast<std::size_t>(p.nb),
                      ng = static_cast<std::size_t>(p.ng);
    result.assign(p.size(), Complex{0.0, 0.0});
    for_each<Par>(static_cast<std::ptrdiff_t>(na * ng), [&](std::ptrdiff_t block) {
        const std::size_t ma = static_cast<std::size_t>(block) / ng;
        const std::size_t n = static_cast<std::size_t>(block) % ng;
        if (!p.m_valid[ma] || !p.k_valid[n]) return;
        const int two_m = p.two_m(static_cast<int>(ma), static_cast<int>(n));
        const int two_k = p.two_k[n];
        const double m = 0.5 * two_m, k = 0.5 * two_k;
        auto at = [&](std::size_t ib) -> std::size_t { return (ma * nb + ib) * ng + n; };
        switch (op) {
            case BlockOp::DAlpha:
                for (std::size_t ib = 0; ib < nb; ++ib) result[at(ib)] = Complex(0.0, m) * spec[at(ib)];
                return;
            case BlockOp::DGamma:
                for (std::size_t ib = 0; ib < nb; ++ib) result[at(ib)] = Complex(0.0, k) * spec[at(ib)];
                return;
            case BlockOp::SinBetaDBeta: {
                const Eigen::MatrixXd& s = p.sin_d_beta[static_cast<std::size_t>(p.parity_class(two_m, two_k))];
                for (std::size_t ib = 0; ib < nb; ++ib) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t c = 0; c < nb; ++c) acc += s(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(c)) * spec[at(c)];
                    result[at(ib)] = acc;
                }
                return;
            }
            case BlockOp::Laplacian: {
                const Eigen::MatrixXd& r = p.lb_radial[static_cast<std::size_t>(p.parity_class(two_m, two_k))];
                for (std::size_t ib = 0; ib < nb; ++ib) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t c = 0; c < nb; ++c) acc += r(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(c)) * spec[at(c)];
                    const double x = p.x[ib];
                    const double angular = (m * m - 2.0 * x * m * k + k * k) / (1.0 - x * x);
                    result[at(ib)] = p.inv_a2 * (acc - angular * spec[at(ib)]);
                }
                return;
            }
        }
    });
}

template <bool Par>
void spectral_apply_impl(const SpectralPlan& p, const Complex* in, const std::vector<BlockOp>& ops,
                         const std::vector<Complex*>& outs) {
    std::vector<Complex> spec, work;
    forward<Par>(p, in, spec);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        apply_blocks<Par>(p, spec, ops[i], work);
        inverse<Par>(p, work, outs[i]);
    }
}

template <bool Par>
void sample_impl(const ExpansionTable& t, const GridView& g, const Complex* coeffs, Complex* out) {
    const std::size_t nb = static_cast<std::size_t>(g.nb), ng = static_cast<std::size_t>(g.ng);
    const std::size_t modes = t.two_j.size();
    std::vector<Complex> gamma_phase(ng);
    for (std::size_t ig = 0; ig < ng; ++ig) gamma_phase[ig] = wigner::exact_phase(0.5 * t.two_k * g.gamma[ig]);
    for_each<Par>(static_cast<std::ptrdiff_t>(g.na), [&](std::ptrdiff_t ia) {
        std::vector<Complex> alpha_phase(modes);
        for (std::size_t q = 0; q < modes; ++q) {
            alpha_phase[q] = coeffs[q] * wigner::exact_phase(0.5 * t.two_m[q] * g.alpha[ia]);
        }
        for (std::size_t ib = 0; ib < nb; ++ib) {
            Complex phi{0.0, 0.0};
            for (std::size_t q = 0; q < modes; ++q) phi += alpha_phase[q] * t.d[q * nb + ib];
            Complex* dst = out + (static_cast<std::size_t>(ia) * nb + ib) * ng;
            for (std::size_t ig = 0; ig < ng; ++ig) dst[ig] = phi * gamma_phase[ig];
        }
    });
}

template <bool Par>
void project_impl(const ExpansionTable& t, const GridView& g, const Complex* field, Complex* coeffs) {
    const std::size_t na = static_cast<std::size_t>(g.na), nb = static_cast<std::size_t>(g.nb),
                      ng = static_cast<std::size_t>(g.ng);
    // a_q = (2j+1)/V sum_n w_n f_n e^{-i m alpha} d(beta) e^{-i k gamma}
    std::vector<Complex> gamma_phase(ng);
    for (std::size_t ig = 0; ig < ng; ++ig) gamma_phase[ig] = wigner::exact_phase(-0.5 * t.two_k * g.gamma[ig]);
    for_each<Par>(static_cast<std::ptrdiff_t>(t.two_j.size()), [&](std::ptrdiff_t qi) {
        const std::size_t q = static_cast<std::size_t>(qi);
        Complex acc{0.0, 0.0};
        for (std::size_t ia = 0; ia < na; ++ia) {
            const Complex ap = wigner::exact_phase(-0.5 * t.two_m[q] * g.alpha[ia]);
            for (std::size_t ib = 0; ib < nb; ++ib) {
                const std::size_t base = (ia * nb + ib) * ng;
                Complex line{0.0, 0.0};
                for (std::size_t ig = 0; ig < ng; ++ig) line += g.weights[base + ig] * field[base + ig] * gamma_phase[ig];
                acc += ap * t.d[q * nb + ib] * line;
            }
        }
        coeffs[q] = t.projection_scale[q] * acc;
    });
}

template <bool Par>
void permutation_sum_impl(int n_particles, int local_dim, const std::vector<std::vector<Complex>>& factors,
                          const std::vector<std::vector<int>>& perms, const std::vector<int>& signs,
                          Complex* out) {
    std::size_t total = 1;
    for (int i = 0; i < n_particles; ++i) total *= static_cast<std::size_t>(local_dim);
    double inv_count = 1.0 / static_cast<double>(perms.size());
    for_each<Par>(static_cast<std::ptrdiff_t>(total), [&](std::ptrdiff_t flat) {
        // entry index e_0 ... e_{N-1}, e_0 most significant
        std::vector<int> e(static_cast<std::size_t>(n_particles));
        std::size_t rem = static_cast<std::size_t>(flat);
        for (int i = n_particles - 1; i >= 0; --i) {
            e[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(local_dim));
            rem /= static_cast<std::size_t>(local_dim);
        }
        Complex acc{0.0, 0.0};
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            Complex prod{1.0, 0.0};
            for (int i = 0; i < n_particles; ++i) {
                const auto slot = static_cast<std::size_t>(i);
                prod *= factors[static_cast<std::size_t>(perms[pi][slot])][static_cast<std::size_t>(e[slot])];
            }
            acc += static_cast<double>(signs[pi]) * prod;
        }
        out[flat] = inv_count * acc;
    });
}

}  // namespace

namespace serial {
void spectral_apply(const SpectralPlan& plan, const Complex* in, const std::vector<BlockOp>& ops,
                    const std::vector<Complex*>& outs) {
    spectral_apply_impl<false>(plan, in, ops, outs);
}
void sample_expansion(const ExpansionTable& table, const GridView& grid, const Complex* coeffs, Complex* out) {
    sample_impl<false>(table, grid, coeffs, out);
}
void project_expansion(const ExpansionTable& table, const GridView& grid, const Complex* field, Complex* coeffs) {
    project_impl<false>(table, grid, field, coeffs);
}
void permutation_sum(int n_particles, int local_dim, const std::vector<std::vector<Complex>>& factors,
                     const std::vector<std::vector<int>>& perms, const std::vector<int>& signs, Complex* out) {
    permutation_sum_impl<false>(n_particles, local_dim, factors, perms, signs, out);
}
}  // namespace serial

namespace omp {
void spectral_apply(const SpectralPlan& plan, const Complex* in, const std::vector<BlockOp>& ops,
                    const std::vector<Complex*>& outs) {
    spectral_apply_impl<true>(plan, in, ops, outs);
}
void sample_expansion(const ExpansionTable& table, const GridView& grid, const Complex* coeffs, Complex* out) {
    sample_impl<true>(table, grid, coeffs, out);
}
void project_expansion(const ExpansionTable& table, const GridView& grid, const Complex* field, Complex* coeffs) {
    project_impl<true>(table, grid, field, coeffs);
}
void permutation_sum(int n_particles, int local_dim, const std::vector<std::vector<Complex>>& factors,
                     const std::vector<std::vector<int>>& perms, const std::vector<int>& signs, Complex* out) {
    permutation_sum_impl<true>(n_particles, local_dim, factors, perms, signs, out);
}
}  // namespace omp

}  // namespace spinframe::kernels

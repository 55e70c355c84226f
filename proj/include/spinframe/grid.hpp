#pragma once

#include "spinframe/types.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace spinframe {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes in descending order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

enum class GammaPeriod { TwoPi, FourPi };

double period_length(GammaPeriod period);
std::string to_string(GammaPeriod period);
GammaPeriod gamma_period_from_string(const std::string& text);
/// 4pi whenever 2s is odd so e^{i s gamma} is single-valued.
GammaPeriod natural_period(SpinLabel spin);

struct GridSpec {
    int n_alpha = 16;
    int n_beta = 16;
    int n_gamma = 16;
    GammaPeriod gamma_period = GammaPeriod::TwoPi;
};

/// Grid spec plus physical parameters, as read from a JSON config document:
/// {"n_alpha":16,"n_beta":16,"n_gamma":16,"gamma_period":"4pi","a":1,"mass":1,"hbar":1}
struct GridConfig {
    GridSpec grid;
    PhysicalParameters params;
};
GridConfig parse_grid_config(const std::string& json_text);
std::string grid_config_to_json(const GridConfig& config);

/// Product quadrature over (alpha, beta, gamma): uniform in alpha and gamma,
/// Gauss-Legendre in cos(beta). Weights are Haar weights (sin(beta) dalpha dbeta dgamma),
/// so they sum to 8 pi^2 on the 2pi chart and 16 pi^2 on the 4pi chart.
///
/// Node (ia, ib, ig) has flat index (ia * n_beta + ib) * n_gamma + ig.
class So3Grid {
public:
    explicit So3Grid(const GridSpec& spec, double giration_radius = 1.0);

    const GridSpec& spec() const { return spec_; }
    int n_alpha() const { return spec_.n_alpha; }
    int n_beta() const { return spec_.n_beta; }
    int n_gamma() const { return spec_.n_gamma; }
    std::size_t size() const { return size_; }
    GammaPeriod gamma_period() const { return spec_.gamma_period; }
    double gamma_period_length() const { return period_length(spec_.gamma_period); }
    double giration_radius() const { return radius_; }

    /// Haar volume of the chart, recorded at construction.
    double haar_volume() const { return haar_volume_; }

    std::size_t index(int ia, int ib, int ig) const {
        return (static_cast<std::size_t>(ia) * static_cast<std::size_t>(spec_.n_beta) +
                static_cast<std::size_t>(ib)) *
                   static_cast<std::size_t>(spec_.n_gamma) +
               static_cast<std::size_t>(ig);
    }

    EulerAngles node(std::size_t flat) const;
    double alpha(int ia) const { return alpha_[static_cast<std::size_t>(ia)]; }
    double beta(int ib) const { return beta_[static_cast<std::size_t>(ib)]; }
    double gamma(int ig) const { return gamma_[static_cast<std::size_t>(ig)]; }
    /// cos(beta) node values (Gauss-Legendre abscissae).
    double cos_beta(int ib) const { return x_[static_cast<std::size_t>(ib)]; }
    const std::vector<double>& cos_beta_nodes() const { return x_; }
    const std::vector<double>& alphas() const { return alpha_; }
    const std::vector<double>& betas() const { return beta_; }
    const std::vector<double>& gammas() const { return gamma_; }

    double weight(std::size_t flat) const { return weights_[flat]; }
    const std::vector<double>& weights() const { return weights_; }
    /// sqrt(det g) of the angular block at node: a^3 sin(beta).
    double sqrt_det_g(std::size_t flat) const;
    const std::vector<double>& beta_weights() const { return beta_weights_; }

    /// Haar integral sum_n w_n f_n, accumulated in fixed node order.
    Complex integrate(const ComplexField& f) const;
    double integrate(const RealField& f) const;
    /// Integral against sqrt(g) d^3q, i.e. a^3 * Haar integral.
    double integrate_metric(const RealField& f) const;

    bool same_layout(const So3Grid& other) const;

    void write_csv(std::ostream& out) const;

private:
    GridSpec spec_;
    double radius_;
    std::size_t size_;
    double haar_volume_;
    std::vector<double> alpha_, beta_, gamma_, x_, beta_weights_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const So3Grid>;
GridPtr make_grid(const GridSpec& spec, double giration_radius = 1.0);

}  // namespace spinframe

#include "spinframe/grid.hpp"

#include "spinframe/error.hpp"

#include <json.hpp>

#include <ostream>
#include <utility>

namespace spinframe {

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw ResolutionError("Gauss-Legendre order must be >= 1");
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            auto [pn, pnm1] = legendre_pair(n, x);
            double dp = n * (x * pn - pnm1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        auto [pn, pnm1] = legendre_pair(n, x);
        double dp = n * (x * pn - pnm1) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[static_cast<std::size_t>(i)] = x;
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) gl.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return gl;
}

double period_length(GammaPeriod period) {
    return period == GammaPeriod::TwoPi ? kTwoPi : 2.0 * kTwoPi;
}

std::string to_string(GammaPeriod period) {
    return period == GammaPeriod::TwoPi ? "2pi" : "4pi";
}

GammaPeriod gamma_period_from_string(const std::string& text) {
    if (text == "2pi") return GammaPeriod::TwoPi;
    if (text == "4pi") return GammaPeriod::FourPi;
    throw ConfigError("gamma_period must be \"2pi\" or \"4pi\", got \"" + text + "\"");
}

GammaPeriod natural_period(SpinLabel spin) {
    return spin.is_half_integer() ? GammaPeriod::FourPi : GammaPeriod::TwoPi;
}

GridConfig parse_grid_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("grid config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("grid config must be a JSON object");
    GridConfig cfg;
    try {
        cfg.grid.n_alpha = doc.value("n_alpha", cfg.grid.n_alpha);
        cfg.grid.n_beta = doc.value("n_beta", cfg.grid.n_beta);
        cfg.grid.n_gamma = doc.value("n_gamma", cfg.grid.n_gamma);
        cfg.grid.gamma_period =
            gamma_period_from_string(doc.value("gamma_period", std::string("2pi")));
        cfg.params = PhysicalParameters(doc.value("mass", 1.0), doc.value("a", 1.0),
                                        doc.value("hbar", 1.0));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("grid config: ") + e.what());
    }
    if (cfg.grid.n_alpha < 1 || cfg.grid.n_beta < 1 || cfg.grid.n_gamma < 1) {
        throw ConfigError("grid sizes must be positive");
    }
    return cfg;
}

std::string grid_config_to_json(const GridConfig& config) {
    nlohmann::ordered_json doc;
    doc["n_alpha"] = config.grid.n_alpha;
    doc["n_beta"] = config.grid.n_beta;
    doc["n_gamma"] = config.grid.n_gamma;
    doc["gamma_period"] = to_string(config.grid.gamma_period);
    doc["a"] = config.params.giration_radius;
    doc["mass"] = config.params.mass;
    doc["hbar"] = config.params.hbar;
    return doc.dump(2);
}

So3Grid::So3Grid(const GridSpec& spec, double giration_radius)
    : spec_(spec), radius_(giration_radius) {
    if (spec.n_alpha < 1 || spec.n_beta < 1 || spec.n_gamma < 1) {
        throw ResolutionError("grid sizes must be positive");
    }
    if (!(giration_radius > 0.0)) throw ConfigError("giration radius must be positive");
    size_ = static_cast<std::size_t>(spec.n_alpha) * static_cast<std::size_t>(spec.n_beta) *
            static_cast<std::size_t>(spec.n_gamma);

    const double period = gamma_period_length();
    alpha_.resize(static_cast<std::size_t>(spec.n_alpha));
    for (int i = 0; i < spec.n_alpha; ++i) alpha_[static_cast<std::size_t>(i)] = kTwoPi * i / spec.n_alpha;
    gamma_.resize(static_cast<std::size_t>(spec.n_gamma));
    for (int i = 0; i < spec.n_gamma; ++i) gamma_[static_cast<std::size_t>(i)] = period * i / spec.n_gamma;

    GaussLegendre gl = gauss_legendre(spec.n_beta);
    x_ = gl.nodes;
    beta_weights_ = gl.weights;
    beta_.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) beta_[i] = std::acos(x_[i]);

    const double w_alpha = kTwoPi / spec.n_alpha;
    const double w_gamma = period / spec.n_gamma;
    weights_.resize(size_);
    for (int ia = 0; ia < spec.n_alpha; ++ia) {
        for (int ib = 0; ib < spec.n_beta; ++ib) {
            for (int ig = 0; ig < spec.n_gamma; ++ig) {
                weights_[index(ia, ib, ig)] = w_alpha * w_gamma * beta_weights_[static_cast<std::size_t>(ib)];
            }
        }
    }
    haar_volume_ = kTwoPi * period * 2.0;
}

EulerAngles So3Grid::node(std::size_t flat) const {
    const auto ng = static_cast<std::size_t>(spec_.n_gamma);
    const auto nb = static_cast<std::size_t>(spec_.n_beta);
    const std::size_t ig = flat % ng;
    const std::size_t ib = (flat / ng) % nb;
    const std::size_t ia = flat / (ng * nb);
    return {alpha_[ia], beta_[ib], gamma_[ig]};
}

double So3Grid::sqrt_det_g(std::size_t flat) const {
    const auto ng = static_cast<std::size_t>(spec_.n_gamma);
    const auto nb = static_cast<std::size_t>(spec_.n_beta);
    const std::size_t ib = (flat / ng) % nb;
    const double x = x_[ib];
    return radius_ * radius_ * radius_ * std::sqrt(1.0 - x * x);
}

Complex So3Grid::integrate(const ComplexField& f) const {
    if (f.size() != size_) throw GridMismatchError("field size does not match grid");
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < size_; ++n) sum += weights_[n] * f[n];
    return sum;
}

double So3Grid::integrate(const RealField& f) const {
    if (f.size() != size_) throw GridMismatchError("field size does not match grid");
    double sum = 0.0;
    for (std::size_t n = 0; n < size_; ++n) sum += weights_[n] * f[n];
    return sum;
}

double So3Grid::integrate_metric(const RealField& f) const {
    return radius_ * radius_ * radius_ * integrate(f);
}

bool So3Grid::same_layout(const So3Grid& other) const {
    return spec_.n_alpha == other.spec_.n_alpha && spec_.n_beta == other.spec_.n_beta &&
           spec_.n_gamma == other.spec_.n_gamma && spec_.gamma_period == other.spec_.gamma_period &&
           radius_ == other.radius_;
}

void So3Grid::write_csv(std::ostream& out) const {
    out.precision(17);
    out << "alpha,beta,gamma,weight,sqrt_det_g\n";
    for (std::size_t n = 0; n < size_; ++n) {
        EulerAngles q = node(n);
        out << q.alpha << ',' << q.beta << ',' << q.gamma << ',' << weights_[n] << ','
            << sqrt_det_g(n) << '\n';
    }
}

GridPtr make_grid(const GridSpec& spec, double giration_radius) {
    return std::make_shared<const So3Grid>(spec, giration_radius);
}

}  // namespace spinframe

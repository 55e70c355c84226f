#include "spinframe/cli.hpp"

#include "spinframe/error.hpp"
#include "spinframe/suites.hpp"
#include "spinframe/wigner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace spinframe::cli {

namespace fs = std::filesystem;
using suites::Json;

namespace {

class Artifacts {
public:
    explicit Artifacts(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw ConfigError("cannot create output directory '" + dir + "'");
    }

    void write(const std::string& name, const std::string& text) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + (dir_ / name).string());
        f << text;
        files_.push_back(name);
    }

    // Two columns, whitespace separated, for plotting tools.
    void write_dat(const std::string& name, const std::string& header, const std::vector<std::pair<double, double>>& xy) {
        std::ostringstream s;
        s << std::setprecision(17) << "# " << header << "\n";
        for (const auto& [x, y] : xy) s << x << " " << y << "\n";
        write(name, s.str());
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

Json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// A complex number as [re, im], {"re": .., "im": ..} or a bare real.
Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object() && j.contains("re")) return {j.at("re").get<double>(), j.value("im", 0.0)};
    throw ConfigError("expected a complex number, got " + j.dump());
}

Eigen::VectorXcd parse_vector(const Json& j) {
    if (!j.is_array()) throw ConfigError("expected a list of complex numbers");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
    return v;
}

// "two_s" (or "spin", read the same way as --spin) overrides the flag.
SpinLabel spin_from(const Json& j, int fallback) {
    if (j.contains("two_s")) return SpinLabel(j.at("two_s").get<int>());
    if (j.contains("spin")) {
        const Json& s = j.at("spin");
        if (!s.is_number_integer()) throw ConfigError("\"spin\" is the integer 2s");
        return SpinLabel(s.get<int>());
    }
    return SpinLabel(fallback);
}

template <typename F>
auto with_config_errors(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

SpinorField load_spinor(const std::string& path, int fallback_two_s) {
    const Json j = read_json(path);
    return with_config_errors(path, [&] {
        const SpinLabel spin = spin_from(j, fallback_two_s);
        std::vector<Eigen::VectorXcd> pts;
        if (j.contains("points")) {
            for (const auto& p : j.at("points")) pts.push_back(parse_vector(p));
        } else {
            pts.push_back(parse_vector(j.at("components")));
        }
        if (pts.empty()) throw ConfigError(path + ": no spinor components");
        SpinorField f;
        f.spin = spin;
        f.components.resize(static_cast<Eigen::Index>(pts.size()), spin.dimension());
        for (std::size_t p = 0; p < pts.size(); ++p) {
            if (pts[p].size() != spin.dimension()) {
                throw ConfigError(path + ": spin 2s=" + std::to_string(spin.two_s()) + " needs " +
                                  std::to_string(spin.dimension()) + " components");
            }
            f.components.row(static_cast<Eigen::Index>(p)) = pts[p].transpose();
        }
        f.cell_volumes = j.contains("cell_volumes") ? j.at("cell_volumes").get<std::vector<double>>()
                                                    : std::vector<double>(pts.size(), 1.0);
        if (f.cell_volumes.size() != pts.size()) throw ConfigError(path + ": cell_volumes length mismatch");
        return f;
    });
}

std::vector<std::pair<ModeIndex, Complex>> parse_modes(const Json& j) {
    std::vector<std::pair<ModeIndex, Complex>> out;
    for (const auto& m : j) {
        out.push_back({{m.at("two_j").get<int>(), m.at("two_m").get<int>()}, parse_complex(m.at("amplitude"))});
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

EulerAngles parse_angles(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad angle '" + item + "'");
        }
    }
    if (v.size() != 3) throw ConfigError("angles must be alpha,beta,gamma; got '" + text + "'");
    return {v[0], v[1], v[2]};
}

// ------------------------------------------------------------ subcommands

void wigner_table(const RunConfig& c, const suites::SuiteOptions& opt, Report& rep, Artifacts& art) {
    std::vector<EulerAngles> angles;
    for (const auto& a : c.angles) angles.push_back(parse_angles(a));
    if (angles.empty()) angles = {{0.0, 0.0, 0.0}, {0.3, kPi / 4, 1.1}, {1.2, kPi / 2, 0.4}, {2.5, kPi, 5.0}};
    const SpinLabel spin = opt.spin;
    std::ostringstream csv;
    csv << "alpha,beta,gamma,two_mp,two_m,d,re_D,im_D\n";
    Json table = Json::array();
    for (const auto& q : angles) {
        if (!q.beta_in_range()) throw ConfigError("beta must lie in [0, pi]");
        const auto d = wigner::small_d(spin, q.beta);
        const auto D = wigner::big_D(spin, q);
        for (int r = 0; r < spin.dimension(); ++r) {
            for (int k = 0; k < spin.dimension(); ++k) {
                const Complex v = D.entries(r, k);
                csv << fmt(q.alpha) << "," << fmt(q.beta) << "," << fmt(q.gamma) << "," << spin.two_sigma(r) << ","
                    << spin.two_sigma(k) << "," << fmt(d.entries(r, k).real()) << "," << fmt(v.real()) << ","
                    << fmt(v.imag()) << "\n";
            }
        }
        table.push_back({{"angles", {q.alpha, q.beta, q.gamma}}, {"unitarity_error", D.unitarity_error()}});
    }
    art.write("wigner_table.csv", csv.str());
    rep.add_all(suites::wigner_checks(opt, rep.data()));
    rep.data()["table"] = table;
}

void transform(const RunConfig& c, const suites::SuiteOptions& opt, Report& rep, Artifacts& art) {
    const SpinorField spinor = c.input.empty() ? SpinorField::at_point(opt.spin, suites::random_spinor(opt.spin, opt.seed))
                                               : load_spinor(c.input, c.two_s);
    suites::SuiteOptions o = opt;
    o.spin = spinor.spin;
    const GridPtr grid = o.grid();
    rep.add_all(suites::transform_checks(spinor, grid, opt.params, rep.data()));

    const ScalarWavefunction scalar = scalar_from_spinor(spinor, grid);
    std::ostringstream csv;
    csv << "point,alpha,beta,gamma,re_psi,im_psi,rho,S\n";
    for (std::size_t p = 0; p < scalar.n_points(); ++p) {
        const PolarFields pf = density_and_action(scalar, opt.params.hbar, p);
        const ComplexField& psi = scalar.angular(p);
        for (std::size_t n = 0; n < psi.size(); ++n) {
            const EulerAngles q = grid->node(n);
            csv << p << "," << fmt(q.alpha) << "," << fmt(q.beta) << "," << fmt(q.gamma) << "," << fmt(psi[n].real())
                << "," << fmt(psi[n].imag()) << "," << fmt(pf.rho[n]) << "," << fmt(pf.action[n]) << "\n";
        }
    }
    art.write("scalar.csv", csv.str());
}

void rotate_2pi(const suites::SuiteOptions& opt, Report& rep, Artifacts& art) {
    rep.add_all(suites::rotation_checks(opt, rep.data()));
    // spinor components along a 2pi turn about z: the sign builds up continuously
    const SpinorField sp = SpinorField::at_point(opt.spin, suites::random_spinor(opt.spin, opt.seed));
    const Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    std::vector<std::pair<double, double>> overlap;
    for (int i = 0; i <= 64; ++i) {
        const double t = kTwoPi * i / 64.0;
        const SpinorField r = rotate_lab_frame(sp, LabRotation::about_axis(axis, t));
        overlap.push_back({t, sp.components.row(0).conjugate().dot(r.components.row(0)).real()});
    }
    art.write_dat("spinor_overlap.dat", "angle Re<psi|D(angle)|psi> about x", overlap);
}

void curvature(const suites::SuiteOptions& opt, Report& rep, Artifacts& art) {
    Json geo, lap, weyl;
    rep.add_all(suites::geometry_checks(opt, geo));
    rep.add_all(suites::laplacian_checks(opt, lap));
    rep.add_all(suites::weyl_checks(opt, weyl));

    std::ostringstream csv;
    csv << "alpha,beta,gamma,R\n";
    for (const auto& p : geo["points"]) {
        csv << fmt(p["alpha"].get<double>()) << "," << fmt(p["beta"].get<double>()) << "," << fmt(p["gamma"].get<double>())
            << "," << fmt(p["R"].get<double>()) << "\n";
    }
    art.write("curvature.csv", csv.str());
    std::vector<std::pair<double, double>> spec;
    for (const auto& e : lap["spectrum"]) spec.push_back({0.5 * e["two_j"].get<int>(), e["numeric"].get<double>()});
    art.write_dat("lb_spectrum.dat", "j eigenvalue", spec);
    std::vector<std::pair<double, double>> prof;
    for (const auto& e : weyl["spin_half_profile"]) prof.push_back({e[0].get<double>(), e[1].get<double>()});
    art.write_dat("weyl_profile.dat", "beta R_W for rho = cos^2(beta/2)", prof);

    rep.data()["geometry"] = geo;
    rep.data()["laplacian"] = lap;
    rep.data()["weyl"] = weyl;
}

suites::EvolveSetup evolve_setup(const RunConfig& c, suites::SuiteOptions& opt) {
    suites::EvolveSetup s = suites::default_evolve_setup(opt.spin);
    if (c.config.empty()) return s;
    const Json j = read_json(c.config);
    return with_config_errors(c.config, [&] {
        opt.spin = spin_from(j, opt.spin.two_s());
        s = suites::default_evolve_setup(opt.spin);
        if (j.contains("modes")) s.modes = parse_modes(j.at("modes"));
        s.dt = j.value("dt", s.dt);
        s.steps = j.value("steps", s.steps);
        if (!(s.dt > 0.0) || s.steps < 1) throw ConfigError(c.config + ": need dt > 0 and steps >= 1");
        return s;
    });
}

void evolve_cmd(const RunConfig& c, suites::SuiteOptions opt, Report& rep, Artifacts& art) {
    const suites::EvolveSetup setup = evolve_setup(c, opt);
    std::optional<DynamicalRun> run;
    rep.add_all(suites::evolve_checks(opt, setup, rep.data(), &run));

    const auto& st = run->states();
    const double n0 = st.front().norm, e0 = st.front().energy;
    std::ostringstream csv;
    csv << "t,norm,energy,norm_drift,energy_drift\n";
    std::vector<std::pair<double, double>> norm, energy;
    for (const auto& s : st) {
        if (!s.audited) continue;
        csv << fmt(s.time) << "," << fmt(s.norm) << "," << fmt(s.energy) << "," << fmt(s.norm - n0) << ","
            << fmt(s.energy - e0) << "\n";
        norm.push_back({s.time, s.norm - n0});
        energy.push_back({s.time, s.energy - e0});
    }
    art.write("timeseries.csv", csv.str());
    art.write_dat("norm_drift.dat", "t norm(t)-norm(0)", norm);
    art.write_dat("energy_drift.dat", "t E(t)-E(0)", energy);
}

void madelung_cmd(const RunConfig& c, suites::SuiteOptions opt, Report& rep, Artifacts& art) {
    MadelungConfig mc = suites::default_madelung_config(opt.spin, c.refine);
    if (!c.config.empty()) {
        const Json j = read_json(c.config);
        with_config_errors(c.config, [&] {
            opt.spin = spin_from(j, opt.spin.two_s());
            mc = suites::default_madelung_config(opt.spin, j.value("levels", c.refine));
            if (j.contains("modes")) mc.modes = parse_modes(j.at("modes"));
            mc.base_n = j.value("base_n", mc.base_n);
            mc.dt0 = j.value("dt0", mc.dt0);
            mc.refine_factor = j.value("refine_factor", mc.refine_factor);
            if (j.contains("sample_times")) mc.sample_times = j.at("sample_times").get<std::vector<double>>();
            return 0;
        });
    }
    if (mc.levels < 3) throw ConfigError("convergence study needs at least 3 refinement levels");
    rep.add_all(suites::madelung_checks(opt, mc, rep.data()));

    std::ostringstream csv;
    csv << "n,h,dt,hje_residual,continuity_residual,norm_drift\n";
    std::vector<std::pair<double, double>> hje, cont;
    for (const auto& l : rep.data()["levels"]) {
        auto v = [&](const char* k) { return l[k].get<double>(); };
        csv << l["n"].get<int>() << "," << fmt(v("h")) << "," << fmt(v("dt")) << "," << fmt(v("hje")) << ","
            << fmt(v("continuity")) << "," << fmt(v("norm_drift")) << "\n";
        hje.push_back({v("h"), v("hje")});
        cont.push_back({v("h"), v("continuity")});
    }
    art.write("madelung.csv", csv.str());
    art.write_dat("hje_convergence.dat", "h hje_residual", hje);
    art.write_dat("continuity_convergence.dat", "h continuity_residual", cont);
}

std::vector<suites::FramePair> load_frames(const std::string& path) {
    const Json j = read_json(path);
    return with_config_errors(path, [&] {
        const Json& list = j.is_object() ? j.at("pairs") : j;
        std::vector<suites::FramePair> out;
        auto angles = [](const Json& a) {
            const auto v = a.get<std::vector<double>>();
            if (v.size() != 3) throw ConfigError("a frame is [alpha, beta, gamma]");
            return EulerAngles{v[0], v[1], v[2]};
        };
        for (const auto& p : list) out.push_back({angles(p.at("a")), angles(p.at("b"))});
        if (out.empty()) throw ConfigError(path + ": no frame pairs");
        return out;
    });
}

void exchange_cmd(const RunConfig& c, const suites::SuiteOptions& opt, Report& rep, Artifacts& art) {
    const auto pairs = c.frames.empty() ? suites::random_frame_pairs(1000, opt.seed) : load_frames(c.frames);
    rep.add_all(suites::exchange_checks(opt, pairs, rep.data()));
    std::ostringstream csv;
    csv << "alpha_a,beta_a,gamma_a,alpha_b,beta_b,gamma_b,delta_gamma_a,delta_gamma_b,min_step,phase\n";
    for (const auto& p : pairs) {
        const ExchangePath path = monotone_exchange_path(p.a, p.b, 64);
        const PathAudit audit = audit_path(path);
        csv << fmt(p.a.alpha) << "," << fmt(p.a.beta) << "," << fmt(p.a.gamma) << "," << fmt(p.b.alpha) << ","
            << fmt(p.b.beta) << "," << fmt(p.b.gamma) << "," << fmt(path.delta_gamma_a) << "," << fmt(path.delta_gamma_b)
            << "," << fmt(audit.min_step) << "," << exchange_phase(opt.spin, path).real() << "\n";
    }
    art.write("exchange.csv", csv.str());
}

void symmetrize_cmd(const RunConfig& c, suites::SuiteOptions opt, Report& rep, Artifacts& art) {
    std::vector<Eigen::VectorXcd> states;
    int n_modes = 1;
    if (!c.input.empty()) {
        const Json j = read_json(c.input);
        with_config_errors(c.input, [&] {
            opt.spin = spin_from(j, opt.spin.two_s());
            n_modes = j.value("modes", 1);
            for (const auto& s : j.at("states")) states.push_back(parse_vector(s));
            return 0;
        });
    } else {
        n_modes = 2;
        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int i = 0; i < 3; ++i) {
            Eigen::VectorXcd v(n_modes * opt.spin.dimension());
            for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(nd(rng), nd(rng));
            states.push_back(v.normalized());
        }
    }
    if (states.empty() || static_cast<int>(states.size()) > kMaxParticles) {
        throw ConfigError("symmetrize takes 1 to " + std::to_string(kMaxParticles) + " states");
    }
    const NParticleSpinor psi = symmetrize(states, opt.spin, n_modes);
    rep.add_all(suites::statistics_checks(opt, rep.data()));

    // exchange eigenvalue of the requested tensor itself
    const int n = psi.n_particles;
    double swap = 0.0;
    if (!psi.is_zero) {
        for (int a = 0; a + 1 < n; ++a) {
            std::vector<int> t(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
            std::swap(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(a + 1)]);
            const NParticleSpinor q = psi.permuted(t);
            for (std::size_t i = 0; i < psi.tensor.size(); ++i) {
                swap = std::max(swap, std::abs(q.tensor[i] - static_cast<double>(opt.spin.statistics_sign()) * psi.tensor[i]));
            }
        }
    }
    rep.add(make_check("symmetrize.input_exchange_eigenvalue", swap, 1e-12));
    rep.data()["input"] = {{"two_s", opt.spin.two_s()}, {"particles", n}, {"modes", n_modes},
                           {"raw_norm", psi.raw_norm}, {"is_zero", psi.is_zero}};

    std::ostringstream csv;
    for (int i = 0; i < n; ++i) csv << "e" << i << ",";
    csv << "re,im\n";
    const int d = psi.local_dim();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t f = 0; f < psi.tensor.size(); ++f) {
        std::size_t rem = f;
        for (int i = n - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(d));
            rem /= static_cast<std::size_t>(d);
        }
        for (int v : idx) csv << v << ",";
        csv << fmt(psi.tensor[f].real()) << "," << fmt(psi.tensor[f].imag()) << "\n";
    }
    art.write("tensor.csv", csv.str());
}

void verify_all(const suites::SuiteOptions& opt, Report& rep) {
    auto section = [&](const char* key, auto&& fn) {
        Json d = Json::object();
        rep.add_all(fn(d));
        rep.data()[key] = d;
    };
    section("wigner", [&](Json& d) { return suites::wigner_checks(opt, d); });
    section("transform", [&](Json& d) {
        const SpinorField sp = SpinorField::at_point(opt.spin, suites::random_spinor(opt.spin, opt.seed));
        return suites::transform_checks(sp, opt.grid(), opt.params, d);
    });
    section("rotation", [&](Json& d) { return suites::rotation_checks(opt, d); });
    section("geometry", [&](Json& d) { return suites::geometry_checks(opt, d); });
    section("laplacian", [&](Json& d) { return suites::laplacian_checks(opt, d); });
    section("weyl", [&](Json& d) { return suites::weyl_checks(opt, d); });
    section("evolve", [&](Json& d) { return suites::evolve_checks(opt, suites::default_evolve_setup(opt.spin), d); });
    section("madelung",
            [&](Json& d) { return suites::madelung_checks(opt, suites::default_madelung_config(opt.spin, opt.refine), d); });
    section("exchange", [&](Json& d) { return suites::exchange_checks(opt, suites::random_frame_pairs(1000, opt.seed), d); });
    section("statistics", [&](Json& d) { return suites::statistics_checks(opt, d); });
}

}  // namespace

RunResult run(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& names = subcommands();
    if (std::find(names.begin(), names.end(), c.subcommand) == names.end()) {
        throw ConfigError("unknown subcommand '" + c.subcommand + "'");
    }
    if (c.n_alpha < 1 || c.n_beta < 1 || c.n_gamma < 1) throw ConfigError("grid sizes must be positive");
    if (c.refine < 3) throw ConfigError("--refine needs at least 3 levels");

    suites::SuiteOptions opt;
    opt.spin = SpinLabel(c.two_s);
    opt.n_alpha = c.n_alpha;
    opt.n_beta = c.n_beta;
    opt.n_gamma = c.n_gamma;
    opt.params = PhysicalParameters(c.mass, c.giration_radius, c.hbar);
    opt.seed = c.seed;
    opt.refine = c.refine;

    RunResult res{Report(c.subcommand), 0.0, {}, kExitPass};
    Report& rep = res.report;
    Json& in = rep.inputs();
    in["two_s"] = c.two_s;
    in["grid"] = {c.n_alpha, c.n_beta, c.n_gamma};
    in["a"] = c.giration_radius;
    in["mass"] = c.mass;
    in["hbar"] = c.hbar;
    in["seed"] = c.seed;
    in["refine"] = c.refine;
    if (!c.input.empty()) in["input"] = c.input;
    if (!c.config.empty()) in["config"] = c.config;
    if (!c.frames.empty()) in["frames"] = c.frames;
    if (!c.angles.empty()) in["angles"] = c.angles;

    Artifacts art(c.out_dir);
    try {
        const std::string& s = c.subcommand;
        if (s == "wigner-table") wigner_table(c, opt, rep, art);
        else if (s == "transform") transform(c, opt, rep, art);
        else if (s == "rotate-2pi") rotate_2pi(opt, rep, art);
        else if (s == "curvature") curvature(opt, rep, art);
        else if (s == "evolve") evolve_cmd(c, opt, rep, art);
        else if (s == "verify-madelung") madelung_cmd(c, opt, rep, art);
        else if (s == "exchange-phase") exchange_cmd(c, opt, rep, art);
        else if (s == "symmetrize") symmetrize_cmd(c, opt, rep, art);
        else verify_all(opt, rep);
        res.exit_code = rep.pass() ? kExitPass : kExitCheckFailed;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        rep.set_error(e.what());
        res.exit_code = kExitNumerical;
    }

    art.write("report.json", rep.dump());
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json timing;
    timing["subcommand"] = c.subcommand;
    timing["wall_seconds"] = res.wall_seconds;
    art.write("timing.json", timing.dump(2) + "\n");
    res.files = art.files();
    return res;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"spinframe: spinning-particle wavefunctions on E3 x SO(3)"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string grid = "16,16,16";

    app.add_option("--spin", cfg.two_s, "twice the spin, 2s")->envname("SPINFRAME_SPIN")->check(CLI::Range(0, SpinLabel::kMaxTwoS));
    app.add_option("--grid", grid, "NA,NB,NG nodes in alpha, beta, gamma")->envname("SPINFRAME_GRID");
    app.add_option("--a", cfg.giration_radius, "giration radius")->envname("SPINFRAME_A");
    app.add_option("--mass", cfg.mass, "particle mass")->envname("SPINFRAME_MASS");
    app.add_option("--hbar", cfg.hbar, "reduced Planck constant")->envname("SPINFRAME_HBAR");
    app.add_option("--seed", cfg.seed, "random seed")->envname("SPINFRAME_SEED");
    app.add_option("--out", cfg.out_dir, "output directory")->envname("SPINFRAME_OUT");
    app.add_option("--refine", cfg.refine, "grid refinement levels (>= 3)")->envname("SPINFRAME_REFINE");

    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sc = app.add_subcommand(name, help);
        sc->fallthrough();
        return sc;
    };
    add("wigner-table", "d^s and D^s tables and the Wigner checks")
        ->add_option("--angle", cfg.angles, "alpha,beta,gamma (repeatable)");
    add("transform", "spinor to scalar wavefunction samples")->add_option("--input", cfg.input, "spinor JSON");
    add("rotate-2pi", "scalar/spinor behavior under a 2pi lab rotation");
    add("curvature", "Riemann and Weyl curvature, Laplace-Beltrami spectrum");
    add("evolve", "spectral time evolution")->add_option("--config", cfg.config, "run JSON");
    add("verify-madelung", "polar equations along an evolution, grid convergence")
        ->add_option("--config", cfg.config, "run JSON");
    add("exchange-phase", "monotone exchange of frame pairs")->add_option("--frames", cfg.frames, "frame pairs JSON");
    add("symmetrize", "N-particle (anti)symmetrization")->add_option("--input", cfg.input, "states JSON");
    add("verify-all", "every check for one spin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        std::stringstream ss(grid);
        std::string item;
        std::vector<int> n;
        while (std::getline(ss, item, ',')) n.push_back(std::stoi(item));
        if (n.size() != 3) throw ConfigError("");
        cfg.n_alpha = n[0];
        cfg.n_beta = n[1];
        cfg.n_gamma = n[2];
    } catch (const std::exception&) {
        err << "error: --grid expects NA,NB,NG, got '" << grid << "'\n";
        return kExitUsage;
    }

    try {
        const RunResult r = run(cfg);
        for (const auto& c : r.report.checks()) {
            out << (c.pass ? "pass " : "FAIL ") << c.name << " = " << c.value << "\n";
        }
        if (!r.report.error().empty()) err << "error: " << r.report.error() << "\n";
        out << "status: " << (r.exit_code == kExitPass ? "pass" : r.exit_code == kExitCheckFailed ? "fail" : "error")
            << " (" << (fs::path(cfg.out_dir) / "report.json").string() << ")\n";
        return r.exit_code;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace spinframe::cli

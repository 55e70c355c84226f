#include "spinframe/cli.hpp"
#include "spinframe/error.hpp"
#include "spinframe/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinframe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path = fs::temp_directory_path() / ("spinframe_cli_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "spinframe");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& file) { return nlohmann::json::parse(slurp(file)); }

void write_file(const std::string& file, const std::string& text) { std::ofstream(file) << text; }

}  // namespace

TEST_CASE("report basics") {
    Report r("demo");
    r.add(make_check("demo.a", 1e-3, 1e-2));
    CHECK(r.pass());
    CHECK_THROWS_AS(r.add(make_check("demo.a", 0.0, 1.0)), std::logic_error);
    CHECK_FALSE(make_check("demo.nan", std::nan(""), 1.0).pass);
    CHECK_FALSE(make_check("demo.nan", std::nan(""), 1.0, Comparison::AtLeast).pass);
    CHECK(make_check("demo.ge", 4.0, 2.0, Comparison::AtLeast).pass);
    CHECK(make_check("demo.eq", -1.0, -1.0, Comparison::Equal).pass);
    CHECK_FALSE(make_check("demo.eq2", -1.0 + 1e-16, -1.0, Comparison::Equal).pass);

    const auto j = r.to_json();
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["status"] == "pass");
    r.add(make_check("demo.b", 2.0, 1.0));
    CHECK(r.to_json()["status"] == "fail");
    r.set_error("boom");
    CHECK(r.to_json()["status"] == "error");
    CHECK(r.to_json()["error"] == "boom");
}

TEST_CASE("exchange-phase reports the fermion sign") {
    TempDir d("exchange");
    const Outcome o = run_cli({"exchange-phase", "--spin", "1", "--out", d.path.string()});
    CHECK(o.code == cli::kExitPass);
    const auto rep = read_json(d / "report.json");
    CHECK(rep["schema"] == kReportSchema);
    CHECK(rep["subcommand"] == "exchange-phase");
    CHECK(rep["status"] == "pass");
    CHECK(rep["data"]["phase"] == -1);
    CHECK(rep["inputs"]["two_s"] == 1);
    CHECK(fs::exists(d / "exchange.csv"));
    CHECK(fs::exists(d / "timing.json"));
    CHECK(read_json(d / "timing.json").contains("wall_seconds"));

    TempDir e("exchange_int");
    CHECK(run_cli({"exchange-phase", "--spin", "2", "--out", e.path.string()}).code == cli::kExitPass);
    CHECK(read_json(e / "report.json")["data"]["phase"] == 1);
}

TEST_CASE("reports are deterministic") {
    TempDir a("det_a"), b("det_b");
    for (const std::string sub : {"wigner-table", "transform", "rotate-2pi", "curvature", "exchange-phase", "symmetrize"}) {
        REQUIRE(run_cli({sub, "--spin", "3", "--seed", "9", "--out", a.path.string()}).code == cli::kExitPass);
        REQUIRE(run_cli({"--out", b.path.string(), sub, "--seed", "9", "--spin", "3"}).code == cli::kExitPass);
        CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    }
}

TEST_CASE("every subcommand writes its artifacts") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
        {"wigner-table", {"wigner_table.csv"}},
        {"transform", {"scalar.csv"}},
        {"rotate-2pi", {"spinor_overlap.dat"}},
        {"curvature", {"curvature.csv", "lb_spectrum.dat", "weyl_profile.dat"}},
        {"evolve", {"timeseries.csv", "norm_drift.dat", "energy_drift.dat"}},
        {"verify-madelung", {"madelung.csv", "hje_convergence.dat", "continuity_convergence.dat"}},
        {"exchange-phase", {"exchange.csv"}},
        {"symmetrize", {"tensor.csv"}},
    };
    for (const auto& [sub, files] : expected) {
        TempDir d("artifacts");
        const Outcome o = run_cli({sub, "--spin", "1", "--out", d.path.string()});
        CHECK_MESSAGE(o.code == cli::kExitPass, sub, "\n", o.out, o.err);
        CHECK(o.out.find("status") != std::string::npos);
        for (const auto& f : files) CHECK_MESSAGE(fs::file_size(d / f) > 0, sub, " ", f);
        const auto rep = read_json(d / "report.json");
        CHECK(rep["subcommand"] == sub);
        for (const auto& c : rep["checks"]) {
            CHECK(c.contains("name"));
            CHECK(c.contains("value"));
            CHECK(c.contains("comparison"));
            CHECK(c.contains("tolerance"));
            CHECK(c["pass"] == true);
        }
    }
}

TEST_CASE("usage and configuration errors exit with 2") {
    TempDir d("usage");
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"no-such-command"}).code == cli::kExitUsage);
    CHECK(run_cli({"curvature", "--grid", "8,8", "--out", d.path.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"curvature", "--spin", "21", "--out", d.path.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"verify-madelung", "--refine", "2", "--out", d.path.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"curvature", "--a", "-1", "--out", d.path.string()}).code == cli::kExitUsage);
    CHECK(run_cli({"transform", "--input", d / "missing.json", "--out", d.path.string()}).code == cli::kExitUsage);

    write_file(d / "broken.json", "{\"two_s\": 1, \"components\": [[1, 0]");
    CHECK(run_cli({"transform", "--input", d / "broken.json", "--out", d.path.string()}).code == cli::kExitUsage);
    write_file(d / "short.json", "{\"two_s\": 1, \"components\": [[1, 0]]}");
    CHECK(run_cli({"transform", "--input", d / "short.json", "--out", d.path.string()}).code == cli::kExitUsage);
}

TEST_CASE("numerical errors exit with 3 and still write a report") {
    TempDir d("numerical");
    const Outcome o = run_cli({"curvature", "--grid", "4,4,4", "--out", d.path.string()});
    CHECK(o.code == cli::kExitNumerical);
    const auto rep = read_json(d / "report.json");
    CHECK(rep["status"] == "error");
    CHECK(rep["error"].get<std::string>().size() > 0);
}

TEST_CASE("input files") {
    TempDir d("inputs");
    write_file(d / "spinor.json", "{\"two_s\": 1, \"components\": [[0.6, 0], [0, 0.8]]}");
    Outcome o = run_cli({"transform", "--input", d / "spinor.json", "--out", d.path.string()});
    CHECK(o.code == cli::kExitPass);

    write_file(d / "frames.json", "[{\"a\": [0, 1, 0.3], \"b\": [1, 2, 1.7]}, {\"a\": [0.5, 0.5, 2], \"b\": [0.5, 0.5, 2]}]");
    o = run_cli({"exchange-phase", "--spin", "3", "--frames", d / "frames.json", "--out", d.path.string()});
    CHECK(o.code == cli::kExitPass);
    const auto rep = read_json(d / "report.json");
    CHECK(rep["data"]["pairs"] == 2);
    CHECK(rep["data"]["records"][0]["delta_gamma_a"].get<double>() == doctest::Approx(1.4));

    write_file(d / "states.json", "{\"two_s\": 1, \"modes\": 1, \"states\": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]]}");
    o = run_cli({"symmetrize", "--input", d / "states.json", "--out", d.path.string()});
    CHECK(o.code == cli::kExitPass);
    CHECK(read_json(d / "report.json")["data"]["input"]["is_zero"] == true);

    write_file(d / "evolve.json", "{\"two_s\": 0, \"modes\": [{\"two_j\": 0, \"two_m\": 0, \"amplitude\": 1}, "
                                  "{\"two_j\": 2, \"two_m\": 0, \"amplitude\": 0.5}], \"dt\": 0.02, \"steps\": 50}");
    o = run_cli({"evolve", "--spin", "0", "--config", d / "evolve.json", "--out", d.path.string()});
    CHECK(o.code == cli::kExitPass);
}

TEST_CASE("environment variables supply defaults") {
    TempDir d("env");
    ::setenv("SPINFRAME_SPIN", "3", 1);
    ::setenv("SPINFRAME_OUT", d.path.c_str(), 1);
    const Outcome o = run_cli({"exchange-phase"});
    ::unsetenv("SPINFRAME_SPIN");
    ::unsetenv("SPINFRAME_OUT");
    CHECK(o.code == cli::kExitPass);
    CHECK(read_json(d / "report.json")["inputs"]["two_s"] == 3);
}

TEST_CASE("verify-all") {
    TempDir d("all");
    const Outcome o = run_cli({"verify-all", "--spin", "2", "--out", d.path.string()});
    CHECK_MESSAGE(o.code == cli::kExitPass, o.out);
    const auto rep = read_json(d / "report.json");
    CHECK(rep["status"] == "pass");
    for (const char* suite : {"wigner", "transform", "rotation", "geometry", "laplacian", "weyl", "evolve", "madelung",
                              "exchange", "statistics"})
        CHECK_MESSAGE(rep["data"].contains(suite), suite);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "helpers.hpp"
#include "mtcavity/config.hpp"
#include "mtcavity/errors.hpp"
#include "mtcavity/io.hpp"
#include "mtcavity/runner.hpp"

using namespace mtcavity;
namespace fs = std::filesystem;
using testutil::make_temp_dir;
using testutil::slurp;
using testutil::spit;

namespace {

const char* kSpectrumText = R"({
  "command": "spectrum",
  "spectrum": {
    "omega_c": 10.0,
    "omega_0": 10.0,
    "lambda": 0.5,
    "n_emitters": 16,
    "q_factor": 200.0
  }
})";

const char* kSweepText = R"({
  "command": "sweep",
  "sweep": {
    "axis": "spectrum.n_emitters",
    "values": [1, 4, 9, 16, 25, 36, 49, 64],
    "command": "spectrum"
  },
  "spectrum": {
    "omega_c": 10.0,
    "omega_0": 10.0,
    "lambda": 0.5,
    "q_factor": 100.0
  }
})";

RunSummary run_into(const std::string& text, const std::string& dir, int workers = 1) {
    RunnerOptions opts;
    opts.output_dir_override = dir;
    opts.workers = workers;
    return run(parse_config(text), opts);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MTCAVITY_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("spectrum run writes curve, manifest and timing") {
    const std::string dir = make_temp_dir("spectrum");
    RunSummary s = run_into(kSpectrumText, dir);
    CHECK(s.output_dir == dir);
    CHECK(s.summary_name == "splitting");
    CHECK(testutil::close_rel(s.summary_value, 2.0 * 0.5 * 4.0, 1e-9));
    REQUIRE(s.artifacts.size() == 2);
    CHECK(s.artifacts[0] == "spectrum.csv");
    CHECK(s.artifacts[1] == "manifest.json");
    CHECK(fs::exists(dir + "/spectrum.csv"));
    CHECK(fs::exists(dir + "/manifest.json"));
    CHECK(fs::exists(dir + "/timing.json"));

    const std::string csv = slurp(dir + "/spectrum.csv");
    CHECK(csv.rfind("omega,absorption\n", 0) == 0);

    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["command"] == "spectrum");
    CHECK(manifest["version"].is_string());
    CHECK(manifest["outputs"]["dense"]["n_bright"] == 2);
    CHECK(manifest["outputs"]["dense"]["n_dark"] == 15);
    CHECK(manifest["outputs"]["route_gap"].get<double>() <= 1e-9);
    // the embedded config re-parses to the same canonical form
    RunConfig c = parse_config(manifest["config"].dump());
    CHECK(render_config(c) == render_config(parse_config(kSpectrumText)));
}

TEST_CASE("manifest keys are sorted") {
    const std::string dir = make_temp_dir("sorted");
    run_into(kSpectrumText, dir);
    const std::string m = slurp(dir + "/manifest.json");
    const auto a = m.find("\"artifacts\"");
    const auto b = m.find("\"command\"");
    const auto c = m.find("\"config\"");
    const auto d = m.find("\"outputs\"");
    const auto e = m.find("\"version\"");
    REQUIRE(a != std::string::npos);
    REQUIRE(e != std::string::npos);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(c < d);
    CHECK(d < e);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string d1 = make_temp_dir("rep1");
    const std::string d2 = make_temp_dir("rep2");
    run_into(kSpectrumText, d1);
    run_into(kSpectrumText, d2);
    CHECK(slurp(d1 + "/spectrum.csv") == slurp(d2 + "/spectrum.csv"));
    CHECK(slurp(d1 + "/manifest.json") == slurp(d2 + "/manifest.json"));
}

TEST_CASE("sweep artifacts do not depend on the worker count") {
    const std::string d1 = make_temp_dir("w1");
    const std::string d8 = make_temp_dir("w8");
    RunSummary s1 = run_into(kSweepText, d1, 1);
    RunSummary s8 = run_into(kSweepText, d8, 8);
    CHECK(s1.summary_value == 8.0);  // n_rows
    CHECK(s8.summary_value == 8.0);
    CHECK(slurp(d1 + "/sweep.csv") == slurp(d8 + "/sweep.csv"));
    CHECK(slurp(d1 + "/manifest.json") == slurp(d8 + "/manifest.json"));

    const std::string csv = slurp(d1 + "/sweep.csv");
    CHECK(csv.rfind("index,value,splitting,error\n", 0) == 0);
    // resonant splitting rows scale as sqrt N: first row N = 1 -> 1.0
    CHECK(csv.find("\n0,1,1,") != std::string::npos);
    auto manifest = nlohmann::json::parse(slurp(d1 + "/manifest.json"));
    CHECK(manifest["outputs"]["n_failed"] == 0);
}

TEST_CASE("sweep records per-row failures without aborting") {
    const char* text = R"({
  "command": "sweep",
  "sweep": {
    "axis": "spectrum.lambda",
    "values": [0.5, -1.0, 0.25],
    "command": "spectrum"
  },
  "spectrum": {"omega_c": 10.0, "omega_0": 10.0, "q_factor": 200.0, "lambda": 0.1}
})";
    const std::string dir = make_temp_dir("swfail");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_value == 3.0);
    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["n_failed"] == 1);
    CHECK(manifest["outputs"]["summaries"][1].is_null());
    const std::string csv = slurp(dir + "/sweep.csv");
    CHECK(csv.find("ValidationError") != std::string::npos);
}

TEST_CASE("a fractional value on an integer axis fails that row only") {
    const char* text = R"({
  "command": "sweep",
  "sweep": {
    "axis": "spectrum.n_emitters",
    "values": [4.0, 1.5],
    "command": "spectrum"
  },
  "spectrum": {"lambda": 0.5}
})";
    const std::string dir = make_temp_dir("swint");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_value == 2.0);  // both rows accounted for
    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["n_failed"] == 1);
    // 2 lambda sqrt(4) up to eigensolver roundoff
    CHECK(testutil::close(manifest["outputs"]["summaries"][0].get<double>(), 2.0, 1e-12));
    CHECK(manifest["outputs"]["summaries"][1].is_null());
    CHECK(slurp(dir + "/sweep.csv").find("ValidationError") != std::string::npos);
}

TEST_CASE("sweeping an unknown axis is rejected") {
    const char* text = R"({
  "command": "sweep",
  "sweep": {
    "axis": "spectrum.coupling",
    "values": [1.0],
    "command": "spectrum"
  },
  "spectrum": {"lambda": 0.5}
})";
    const std::string dir = make_temp_dir("swaxis");
    CHECK_THROWS_AS(run_into(text, dir), ValidationError);
}

TEST_CASE("simulate writes trajectory and field dumps") {
    const char* text = R"({
  "command": "simulate",
  "simulate": {
    "potential": [0.0, 0.0, 0.1875, -0.625, 0.375],
    "gamma": 0.75,
    "velocity": 0.5,
    "dx": 0.02,
    "dt": 0.01,
    "n_nodes": 1201,
    "t_final": 4.0,
    "stride": 50,
    "dump_stride": 200
  }
})";
    const std::string dir = make_temp_dir("sim");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_name == "front_speed");
    CHECK(testutil::close(s.summary_value, 0.5, 0.02));

    const std::string traj = slurp(dir + "/trajectory.csv");
    CHECK(traj.rfind("t,front,energy,maxu\n", 0) == 0);
    CHECK(fs::exists(dir + "/fields_000000.csv"));
    const std::string fields = slurp(dir + "/fields_000000.csv");
    CHECK(fields.rfind("x,u,udot\n", 0) == 0);

    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["family"] == "logistic");
    CHECK(testutil::close(manifest["outputs"]["rho"].get<double>(), 0.5, 1e-9));
}

TEST_CASE("travelwave writes the profile and its residual") {
    const char* text = R"({
  "command": "travelwave",
  "travelwave": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25]
  }
})";
    const std::string dir = make_temp_dir("tw");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_name == "residual");
    CHECK(s.summary_value <= 1e-10);
    const std::string csv = slurp(dir + "/profile.csv");
    CHECK(csv.rfind("xi,u\n", 0) == 0);
    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["family"] == "tanh");
    CHECK(testutil::close(manifest["outputs"]["amplitude"].get<double>(), 2.0, 1e-9));
}

TEST_CASE("correct reports the smeared amplitude") {
    const char* text = R"({
  "command": "correct",
  "correct": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "kernel": {"kind": "uniform", "variance": 0.1}
  }
})";
    const std::string dir = make_temp_dir("corr");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_name == "amplitude");
    CHECK(testutil::close(s.summary_value, 2.0 * std::sqrt(0.7), 1e-7));
    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["converged"] == true);
    CHECK(manifest["outputs"]["residual"].get<double>() <= 1e-6);
}

TEST_CASE("estimate emits its report through the manifest") {
    const char* text = R"({
  "command": "estimate",
  "estimate": {"cavity_volume": 4.4e-21, "n_coherent": 119}
})";
    const std::string dir = make_temp_dir("est");
    RunSummary s = run_into(text, dir);
    CHECK(s.summary_name == "collective_coupling");
    CHECK(testutil::close_rel(s.summary_value, 3.0056e11, 1e-4));
    REQUIRE(s.artifacts.size() == 1);
    CHECK(s.artifacts[0] == "manifest.json");
    auto manifest = nlohmann::json::parse(slurp(dir + "/manifest.json"));
    CHECK(manifest["outputs"]["feasible"] == true);
    CHECK(manifest["outputs"]["fields"]["dipole"]["unit"] == "C m");
}

TEST_CASE("output directory resolution order") {
    RunConfig c = parse_config(kSpectrumText);
    RunnerOptions opts;

    unsetenv("MTCAVITY_OUT");
    CHECK(resolve_output_dir(c, opts) == ".");
    c.output_dir = "from_config";
    CHECK(resolve_output_dir(c, opts) == "from_config");
    setenv("MTCAVITY_OUT", "from_env", 1);
    CHECK(resolve_output_dir(c, opts) == "from_env");
    opts.output_dir_override = "from_flag";
    CHECK(resolve_output_dir(c, opts) == "from_flag");
    unsetenv("MTCAVITY_OUT");
}

TEST_CASE("error kinds map onto process exit codes") {
    CHECK(exit_code_for(ValidationError("x")) == 2);
    CHECK(exit_code_for(ParseError("x", 1, 1)) == 2);
    CHECK(exit_code_for(MissingOpenParameter("x")) == 2);
    CHECK(exit_code_for(IoError("x")) == 4);
    CHECK(exit_code_for(NumericalBlowup("x")) == 3);
    CHECK(exit_code_for(NoConnection("x")) == 3);
    CHECK(exit_code_for(GridTooCoarse("x")) == 3);
}

TEST_CASE("cli round trip") {
    const std::string dir = make_temp_dir("cli");
    const std::string cfg = dir + "/run.json";
    spit(cfg, kSpectrumText);

    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("spectrum --config " + cfg + " --out " + dir + "/out") == 0);
    CHECK(fs::exists(dir + "/out/spectrum.csv"));
    CHECK(fs::exists(dir + "/out/manifest.json"));

    // config names a different command than the one invoked
    CHECK(run_cli("travelwave --config " + cfg + " --out " + dir + "/o2") == 2);
    // malformed JSON
    spit(dir + "/bad.json", "{ nope");
    CHECK(run_cli("spectrum --config " + dir + "/bad.json") == 2);
    // unreadable config path
    CHECK(run_cli("spectrum --config " + dir + "/absent.json") == 4);
    // missing required flag
    CHECK(run_cli("spectrum") == 2);
}

TEST_CASE("cli maps numerical failures to exit 3") {
    const std::string dir = make_temp_dir("cli3");
    const std::string cfg = dir + "/run.json";
    // equal wells with damping: the connection cannot exist at fixed rho
    spit(cfg, R"({
  "command": "travelwave",
  "travelwave": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "gamma": 0.5,
    "velocity": 0.5
  }
})");
    CHECK(run_cli("travelwave --config " + cfg + " --out " + dir + "/out") == 3);
}

TEST_CASE("cli honours the output environment variable") {
    const std::string dir = make_temp_dir("clienv");
    const std::string cfg = dir + "/run.json";
    spit(cfg, kSpectrumText);
    const std::string cmd = "MTCAVITY_OUT=" + dir + "/envout " + MTCAVITY_BIN +
                            " spectrum --config " + cfg + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(dir + "/envout/spectrum.csv"));
}

TEST_CASE("cli sweep determinism across worker counts") {
    const std::string dir = make_temp_dir("clisweep");
    const std::string cfg = dir + "/run.json";
    spit(cfg, kSweepText);
    CHECK(run_cli("sweep --config " + cfg + " --out " + dir + "/a --workers 1") == 0);
    CHECK(run_cli("sweep --config " + cfg + " --out " + dir + "/b --workers 8") == 0);
    CHECK(slurp(dir + "/a/sweep.csv") == slurp(dir + "/b/sweep.csv"));
    CHECK(slurp(dir + "/a/manifest.json") == slurp(dir + "/b/manifest.json"));
}

#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "mtcavity/config.hpp"
#include "mtcavity/errors.hpp"

using namespace mtcavity;

namespace {

std::string spectrum_text(const std::string& extra = "") {
    return std::string(R"({
  "command": "spectrum",
  "spectrum": {
    "omega_c": 10.0,
    "omega_0": 10.0,
    "lambda": 0.5,
    "n_emitters": 16)") +
           extra + "\n  }\n}\n";
}

}  // namespace

TEST_CASE("command names round-trip") {
    for (Command c : {Command::simulate, Command::travelwave, Command::correct, Command::spectrum,
                      Command::estimate, Command::sweep})
        CHECK(parse_command(command_name(c)) == c);
    CHECK_THROWS_AS(parse_command("simulat"), ValidationError);
}

TEST_CASE("parse, render, parse is a fixed point") {
    RunConfig c = parse_config(spectrum_text());
    const std::string rendered = render_config(c);
    RunConfig c2 = parse_config(rendered);
    CHECK(render_config(c2) == rendered);
    REQUIRE(c.spectrum.has_value());
    CHECK(c.spectrum->omega_c == 10.0);
    CHECK(c.spectrum->n_emitters == 16);
    CHECK(c.spectrum->lambda == 0.5);
}

TEST_CASE("rendering materialises the defaults") {
    RunConfig c = parse_config(spectrum_text());
    const std::string rendered = render_config(c);
    CHECK(rendered.find("\"n_points\": 2001") != std::string::npos);
    CHECK(rendered.find("\"convention\": \"standard\"") != std::string::npos);
    // lossless cavity: q_factor stays absent rather than printing inf
    CHECK(rendered.find("q_factor") == std::string::npos);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        parse_config(spectrum_text(",\n    \"lamda\": 0.1"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown key 'lamda'") != std::string::npos);
        CHECK(msg.find("did you mean 'lambda'") != std::string::npos);
    }
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_config("{\n  \"command\": \"spectrum\",\n  bad\n}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 3);
    }
}

TEST_CASE("command section must be present") {
    CHECK_THROWS_AS(parse_config(R"({"command": "spectrum"})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"spectrum": {"lambda": 1.0}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"command": "warp"})"), ValidationError);
}

TEST_CASE("numbers are type-checked") {
    CHECK_THROWS_AS(parse_config(spectrum_text(",\n    \"n_points\": 100.5")), ValidationError);
    CHECK_THROWS_AS(parse_config(spectrum_text(",\n    \"n_points\": -3")), ValidationError);
    CHECK_THROWS_AS(parse_config(spectrum_text(",\n    \"omega_c\": \"ten\"")), ValidationError);
    // integral floats are accepted for counts
    RunConfig c = parse_config(spectrum_text(",\n    \"n_points\": 101.0"));
    CHECK(c.spectrum->n_points == 101);
}

TEST_CASE("spectrum window must come as a pair") {
    CHECK_THROWS_AS(parse_config(spectrum_text(",\n    \"window_lo\": 5.0")), ValidationError);
    CHECK_THROWS_AS(parse_config(spectrum_text(",\n    \"window_lo\": 5.0, \"window_hi\": 4.0")),
                    ValidationError);
    RunConfig c = parse_config(spectrum_text(",\n    \"window_lo\": 5.0, \"window_hi\": 15.0"));
    CHECK(c.spectrum->window_lo == 5.0);
    CHECK(c.spectrum->window_hi == 15.0);
}

TEST_CASE("simulate section validates the CFL bound at parse time") {
    const std::string text = R"({
  "command": "simulate",
  "simulate": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "dx": 0.01,
    "dt": 0.02
  }
})";
    CHECK_THROWS_AS(parse_config(text), ValidationError);
}

TEST_CASE("travelwave section validates the subsonic bound at parse time") {
    const std::string text = R"({
  "command": "travelwave",
  "travelwave": {
    "potential": [0.0, 0.0, 0.1875, -0.625, 0.375],
    "gamma": 0.75,
    "velocity": 1.0
  }
})";
    CHECK_THROWS_AS(parse_config(text), ValidationError);
}

TEST_CASE("travelwave round-trips with speed selection") {
    const std::string text = R"({
  "command": "travelwave",
  "travelwave": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "select_speed": true
  }
})";
    RunConfig c = parse_config(text);
    REQUIRE(c.travelwave.has_value());
    CHECK(c.travelwave->select_speed);
    CHECK(render_config(parse_config(render_config(c))) == render_config(c));
}

TEST_CASE("kernel specifications are strict per kind") {
    const char* head = R"({
  "command": "correct",
  "correct": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "kernel": )";
    const char* tail = "\n  }\n}\n";

    RunConfig uni =
        parse_config(std::string(head) + R"({"kind": "uniform", "variance": 0.1})" + tail);
    REQUIRE(uni.correct.has_value());
    CHECK(uni.correct->kernel.kind() == SmearingKernel::Kind::uniform);
    CHECK(uni.correct->kernel.amplitude() == 0.1);

    RunConfig bump = parse_config(
        std::string(head) + R"({"kind": "sech2_bump", "amplitude": 0.1, "width": 2.0})" + tail);
    CHECK(bump.correct->kernel.kind() == SmearingKernel::Kind::sech2_bump);
    CHECK(render_config(parse_config(render_config(bump))) == render_config(bump));

    // missing variance
    CHECK_THROWS_AS(parse_config(std::string(head) + R"({"kind": "uniform"})" + tail),
                    ValidationError);
    // foreign key for the kind
    CHECK_THROWS_AS(parse_config(std::string(head) +
                                 R"({"kind": "sech2_bump", "variance": 0.1, "width": 2.0})" +
                                 tail),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(std::string(head) + R"({"kind": "nonsense"})" + tail),
                    ValidationError);
    // negative variance surfaces as a config error
    CHECK_THROWS_AS(
        parse_config(std::string(head) + R"({"kind": "uniform", "variance": -0.1})" + tail),
        ValidationError);
}

TEST_CASE("estimate section round-trips the open parameters") {
    const std::string text = R"({
  "command": "estimate",
  "estimate": {
    "cavity_volume": 4.4e-21,
    "n_coherent": 119
  }
})";
    RunConfig c = parse_config(text);
    REQUIRE(c.estimate.has_value());
    CHECK(c.estimate->inputs.cavity_volume == 4.4e-21);
    CHECK(c.estimate->inputs.n_coherent == 119.0);
    CHECK(render_config(parse_config(render_config(c))) == render_config(c));
}

TEST_CASE("sweep configuration") {
    const std::string text = R"({
  "command": "sweep",
  "sweep": {
    "axis": "spectrum.n_emitters",
    "values": [1, 4, 9, 16],
    "command": "spectrum"
  },
  "spectrum": {
    "omega_c": 10.0,
    "omega_0": 10.0,
    "lambda": 0.5
  }
})";
    RunConfig c = parse_config(text);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->axis == "spectrum.n_emitters");
    CHECK(c.sweep->values.size() == 4);
    CHECK(c.sweep->command == Command::spectrum);
    CHECK(render_config(parse_config(render_config(c))) == render_config(c));
}

TEST_CASE("sweep rejections") {
    // nested sweep
    CHECK_THROWS_AS(parse_config(R"({
  "command": "sweep",
  "sweep": {"axis": "sweep.values", "values": [1], "command": "sweep"}
})"),
                    ValidationError);
    // missing target section
    CHECK_THROWS_AS(parse_config(R"({
  "command": "sweep",
  "sweep": {"axis": "spectrum.lambda", "values": [1], "command": "spectrum"}
})"),
                    ValidationError);
    // axis must point into a command section
    CHECK_THROWS_AS(parse_config(R"({
  "command": "sweep",
  "sweep": {"axis": "output_dir", "values": [1], "command": "spectrum"},
  "spectrum": {"lambda": 0.5}
})"),
                    ValidationError);
    // empty values
    CHECK_THROWS_AS(parse_config(R"({
  "command": "sweep",
  "sweep": {"axis": "spectrum.lambda", "values": [], "command": "spectrum"},
  "spectrum": {"lambda": 0.5}
})"),
                    ValidationError);
}

TEST_CASE("boundary names parse and render") {
    const std::string text = R"({
  "command": "simulate",
  "simulate": {
    "potential": [0.25, 0.0, -0.5, 0.0, 0.25],
    "boundary": "zero_gradient"
  }
})";
    RunConfig c = parse_config(text);
    CHECK(c.simulate->boundary == BoundaryKind::zero_gradient);
    CHECK(render_config(c).find("\"boundary\": \"zero_gradient\"") != std::string::npos);
    CHECK_THROWS_AS(parse_config(R"({
  "command": "simulate",
  "simulate": {"potential": [0.25, 0.0, -0.5, 0.0, 0.25], "boundary": "pinned"}
})"),
                    ValidationError);
}

TEST_CASE("extra sections are parsed and preserved even when unused") {
    const std::string text = R"({
  "command": "spectrum",
  "spectrum": {"lambda": 0.5},
  "estimate": {"cavity_volume": 4.4e-21, "n_coherent": 119}
})";
    RunConfig c = parse_config(text);
    CHECK(c.spectrum.has_value());
    CHECK(c.estimate.has_value());
    // invalid content in an unused section still fails fast
    CHECK_THROWS_AS(parse_config(R"({
  "command": "spectrum",
  "spectrum": {"lambda": 0.5},
  "estimate": {"temperature": -5}
})"),
                    ValidationError);
}

TEST_CASE("output_dir is carried through") {
    RunConfig c = parse_config(R"({
  "command": "spectrum",
  "output_dir": "results/run1",
  "spectrum": {"lambda": 0.5}
})");
    CHECK(c.output_dir == "results/run1");
    CHECK(render_config(c).find("\"output_dir\": \"results/run1\"") != std::string::npos);
}

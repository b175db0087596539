#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mtcavity/cavity.hpp"
#include "mtcavity/chain.hpp"
#include "mtcavity/estimator.hpp"
#include "mtcavity/polynomial.hpp"
#include "mtcavity/quantum_correction.hpp"

namespace mtcavity {

enum class Command { simulate, travelwave, correct, spectrum, estimate, sweep };

std::string command_name(Command c);
Command parse_command(const std::string& name);  // ValidationError on unknown names

struct SimulateConfig {
    Polynomial potential;
    double gamma = 0.0;
    double force = 0.0;
    double dx = 0.01;
    double dt = 0.005;
    BoundaryKind boundary = BoundaryKind::fixed_to_asymptote;
    double velocity = 0.0;
    std::size_t n_nodes = 4001;
    double t_final = 10.0;
    std::size_t stride = 100;
    std::size_t dump_stride = 0;
    double search_lo = -10.0;
    double search_hi = 10.0;
    double shoot_tol = 1.0e-8;
};

struct TravelwaveConfig {
    Polynomial potential;
    double gamma = 0.0;
    double force = 0.0;
    double velocity = 0.0;
    double search_lo = -10.0;
    double search_hi = 10.0;
    double shoot_tol = 1.0e-8;
    bool select_speed = false;  // bisect the damping instead of using gamma/velocity
};

struct CorrectConfig {
    Polynomial potential;
    double gamma = 0.0;
    double force = 0.0;
    double velocity = 0.0;
    double search_lo = -10.0;
    double search_hi = 10.0;
    SmearingKernel kernel = SmearingKernel::none();
    double tol = 1.0e-8;
    int max_iterations = 8;
};

struct SpectrumConfig {
    double omega_c = 1.0;
    double omega_0 = 1.0;
    double lambda = 0.0;
    std::size_t n_emitters = 1;
    double q_factor = std::numeric_limits<double>::infinity();  // absent key = lossless
    PeakConvention convention = PeakConvention::standard;
    std::optional<double> window_lo;  // default: padded window around the doublet
    std::optional<double> window_hi;
    std::size_t n_points = 2001;
};

struct EstimateConfig {
    EstimateInputs inputs;
};

struct SweepConfig {
    std::string axis;  // dotted path into the rendered config, e.g. "spectrum.n_emitters"
    std::vector<double> values;
    Command command = Command::spectrum;  // sub-command run per value (not sweep)
};

struct RunConfig {
    Command command = Command::simulate;
    std::string output_dir;  // empty = unset; the runner falls back to env, then "."
    std::optional<SimulateConfig> simulate;
    std::optional<TravelwaveConfig> travelwave;
    std::optional<CorrectConfig> correct;
    std::optional<SpectrumConfig> spectrum;
    std::optional<EstimateConfig> estimate;
    std::optional<SweepConfig> sweep;
};

// Strict JSON: unknown keys are rejected (with a nearest-key suggestion),
// types are checked, and the section named by "command" must be present.
// Malformed JSON throws ParseError carrying line/column; everything else
// throws ValidationError.
RunConfig parse_config(const std::string& text);

// Canonical JSON (sorted keys, defaults materialised, two-space indent).
// parse_config(render_config(c)) reproduces c; comparing rendered strings is
// the supported equality test for configs.
std::string render_config(const RunConfig& config);

}  // namespace mtcavity

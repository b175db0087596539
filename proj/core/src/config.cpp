#include "mtcavity/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcavity/errors.hpp"

namespace mtcavity {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggestion(const std::string& key, const std::vector<std::string>& allowed) {
    int best = 3;  // only offer suggestions within edit distance 2
    std::string pick;
    for (const auto& cand : allowed) {
        const int d = levenshtein(key, cand);
        if (d < best) {
            best = d;
            pick = cand;
        }
    }
    return pick;
}

void check_keys(const json& obj, const std::string& where, const std::vector<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) != allowed.end()) continue;
        std::string msg = "unknown key '" + item.key() + "' in '" + where + "'";
        const std::string near = suggestion(item.key(), allowed);
        if (!near.empty()) msg += "; did you mean '" + near + "'?";
        fail(msg);
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_double(const json& obj, const std::string& where, const char* key, double fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) fail("'" + std::string(key) + "' in '" + where + "' must be a number");
    return v->get<double>();
}

std::size_t get_size(const json& obj, const std::string& where, const char* key, std::size_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    const std::string what = "'" + std::string(key) + "' in '" + where + "' must be a non-negative integer";
    if (v->is_number_unsigned()) return v->get<std::size_t>();
    if (v->is_number_integer()) {
        const auto i = v->get<long long>();
        if (i < 0) fail(what);
        return static_cast<std::size_t>(i);
    }
    if (v->is_number_float()) {
        const double d = v->get<double>();
        if (d < 0.0 || d != std::floor(d)) fail(what);
        return static_cast<std::size_t>(d);
    }
    fail(what);
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail("'" + std::string(key) + "' in '" + where + "' must be a boolean");
    return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail("'" + std::string(key) + "' in '" + where + "' must be a string");
    return v->get<std::string>();
}

std::vector<double> require_number_array(const json& obj, const std::string& where, const char* key) {
    const json* v = find(obj, key);
    if (!v) fail("missing required key '" + std::string(key) + "' in '" + where + "'");
    if (!v->is_array() || v->empty())
        fail("'" + std::string(key) + "' in '" + where + "' must be a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(v->size());
    for (const auto& e : *v) {
        if (!e.is_number())
            fail("'" + std::string(key) + "' in '" + where + "' must be a non-empty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Polynomial require_polynomial(const json& obj, const std::string& where, const char* key) {
    const auto coeffs = require_number_array(obj, where, key);
    try {
        return Polynomial(coeffs);
    } catch (const Error& e) {
        fail("'" + std::string(key) + "' in '" + where + "': " + e.what());
    }
}

BoundaryKind parse_boundary(const std::string& name, const std::string& where) {
    if (name == "fixed_to_asymptote") return BoundaryKind::fixed_to_asymptote;
    if (name == "zero_gradient") return BoundaryKind::zero_gradient;
    fail("'boundary' in '" + where +
         "' must be 'fixed_to_asymptote' or 'zero_gradient' (got '" + name + "')");
}

std::string boundary_name(BoundaryKind kind) {
    return kind == BoundaryKind::fixed_to_asymptote ? "fixed_to_asymptote" : "zero_gradient";
}

PeakConvention parse_convention(const std::string& name, const std::string& where) {
    if (name == "standard") return PeakConvention::standard;
    if (name == "paper") return PeakConvention::paper;
    fail("'convention' in '" + where + "' must be 'standard' or 'paper' (got '" + name + "')");
}

std::string convention_name(PeakConvention c) {
    return c == PeakConvention::standard ? "standard" : "paper";
}

void check_subsonic(double velocity, const std::string& where) {
    if (!(std::abs(velocity) < 1.0))
        fail("'velocity' in '" + where + "' must satisfy |v| < 1");
}

void check_window(double lo, double hi, const std::string& where) {
    if (!(lo < hi)) fail("'search_lo' in '" + where + "' must be below 'search_hi'");
}

SimulateConfig parse_simulate(const json& j) {
    check_keys(j, "simulate",
               {"potential", "gamma", "force", "dx", "dt", "boundary", "velocity", "n_nodes",
                "t_final", "stride", "dump_stride", "search_lo", "search_hi", "shoot_tol"});
    SimulateConfig c;
    c.potential = require_polynomial(j, "simulate", "potential");
    c.gamma = get_double(j, "simulate", "gamma", c.gamma);
    c.force = get_double(j, "simulate", "force", c.force);
    c.dx = get_double(j, "simulate", "dx", c.dx);
    c.dt = get_double(j, "simulate", "dt", c.dt);
    c.boundary = parse_boundary(get_string(j, "simulate", "boundary", boundary_name(c.boundary)),
                                "simulate");
    c.velocity = get_double(j, "simulate", "velocity", c.velocity);
    c.n_nodes = get_size(j, "simulate", "n_nodes", c.n_nodes);
    c.t_final = get_double(j, "simulate", "t_final", c.t_final);
    c.stride = get_size(j, "simulate", "stride", c.stride);
    c.dump_stride = get_size(j, "simulate", "dump_stride", c.dump_stride);
    c.search_lo = get_double(j, "simulate", "search_lo", c.search_lo);
    c.search_hi = get_double(j, "simulate", "search_hi", c.search_hi);
    c.shoot_tol = get_double(j, "simulate", "shoot_tol", c.shoot_tol);

    check_subsonic(c.velocity, "simulate");
    check_window(c.search_lo, c.search_hi, "simulate");
    if (c.n_nodes < 3) fail("'n_nodes' in 'simulate' must be at least 3");
    if (c.stride < 1) fail("'stride' in 'simulate' must be at least 1");
    if (!(c.t_final > 0.0)) fail("'t_final' in 'simulate' must be positive");
    if (!(c.shoot_tol > 0.0)) fail("'shoot_tol' in 'simulate' must be positive");
    ChainParams params{c.potential, c.gamma, c.force, c.dx, c.dt, c.boundary};
    try {
        params.validate();
    } catch (const Error& e) {
        fail(std::string("'simulate': ") + e.what());
    }
    return c;
}

TravelwaveConfig parse_travelwave(const json& j) {
    check_keys(j, "travelwave",
               {"potential", "gamma", "force", "velocity", "search_lo", "search_hi", "shoot_tol",
                "select_speed"});
    TravelwaveConfig c;
    c.potential = require_polynomial(j, "travelwave", "potential");
    c.gamma = get_double(j, "travelwave", "gamma", c.gamma);
    c.force = get_double(j, "travelwave", "force", c.force);
    c.velocity = get_double(j, "travelwave", "velocity", c.velocity);
    c.search_lo = get_double(j, "travelwave", "search_lo", c.search_lo);
    c.search_hi = get_double(j, "travelwave", "search_hi", c.search_hi);
    c.shoot_tol = get_double(j, "travelwave", "shoot_tol", c.shoot_tol);
    c.select_speed = get_bool(j, "travelwave", "select_speed", c.select_speed);

    check_subsonic(c.velocity, "travelwave");
    check_window(c.search_lo, c.search_hi, "travelwave");
    if (!(c.gamma >= 0.0)) fail("'gamma' in 'travelwave' must be non-negative");
    if (!(c.shoot_tol > 0.0)) fail("'shoot_tol' in 'travelwave' must be positive");
    return c;
}

SmearingKernel parse_kernel(const json& j, const std::string& where) {
    if (!j.is_object()) fail("'kernel' in '" + where + "' must be an object");
    const std::string scope = where + ".kernel";
    const std::string kind = get_string(j, scope, "kind", "");
    if (kind.empty()) fail("missing required key 'kind' in '" + scope + "'");
    try {
        if (kind == "none") {
            check_keys(j, scope, {"kind"});
            return SmearingKernel::none();
        }
        if (kind == "uniform") {
            check_keys(j, scope, {"kind", "variance"});
            const json* v = find(j, "variance");
            if (!v) fail("missing required key 'variance' in '" + scope + "'");
            return SmearingKernel::uniform(get_double(j, scope, "variance", 0.0));
        }
        if (kind == "sech2_bump") {
            check_keys(j, scope, {"kind", "amplitude", "width"});
            const json* a = find(j, "amplitude");
            const json* w = find(j, "width");
            if (!a) fail("missing required key 'amplitude' in '" + scope + "'");
            if (!w) fail("missing required key 'width' in '" + scope + "'");
            return SmearingKernel::sech2_bump(get_double(j, scope, "amplitude", 0.0),
                                              get_double(j, scope, "width", 1.0));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        fail("'" + scope + "': " + e.what());
    }
    fail("'kind' in '" + scope + "' must be 'none', 'uniform' or 'sech2_bump' (got '" + kind + "')");
}

json render_kernel(const SmearingKernel& k) {
    json j;
    switch (k.kind()) {
        case SmearingKernel::Kind::none:
            j["kind"] = "none";
            break;
        case SmearingKernel::Kind::uniform:
            j["kind"] = "uniform";
            j["variance"] = k.amplitude();
            break;
        case SmearingKernel::Kind::sech2_bump:
            j["kind"] = "sech2_bump";
            j["amplitude"] = k.amplitude();
            j["width"] = k.width();
            break;
    }
    return j;
}

CorrectConfig parse_correct(const json& j) {
    check_keys(j, "correct",
               {"potential", "gamma", "force", "velocity", "search_lo", "search_hi", "kernel",
                "tol", "max_iterations"});
    CorrectConfig c;
    c.potential = require_polynomial(j, "correct", "potential");
    c.gamma = get_double(j, "correct", "gamma", c.gamma);
    c.force = get_double(j, "correct", "force", c.force);
    c.velocity = get_double(j, "correct", "velocity", c.velocity);
    c.search_lo = get_double(j, "correct", "search_lo", c.search_lo);
    c.search_hi = get_double(j, "correct", "search_hi", c.search_hi);
    if (const json* k = find(j, "kernel")) c.kernel = parse_kernel(*k, "correct");
    c.tol = get_double(j, "correct", "tol", c.tol);
    const json* it = find(j, "max_iterations");
    if (it) c.max_iterations = static_cast<int>(get_size(j, "correct", "max_iterations", 8));

    check_subsonic(c.velocity, "correct");
    check_window(c.search_lo, c.search_hi, "correct");
    if (!(c.gamma >= 0.0)) fail("'gamma' in 'correct' must be non-negative");
    if (!(c.tol > 0.0)) fail("'tol' in 'correct' must be positive");
    if (c.max_iterations < 1) fail("'max_iterations' in 'correct' must be at least 1");
    return c;
}

SpectrumConfig parse_spectrum(const json& j) {
    check_keys(j, "spectrum",
               {"omega_c", "omega_0", "lambda", "n_emitters", "q_factor", "convention",
                "window_lo", "window_hi", "n_points"});
    SpectrumConfig c;
    c.omega_c = get_double(j, "spectrum", "omega_c", c.omega_c);
    c.omega_0 = get_double(j, "spectrum", "omega_0", c.omega_0);
    c.lambda = get_double(j, "spectrum", "lambda", c.lambda);
    c.n_emitters = get_size(j, "spectrum", "n_emitters", c.n_emitters);
    c.q_factor = get_double(j, "spectrum", "q_factor", c.q_factor);
    c.convention =
        parse_convention(get_string(j, "spectrum", "convention", convention_name(c.convention)),
                         "spectrum");
    if (find(j, "window_lo")) c.window_lo = get_double(j, "spectrum", "window_lo", 0.0);
    if (find(j, "window_hi")) c.window_hi = get_double(j, "spectrum", "window_hi", 0.0);
    c.n_points = get_size(j, "spectrum", "n_points", c.n_points);

    if (c.window_lo.has_value() != c.window_hi.has_value())
        fail("'spectrum' needs both 'window_lo' and 'window_hi' or neither");
    if (c.window_lo && !(*c.window_lo < *c.window_hi))
        fail("'window_lo' in 'spectrum' must be below 'window_hi'");
    if (c.n_points < 9) fail("'n_points' in 'spectrum' must be at least 9");
    CavityParams params;
    params.omega_c = c.omega_c;
    params.omega_0 = c.omega_0;
    params.lambda = c.lambda;
    params.n_emitters = c.n_emitters;
    params.q_factor = c.q_factor;
    params.convention = c.convention;
    try {
        params.validate();
    } catch (const Error& e) {
        fail(std::string("'spectrum': ") + e.what());
    }
    return c;
}

EstimateConfig parse_estimate(const json& j) {
    check_keys(j, "estimate",
               {"charge_count", "dipole_length", "eps_r", "track_length", "front_speed", "omega_c",
                "ring_time", "cavity_volume", "n_coherent", "temperature", "dipole_spacing",
                "collapse_lo", "collapse_hi"});
    EstimateConfig c;
    EstimateInputs& in = c.inputs;
    in.charge_count = get_double(j, "estimate", "charge_count", in.charge_count);
    in.dipole_length = get_double(j, "estimate", "dipole_length", in.dipole_length);
    in.eps_r = get_double(j, "estimate", "eps_r", in.eps_r);
    in.track_length = get_double(j, "estimate", "track_length", in.track_length);
    in.front_speed = get_double(j, "estimate", "front_speed", in.front_speed);
    in.omega_c = get_double(j, "estimate", "omega_c", in.omega_c);
    in.ring_time = get_double(j, "estimate", "ring_time", in.ring_time);
    if (find(j, "cavity_volume")) in.cavity_volume = get_double(j, "estimate", "cavity_volume", 0.0);
    if (find(j, "n_coherent")) in.n_coherent = get_double(j, "estimate", "n_coherent", 0.0);
    in.temperature = get_double(j, "estimate", "temperature", in.temperature);
    if (find(j, "dipole_spacing"))
        in.dipole_spacing = get_double(j, "estimate", "dipole_spacing", 0.0);
    in.collapse_lo = get_double(j, "estimate", "collapse_lo", in.collapse_lo);
    in.collapse_hi = get_double(j, "estimate", "collapse_hi", in.collapse_hi);
    try {
        in.validate();
    } catch (const Error& e) {
        fail(std::string("'estimate': ") + e.what());
    }
    return c;
}

SweepConfig parse_sweep(const json& j) {
    check_keys(j, "sweep", {"axis", "values", "command"});
    SweepConfig c;
    c.axis = get_string(j, "sweep", "axis", "");
    if (c.axis.empty()) fail("missing required key 'axis' in 'sweep'");
    c.values = require_number_array(j, "sweep", "values");
    const std::string sub = get_string(j, "sweep", "command", "");
    if (sub.empty()) fail("missing required key 'command' in 'sweep'");
    c.command = parse_command(sub);
    if (c.command == Command::sweep) fail("'command' in 'sweep' cannot be 'sweep'");

    const std::string head = c.axis.substr(0, c.axis.find('.'));
    if (head == "sweep" || head == "command" || head == "output_dir")
        fail("'axis' in 'sweep' must point into a command section (got '" + c.axis + "')");
    return c;
}

json render_simulate(const SimulateConfig& c) {
    json j;
    j["potential"] = c.potential.coeffs();
    j["gamma"] = c.gamma;
    j["force"] = c.force;
    j["dx"] = c.dx;
    j["dt"] = c.dt;
    j["boundary"] = boundary_name(c.boundary);
    j["velocity"] = c.velocity;
    j["n_nodes"] = c.n_nodes;
    j["t_final"] = c.t_final;
    j["stride"] = c.stride;
    j["dump_stride"] = c.dump_stride;
    j["search_lo"] = c.search_lo;
    j["search_hi"] = c.search_hi;
    j["shoot_tol"] = c.shoot_tol;
    return j;
}

json render_travelwave(const TravelwaveConfig& c) {
    json j;
    j["potential"] = c.potential.coeffs();
    j["gamma"] = c.gamma;
    j["force"] = c.force;
    j["velocity"] = c.velocity;
    j["search_lo"] = c.search_lo;
    j["search_hi"] = c.search_hi;
    j["shoot_tol"] = c.shoot_tol;
    j["select_speed"] = c.select_speed;
    return j;
}

json render_correct(const CorrectConfig& c) {
    json j;
    j["potential"] = c.potential.coeffs();
    j["gamma"] = c.gamma;
    j["force"] = c.force;
    j["velocity"] = c.velocity;
    j["search_lo"] = c.search_lo;
    j["search_hi"] = c.search_hi;
    j["kernel"] = render_kernel(c.kernel);
    j["tol"] = c.tol;
    j["max_iterations"] = c.max_iterations;
    return j;
}

json render_spectrum(const SpectrumConfig& c) {
    json j;
    j["omega_c"] = c.omega_c;
    j["omega_0"] = c.omega_0;
    j["lambda"] = c.lambda;
    j["n_emitters"] = c.n_emitters;
    if (std::isfinite(c.q_factor)) j["q_factor"] = c.q_factor;
    j["convention"] = convention_name(c.convention);
    if (c.window_lo) j["window_lo"] = *c.window_lo;
    if (c.window_hi) j["window_hi"] = *c.window_hi;
    j["n_points"] = c.n_points;
    return j;
}

json render_estimate(const EstimateConfig& c) {
    const EstimateInputs& in = c.inputs;
    json j;
    j["charge_count"] = in.charge_count;
    j["dipole_length"] = in.dipole_length;
    j["eps_r"] = in.eps_r;
    j["track_length"] = in.track_length;
    j["front_speed"] = in.front_speed;
    j["omega_c"] = in.omega_c;
    j["ring_time"] = in.ring_time;
    if (in.cavity_volume) j["cavity_volume"] = *in.cavity_volume;
    if (in.n_coherent) j["n_coherent"] = *in.n_coherent;
    j["temperature"] = in.temperature;
    if (in.dipole_spacing) j["dipole_spacing"] = *in.dipole_spacing;
    j["collapse_lo"] = in.collapse_lo;
    j["collapse_hi"] = in.collapse_hi;
    return j;
}

json render_sweep(const SweepConfig& c) {
    json j;
    j["axis"] = c.axis;
    j["values"] = c.values;
    j["command"] = command_name(c.command);
    return j;
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::travelwave: return "travelwave";
        case Command::correct: return "correct";
        case Command::spectrum: return "spectrum";
        case Command::estimate: return "estimate";
        case Command::sweep: return "sweep";
    }
    return "simulate";
}

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::simulate;
    if (name == "travelwave") return Command::travelwave;
    if (name == "correct") return Command::correct;
    if (name == "spectrum") return Command::spectrum;
    if (name == "estimate") return Command::estimate;
    if (name == "sweep") return Command::sweep;
    fail("unknown command '" + name +
         "'; expected one of simulate, travelwave, correct, spectrum, estimate, sweep");
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        int column = 1;
        const std::size_t stop = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(e.what(), line, column);
    }
    if (!root.is_object()) fail("config root must be a JSON object");
    check_keys(root, "config",
               {"command", "output_dir", "simulate", "travelwave", "correct", "spectrum",
                "estimate", "sweep"});

    RunConfig c;
    const std::string cmd = get_string(root, "config", "command", "");
    if (cmd.empty()) fail("missing required key 'command'");
    c.command = parse_command(cmd);
    c.output_dir = get_string(root, "config", "output_dir", "");

    auto section = [&](const char* key) -> const json* {
        const json* v = find(root, key);
        if (v && !v->is_object()) fail("'" + std::string(key) + "' must be an object");
        return v;
    };
    if (const json* j = section("simulate")) c.simulate = parse_simulate(*j);
    if (const json* j = section("travelwave")) c.travelwave = parse_travelwave(*j);
    if (const json* j = section("correct")) c.correct = parse_correct(*j);
    if (const json* j = section("spectrum")) c.spectrum = parse_spectrum(*j);
    if (const json* j = section("estimate")) c.estimate = parse_estimate(*j);
    if (const json* j = section("sweep")) c.sweep = parse_sweep(*j);

    auto need = [&](Command cmd_, bool present) {
        if (!present)
            fail("command '" + command_name(cmd_) + "' needs a '" + command_name(cmd_) +
                 "' section");
    };
    const Command effective = c.command == Command::sweep && c.sweep ? c.sweep->command : c.command;
    switch (c.command) {
        case Command::sweep:
            if (!c.sweep) fail("command 'sweep' needs a 'sweep' section");
            break;
        default:
            break;
    }
    switch (effective) {
        case Command::simulate: need(Command::simulate, c.simulate.has_value()); break;
        case Command::travelwave: need(Command::travelwave, c.travelwave.has_value()); break;
        case Command::correct: need(Command::correct, c.correct.has_value()); break;
        case Command::spectrum: need(Command::spectrum, c.spectrum.has_value()); break;
        case Command::estimate: need(Command::estimate, c.estimate.has_value()); break;
        case Command::sweep: break;
    }
    return c;
}

std::string render_config(const RunConfig& config) {
    json root;
    root["command"] = command_name(config.command);
    if (!config.output_dir.empty()) root["output_dir"] = config.output_dir;
    if (config.simulate) root["simulate"] = render_simulate(*config.simulate);
    if (config.travelwave) root["travelwave"] = render_travelwave(*config.travelwave);
    if (config.correct) root["correct"] = render_correct(*config.correct);
    if (config.spectrum) root["spectrum"] = render_spectrum(*config.spectrum);
    if (config.estimate) root["estimate"] = render_estimate(*config.estimate);
    if (config.sweep) root["sweep"] = render_sweep(*config.sweep);
    return root.dump(2) + "\n";
}

}  // namespace mtcavity

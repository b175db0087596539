#include "mtcavity/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mtcavity/cavity.hpp"
#include "mtcavity/chain.hpp"
#include "mtcavity/estimator.hpp"
#include "mtcavity/io.hpp"
#include "mtcavity/quantum_correction.hpp"
#include "mtcavity/traveling_wave.hpp"
#include "mtcavity/version.hpp"

namespace mtcavity {
namespace {

using nlohmann::json;

struct Artifact {
    std::string name;
    std::string content;
};

struct Outcome {
    json outputs = json::object();
    std::vector<Artifact> artifacts;
    std::string summary_name;
    double summary_value = 0.0;
};

void append_row(std::string& out, std::initializer_list<double> cells) {
    bool first = true;
    for (double c : cells) {
        if (!first) out += ',';
        out += format_double(c);
        first = false;
    }
    out += '\n';
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

std::string profile_csv(const KinkProfile& profile, const std::vector<double>& grid) {
    std::string out = "xi,u\n";
    for (double xi : grid) append_row(out, {xi, profile.value(xi)});
    return out;
}

std::vector<double> profile_grid(const KinkProfile& profile) {
    if (profile.family() == KinkProfile::Family::numeric) return profile.sample_xi();
    return linspace(-10.0, 10.0, 2001);
}

double lsq_slope(const std::vector<TrajectorySample>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) return 0.0;
    double mt = 0.0, mf = 0.0;
    for (const auto& s : samples) {
        mt += s.t;
        mf += s.front;
    }
    mt /= static_cast<double>(n);
    mf /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (const auto& s : samples) {
        num += (s.t - mt) * (s.front - mf);
        den += (s.t - mt) * (s.t - mt);
    }
    return den > 0.0 ? num / den : 0.0;
}

// profile from the reduced problem: exact family if one matches, else shot
std::pair<KinkProfile, std::string> solve_profile(const TravelingWaveProblem& problem,
                                                  double shoot_tol) {
    if (auto t = match_tanh(problem)) return {*t, "tanh"};
    if (auto l = match_logistic(problem)) return {l->profile, "logistic"};
    return {shoot(problem, shoot_tol).profile, "numeric"};
}

Outcome exec_simulate(const SimulateConfig& c) {
    const ChainParams params{c.potential, c.gamma, c.force, c.dx, c.dt, c.boundary};
    const ReduceOptions ropts{c.search_lo, c.search_hi, 1e-12};
    const TravelingWaveProblem problem = reduce_to_ode(params, c.velocity, ropts);
    auto [profile, family] = solve_profile(problem, c.shoot_tol);
    profile.set_velocity(c.velocity);

    FieldState state = init_from_profile(profile, c.n_nodes, c.dx);
    const Trajectory traj = evolve(state, params, c.t_final, c.stride, c.dump_stride);

    std::string csv = "t,front,energy,maxu\n";
    for (const auto& s : traj.samples) append_row(csv, {s.t, s.front, s.energy, s.max_abs_u});

    Outcome out;
    out.artifacts.push_back({"trajectory.csv", std::move(csv)});
    for (std::size_t k = 0; k < traj.dumps.size(); ++k) {
        const FieldState& dump = traj.dumps[k];
        std::string fields = "x,u,udot\n";
        for (std::size_t i = 0; i < dump.size(); ++i)
            append_row(fields, {dump.x(i), dump.u[i], dump.udot[i]});
        char name[32];
        std::snprintf(name, sizeof name, "fields_%06zu.csv", k);
        out.artifacts.push_back({name, std::move(fields)});
    }

    const TrajectorySample& first = traj.samples.front();
    double front_drift = 0.0, energy_drift = 0.0;
    for (const auto& s : traj.samples) {
        front_drift = std::max(front_drift, std::abs(s.front - first.front));
        energy_drift = std::max(energy_drift, std::abs(s.energy - first.energy));
    }

    out.outputs["family"] = family;
    out.outputs["rho"] = problem.rho;
    out.outputs["u_minus"] = problem.u_minus;
    out.outputs["u_plus"] = problem.u_plus;
    out.outputs["front_level"] = traj.front_level;
    out.outputs["front_speed"] = lsq_slope(traj.samples);
    out.outputs["front_drift_max"] = front_drift;
    out.outputs["energy_initial"] = first.energy;
    out.outputs["energy_final"] = traj.samples.back().energy;
    out.outputs["energy_drift_max"] = energy_drift;
    out.outputs["n_samples"] = traj.samples.size();
    out.outputs["n_dumps"] = traj.dumps.size();
    out.summary_name = "front_speed";
    out.summary_value = out.outputs["front_speed"].get<double>();
    return out;
}

Outcome exec_travelwave(const TravelwaveConfig& c) {
    const ChainParams params{c.potential, c.gamma, c.force, 0.01, 0.005,
                             BoundaryKind::fixed_to_asymptote};
    const ReduceOptions ropts{c.search_lo, c.search_hi, 1e-12};
    const TravelingWaveProblem problem = reduce_to_ode(params, c.velocity, ropts);

    Outcome out;
    KinkProfile profile = [&] {
        if (!c.select_speed) {
            auto [p, family] = solve_profile(problem, c.shoot_tol);
            out.outputs["family"] = family;
            out.outputs["rho"] = problem.rho;
            return p;
        }
        ShootOptions sopts;
        sopts.speed_selection = true;
        const ShootResult sel = shoot(problem, c.shoot_tol, sopts);
        out.outputs["family"] = "numeric";
        out.outputs["rho"] = sel.rho;
        out.outputs["rho_requested"] = problem.rho;
        if (c.velocity != 0.0) {
            // damping that would make the requested velocity the selected one
            const double v = std::abs(c.velocity);
            out.outputs["gamma_implied"] = sel.rho * (1.0 - v * v) / v;
        }
        return sel.profile;
    }();

    const double rho = out.outputs["rho"].get<double>();
    const TravelingWaveProblem solved{rho, problem.force, problem.u_minus, problem.u_plus};
    const std::vector<double> grid = profile_grid(profile);
    const double res = residual(profile, solved, grid);

    out.artifacts.push_back({"profile.csv", profile_csv(profile, grid)});
    out.outputs["u_minus"] = problem.u_minus;
    out.outputs["u_plus"] = problem.u_plus;
    out.outputs["amplitude"] = std::abs(problem.u_plus - problem.u_minus);
    out.outputs["residual"] = res;
    out.summary_name = "residual";
    out.summary_value = res;
    return out;
}

Outcome exec_correct(const CorrectConfig& c) {
    const ChainParams params{c.potential, c.gamma, c.force, 0.01, 0.005,
                             BoundaryKind::fixed_to_asymptote};
    const ReduceOptions ropts{c.search_lo, c.search_hi, 1e-12};
    const TravelingWaveProblem problem = reduce_to_ode(params, c.velocity, ropts);

    CorrectionOptions copts;
    copts.max_iterations = c.max_iterations;
    const CorrectionResult result = corrected_kink(problem, c.kernel, c.tol, copts);

    // residual against the locally smeared force (reduces to the uniform
    // effective force when the kernel has no xi dependence)
    std::vector<Polynomial> evens;
    evens.push_back(problem.force);
    while (evens.back().degree() >= 2)
        evens.push_back(evens.back().derivative().derivative());
    const auto force_fn = [&](double u, double xi) {
        const double s = c.kernel.variance_at(xi);
        double factor = 1.0;
        double total = evens[0](u);
        for (std::size_t j = 1; j < evens.size(); ++j) {
            factor *= s / (2.0 * static_cast<double>(j));
            total += factor * evens[j](u);
        }
        return total;
    };
    const std::vector<double> grid = profile_grid(result.profile);
    const double res = residual(result.profile, result.rho, force_fn, grid);

    Outcome out;
    out.artifacts.push_back({"profile.csv", profile_csv(result.profile, grid)});
    out.outputs["iterations"] = result.iterations;
    out.outputs["converged"] = result.converged;
    out.outputs["rho"] = result.rho;
    out.outputs["u_minus"] = result.profile.u_minus();
    out.outputs["u_plus"] = result.profile.u_plus();
    out.outputs["amplitude"] = std::abs(result.profile.u_plus() - result.profile.u_minus());
    out.outputs["residual"] = res;
    out.outputs["effective_force"] = result.effective_force.coeffs();
    out.summary_name = "amplitude";
    out.summary_value = out.outputs["amplitude"].get<double>();
    return out;
}

Outcome exec_spectrum(const SpectrumConfig& c) {
    CavityParams params;
    params.omega_c = c.omega_c;
    params.omega_0 = c.omega_0;
    params.lambda = c.lambda;
    params.n_emitters = c.n_emitters;
    params.q_factor = c.q_factor;
    params.convention = c.convention;

    const RabiPeaks peaks = rabi_peaks(params);
    CavityParams alt = params;
    alt.convention = params.convention == PeakConvention::standard ? PeakConvention::paper
                                                                   : PeakConvention::standard;
    const RabiPeaks alt_peaks = rabi_peaks(alt);
    const RabiPeaks& std_peaks = params.convention == PeakConvention::standard ? peaks : alt_peaks;
    const RabiPeaks& pap_peaks = params.convention == PeakConvention::standard ? alt_peaks : peaks;

    const SpectrumResult dense = single_excitation_spectrum(params);

    double lo, hi;
    if (c.window_lo) {
        lo = *c.window_lo;
        hi = *c.window_hi;
    } else {
        double pad = 0.3 * peaks.splitting() + 4.0 * params.kappa();
        if (!(pad > 0.0)) pad = 0.05 * std::max(std::abs(params.omega_c), 1.0);
        lo = peaks.lower - pad;
        hi = peaks.upper + pad;
    }
    const AbsorptionCurve curve = absorption_curve(params, lo, hi, c.n_points);

    std::string csv = "omega,absorption\n";
    for (std::size_t i = 0; i < curve.omega.size(); ++i)
        append_row(csv, {curve.omega[i], curve.absorption[i]});

    double trace = 0.0;
    for (double e : dense.eigenvalues) trace += e;

    Outcome out;
    out.artifacts.push_back({"spectrum.csv", std::move(csv)});
    out.outputs["closed_form"] = {{"lower", peaks.lower},
                                  {"upper", peaks.upper},
                                  {"splitting", peaks.splitting()},
                                  {"weight_lower", peaks.weight_lower},
                                  {"weight_upper", peaks.weight_upper}};
    out.outputs["conventions"] = {
        {"standard", {{"lower", std_peaks.lower}, {"upper", std_peaks.upper}}},
        {"paper", {{"lower", pap_peaks.lower}, {"upper", pap_peaks.upper}}},
        {"peak_gap", std::abs(std_peaks.lower - pap_peaks.lower)}};
    out.outputs["dense"] = {{"splitting", dense.splitting},
                            {"n_bright", dense.bright.size()},
                            {"n_dark", dense.eigenvalues.size() - dense.bright.size()},
                            {"eigen_lo", dense.eigenvalues.front()},
                            {"eigen_hi", dense.eigenvalues.back()},
                            {"trace", trace}};
    out.outputs["route_gap"] = std::abs(dense.splitting - peaks.splitting());
    out.outputs["window"] = {{"lo", lo}, {"hi", hi}, {"n_points", c.n_points}};
    out.summary_name = "splitting";
    out.summary_value = dense.splitting;
    return out;
}

Outcome exec_estimate(const EstimateConfig& c) {
    const EstimateReport report = full_report(c.inputs);

    json fields = json::object();
    for (const auto& f : report.fields)
        fields[f.name] = {{"value", f.value}, {"unit", f.unit}, {"basis", f.basis}};

    Outcome out;
    out.outputs["fields"] = fields;
    out.outputs["feasible"] = report.feasible;
    out.summary_name = "collective_coupling";
    out.summary_value = report.at("collective_coupling").value;
    return out;
}

std::string summary_name_for(Command c) {
    switch (c) {
        case Command::simulate: return "front_speed";
        case Command::travelwave: return "residual";
        case Command::correct: return "amplitude";
        case Command::spectrum: return "splitting";
        case Command::estimate: return "collective_coupling";
        case Command::sweep: return "summary";
    }
    return "summary";
}

Outcome execute(const RunConfig& config, int workers);

Outcome exec_sweep(const RunConfig& base, int workers) {
    const SweepConfig& sw = *base.sweep;

    json row_template = json::parse(render_config(base));
    row_template["command"] = command_name(sw.command);
    row_template.erase("sweep");
    row_template.erase("output_dir");

    std::vector<std::string> segments;
    for (std::size_t pos = 0;;) {
        const std::size_t dot = sw.axis.find('.', pos);
        segments.push_back(sw.axis.substr(pos, dot == std::string::npos ? dot : dot - pos));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    auto walk = [&segments, &sw](json& root) -> json& {
        json* node = &root;
        for (const auto& seg : segments) {
            if (!node->is_object() || !node->contains(seg))
                throw ValidationError("sweep axis '" + sw.axis + "' not found in the config");
            node = &(*node)[seg];
        }
        return *node;
    };
    {
        json& leaf = walk(row_template);
        if (!leaf.is_number())
            throw ValidationError("sweep axis '" + sw.axis + "' must point at a numeric value");
    }

    struct Row {
        bool ok = false;
        double summary = 0.0;
        std::string error;
    };
    const std::size_t n = sw.values.size();
    std::vector<Row> rows(n);

    auto run_row = [&](std::size_t i) {
        Row row;
        try {
            json row_json = row_template;
            json& leaf = walk(row_json);
            const double value = sw.values[i];
            if (leaf.is_number_integer() || leaf.is_number_unsigned()) {
                if (value != std::floor(value))
                    throw ValidationError("sweep axis '" + sw.axis + "' expects an integer, got " +
                                          format_double(value));
                leaf = static_cast<long long>(value);
            } else {
                leaf = value;
            }
            const RunConfig cfg = parse_config(row_json.dump());
            const Outcome sub = execute(cfg, 1);
            row.ok = true;
            row.summary = sub.summary_value;
        } catch (const Error& e) {
            row.error = e.kind();
        } catch (const std::exception&) {
            row.error = "Error";
        }
        rows[i] = row;
    };

    const int k = std::clamp(workers, 1, 64);
    if (k <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) run_row(i);
        };
        std::vector<std::thread> pool;
        const int spawn = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), n));
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }

    const std::string column = summary_name_for(sw.command);
    std::string csv = "index,value," + column + ",error\n";
    json summaries = json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        csv += std::to_string(i);
        csv += ',';
        csv += format_double(sw.values[i]);
        csv += ',';
        if (rows[i].ok) {
            csv += format_double(rows[i].summary);
            summaries.push_back(rows[i].summary);
        } else {
            summaries.push_back(nullptr);
            ++failed;
        }
        csv += ',';
        csv += rows[i].error;
        csv += '\n';
    }

    Outcome out;
    out.artifacts.push_back({"sweep.csv", std::move(csv)});
    out.outputs["axis"] = sw.axis;
    out.outputs["command"] = command_name(sw.command);
    out.outputs["summary_column"] = column;
    out.outputs["values"] = sw.values;
    out.outputs["summaries"] = summaries;
    out.outputs["n_rows"] = n;
    out.outputs["n_failed"] = failed;
    out.summary_name = "n_rows";
    out.summary_value = static_cast<double>(n);
    return out;
}

Outcome execute(const RunConfig& config, int workers) {
    switch (config.command) {
        case Command::simulate: return exec_simulate(*config.simulate);
        case Command::travelwave: return exec_travelwave(*config.travelwave);
        case Command::correct: return exec_correct(*config.correct);
        case Command::spectrum: return exec_spectrum(*config.spectrum);
        case Command::estimate: return exec_estimate(*config.estimate);
        case Command::sweep: return exec_sweep(config, workers);
    }
    throw ValidationError("unhandled command");
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace

std::string resolve_output_dir(const RunConfig& config, const RunnerOptions& options) {
    if (!options.output_dir_override.empty()) return options.output_dir_override;
    if (const char* env = std::getenv("MTCAVITY_OUT"); env && *env) return env;
    if (!config.output_dir.empty()) return config.output_dir;
    return ".";
}

int exit_code_for(const Error& error) {
    const std::string& kind = error.kind();
    // a missing open parameter is a hole in the config, not a numerical event
    if (kind == "ValidationError" || kind == "ParseError" || kind == "MissingOpenParameter")
        return 2;
    if (kind == "IoError") return 4;
    return 3;
}

RunSummary run(const RunConfig& config, const RunnerOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string dir = resolve_output_dir(config, options);

    Outcome out = execute(config, options.workers);

    json manifest;
    manifest["command"] = command_name(config.command);
    manifest["version"] = kVersion;
    manifest["config"] = json::parse(render_config(config));
    manifest["outputs"] = out.outputs;
    json names = json::array();
    for (const auto& a : out.artifacts) names.push_back(a.name);
    names.push_back("manifest.json");
    manifest["artifacts"] = names;

    ensure_directory(dir);
    RunSummary summary;
    for (const auto& a : out.artifacts) {
        write_text_file(join_path(dir, a.name), a.content);
        summary.artifacts.push_back(a.name);
    }
    write_text_file(join_path(dir, "manifest.json"), manifest.dump(2) + "\n");
    summary.artifacts.push_back("manifest.json");

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_text_file(join_path(dir, "timing.json"),
                    "{\n  \"wall_ms\": " + format_double(wall_ms) + "\n}\n");

    summary.output_dir = dir;
    summary.summary_name = out.summary_name;
    summary.summary_value = out.summary_value;
    return summary;
}

}  // namespace mtcavity

#include "mtcavity/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtcavity/errors.hpp"
#include "mtcavity/io.hpp"

namespace mtcavity {

void ChainParams::validate() const {
    if (!(dx > 0.0)) throw ValidationError("dx must be positive");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (dt > 0.5 * dx) {
        throw ValidationError("dt <= 0.5*dx (CFL) violated: dt=" + format_double(dt) +
                              " dx=" + format_double(dx));
    }
    if (gamma < 0.0) throw ValidationError("gamma must be >= 0");
    if (!std::isfinite(force)) throw ValidationError("force must be finite");
}

void FieldState::validate() const {
    if (u.size() < 8) throw ValidationError("field needs at least 8 nodes");
    if (u.size() != udot.size()) throw ValidationError("u and udot lengths differ");
    if (!(dx > 0.0)) throw ValidationError("dx must be positive");
}

FieldState init_from_profile(const KinkProfile& profile, std::size_t n_nodes, double dx) {
    if (n_nodes < 8) throw ValidationError("field needs at least 8 nodes");
    if (!(dx > 0.0)) throw ValidationError("dx must be positive");
    FieldState s;
    s.dx = dx;
    s.x0 = -0.5 * dx * static_cast<double>(n_nodes - 1);
    s.u.resize(n_nodes);
    s.udot.resize(n_nodes);
    const double v = profile.velocity();
    for (std::size_t i = 0; i < n_nodes; ++i) {
        double x = s.x(i);
        double u = profile.value(x);
        double du = profile.slope(x);
        if (!std::isfinite(u) || !std::isfinite(du)) {
            throw DegenerateInput("profile undefined at x=" + format_double(x));
        }
        s.u[i] = u;
        s.udot[i] = -v * du;
    }
    return s;
}

namespace {

// spatial force: u_xx - U'(u) + f
void acceleration(const FieldState& s, const Polynomial& dU, double f, BoundaryKind bc,
                  std::vector<double>& a) {
    const std::size_t n = s.u.size();
    const double inv_dx2 = 1.0 / (s.dx * s.dx);
    a.resize(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double lap = (s.u[i - 1] - 2.0 * s.u[i] + s.u[i + 1]) * inv_dx2;
        a[i] = lap - dU(s.u[i]) + f;
    }
    if (bc == BoundaryKind::zero_gradient) {
        // mirrored ghosts: u[-1] = u[1], u[n] = u[n-2]
        a[0] = 2.0 * (s.u[1] - s.u[0]) * inv_dx2 - dU(s.u[0]) + f;
        a[n - 1] = 2.0 * (s.u[n - 2] - s.u[n - 1]) * inv_dx2 - dU(s.u[n - 1]) + f;
    } else {
        a[0] = 0.0;
        a[n - 1] = 0.0;
    }
}

void step_impl(FieldState& s, const ChainParams& p, const Polynomial& dU,
               std::vector<double>& acc) {
    const std::size_t n = s.u.size();
    const double half = 0.5 * p.dt;
    const double damp_lo = 1.0 - 0.5 * p.gamma * p.dt;
    const double damp_hi = 1.0 / (1.0 + 0.5 * p.gamma * p.dt);
    const bool pinned = p.boundary == BoundaryKind::fixed_to_asymptote;

    acceleration(s, dU, p.force, p.boundary, acc);
    for (std::size_t i = 0; i < n; ++i) s.udot[i] = s.udot[i] * damp_lo + half * acc[i];
    if (pinned) {
        s.udot[0] = 0.0;
        s.udot[n - 1] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) s.u[i] += p.dt * s.udot[i];
    acceleration(s, dU, p.force, p.boundary, acc);
    for (std::size_t i = 0; i < n; ++i) s.udot[i] = (s.udot[i] + half * acc[i]) * damp_hi;
    if (pinned) {
        s.udot[0] = 0.0;
        s.udot[n - 1] = 0.0;
    }
    s.t += p.dt;
}

}  // namespace

void step(FieldState& state, const ChainParams& params) {
    state.validate();
    params.validate();
    std::vector<double> acc;
    step_impl(state, params, params.potential.derivative(), acc);
}

double measure_front(const FieldState& state, double level) {
    state.validate();
    const std::size_t n = state.u.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double a = state.u[i] - level;
        double b = state.u[i + 1] - level;
        if (a == 0.0) return state.x(i);
        if (a * b < 0.0) return state.x(i) + state.dx * (a / (a - b));
    }
    if (state.u[n - 1] == level) return state.x(n - 1);
    throw NoCrossing("field never crosses level " + format_double(level));
}

double energy(const FieldState& s, const ChainParams& p) {
    s.validate();
    const std::size_t n = s.u.size();
    const Polynomial& U = p.potential;
    std::vector<double> dens(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ux;
        if (i == 0) ux = (s.u[1] - s.u[0]) / s.dx;
        else if (i + 1 == n) ux = (s.u[n - 1] - s.u[n - 2]) / s.dx;
        else ux = (s.u[i + 1] - s.u[i - 1]) / (2.0 * s.dx);
        dens[i] = 0.5 * s.udot[i] * s.udot[i] + 0.5 * ux * ux + U(s.u[i]) - p.force * s.u[i];
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += 0.5 * (dens[i] + dens[i + 1]);
    return sum * s.dx;
}

Trajectory evolve(FieldState& state, const ChainParams& params, double t_final,
                  std::size_t stride, std::size_t dump_stride) {
    state.validate();
    params.validate();
    if (!(t_final >= state.t)) throw ValidationError("t_final must not precede state.t");
    if (stride == 0) throw ValidationError("stride must be >= 1");

    const Polynomial dU = params.potential.derivative();
    const double level = 0.5 * (state.u.front() + state.u.back());
    const std::size_t n_steps =
        static_cast<std::size_t>(std::llround((t_final - state.t) / params.dt));

    Trajectory traj;
    traj.front_level = level;
    auto record = [&]() {
        double maxu = 0.0;
        for (double v : state.u) maxu = std::max(maxu, std::abs(v));
        traj.samples.push_back({state.t, measure_front(state, level), energy(state, params), maxu});
    };
    auto check_blowup = [&]() {
        for (std::size_t i = 0; i < state.u.size(); ++i) {
            if (std::abs(state.u[i]) > 1e6 || std::abs(state.udot[i]) > 1e6 ||
                !std::isfinite(state.u[i]) || !std::isfinite(state.udot[i])) {
                throw NumericalBlowup("field exceeded 1e6 at t=" + format_double(state.t));
            }
        }
    };

    record();
    if (dump_stride > 0) traj.dumps.push_back(state);
    std::vector<double> acc;
    for (std::size_t k = 1; k <= n_steps; ++k) {
        step_impl(state, params, dU, acc);
        check_blowup();
        if (k % stride == 0 || k == n_steps) record();
        if (dump_stride > 0 && (k % dump_stride == 0 || k == n_steps)) {
            traj.dumps.push_back(state);
        }
    }
    return traj;
}

}  // namespace mtcavity

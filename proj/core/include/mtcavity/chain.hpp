#pragma once

#include <cstddef>
#include <vector>

#include "mtcavity/kink.hpp"
#include "mtcavity/polynomial.hpp"

namespace mtcavity {

// u_tt = u_xx - gamma u_t - U'(u) + f  on a uniform 1-D grid.

enum class BoundaryKind {
    fixed_to_asymptote,  // end nodes pinned at their initial values, udot = 0
    zero_gradient,       // mirrored ghost nodes
};

struct ChainParams {
    Polynomial potential;  // on-site potential U(u)
    double gamma = 0.0;
    double force = 0.0;
    double dx = 0.1;
    double dt = 0.05;
    BoundaryKind boundary = BoundaryKind::fixed_to_asymptote;

    void validate() const;  // positivity and the CFL bound dt <= 0.5 dx
};

struct FieldState {
    std::vector<double> u;
    std::vector<double> udot;
    double t = 0.0;
    double dx = 0.1;
    double x0 = 0.0;  // coordinate of node 0

    std::size_t size() const { return u.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    void validate() const;
};

struct TrajectorySample {
    double t;
    double front;
    double energy;
    double max_abs_u;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<FieldState> dumps;  // full fields, taken every dump_stride steps
    double front_level = 0.0;
};

// Sample a co-moving profile on a grid centred on x = 0 (n_nodes odd keeps a
// node exactly at the origin); udot = -v u'.
FieldState init_from_profile(const KinkProfile& profile, std::size_t n_nodes, double dx);

// One kick-drift-kick step.  The damping enters the half-kicks as the
// trapezoidal pair (1 - g dt/2) / (1 + g dt/2), which reduces to plain
// velocity Verlet at gamma = 0 and matches exp(-gamma t) to second order.
void step(FieldState& state, const ChainParams& params);

// First crossing of `level`, linearly interpolated; throws NoCrossing.
double measure_front(const FieldState& state, double level);

// Trapezoid integral of  udot^2/2 + (u_x)^2/2 + U(u) - f u ;  u_x by central
// differences (one-sided at the ends).
double energy(const FieldState& state, const ChainParams& params);

// March to t_final recording diagnostics every `stride` steps (plus the
// initial and final states).  The front level is the mean of the two initial
// end values.  dump_stride > 0 additionally stores full field snapshots.
// Throws NumericalBlowup (with the failing time in the message) if |u| or
// |udot| exceeds 1e6.
Trajectory evolve(FieldState& state, const ChainParams& params, double t_final,
                  std::size_t stride, std::size_t dump_stride = 0);

}  // namespace mtcavity

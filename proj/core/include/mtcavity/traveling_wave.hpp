#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mtcavity/chain.hpp"
#include "mtcavity/kink.hpp"
#include "mtcavity/polynomial.hpp"

namespace mtcavity {

// Co-moving reduction of the chain PDE:  u'' + rho u' = P(u),
// rho = gamma |v| / (1 - v^2),  P = (U' - f) / (1 - v^2).
//
// u_minus / u_plus are the asymptotic states at xi -> -inf / +inf.  With
// damping the connection runs downhill in V(u) = -integral P, so u_minus is
// the extreme root with the larger V (ties break towards the lower root,
// giving an increasing kink).  Negative v is folded onto the mirrored frame
// (rho >= 0, same P, swapped orientation handled by the V rule).
struct TravelingWaveProblem {
    double rho = 0.0;
    Polynomial force;  // P(u)
    double u_minus = 0.0;
    double u_plus = 0.0;

    void validate() const;  // rho >= 0, |P(u_minus)|, |P(u_plus)| <= 1e-10
};

struct ReduceOptions {
    double search_lo = -10.0;
    double search_hi = 10.0;
    double root_tol = 1e-12;
};

// Throws SupersonicVelocity for |v| >= 1 and NoAsymptotes when P has fewer
// than two real roots in the search window.
TravelingWaveProblem reduce_to_ode(const ChainParams& params, double velocity,
                                   const ReduceOptions& opts = {});

// max |u'' + rho u' - P(u)| over the grid.  Analytic derivatives for the
// tanh/logistic families; 4th-order central differences on the stored
// samples for numeric profiles (the grid then only selects the xi range,
// and the two outermost samples on each side are skipped).
double residual(const KinkProfile& profile, const TravelingWaveProblem& problem,
                std::span<const double> grid);

// same, against an arbitrary force P(u, xi); used for spatially varying
// smearing corrections
double residual(const KinkProfile& profile, double rho,
                const std::function<double(double, double)>& force,
                std::span<const double> grid);

// Coefficient matching of the logistic ansatz in the canonical normalisation
// where the connected pair is {0, 1}: P must factor as A u (1 - u)(u - a).
// Then A = -2 k^2 fixes the rate and rho = k (1 - 2a) the unique damping.
// Returns nullopt when the form does not fit, when a is a double root, or
// when the problem's rho differs from the matched value by more than 1e-9.
struct LogisticMatch {
    KinkProfile profile;
    double rho;
    double rate;  // k
};
std::optional<LogisticMatch> match_logistic(const TravelingWaveProblem& problem);

// Odd-symmetric cubic counterpart: P = A (u - m - h)(u - m)(u - m + h)
// admits u = m + h tanh(c2 xi) at rho = 0 with c2 = h sqrt(A/2).
std::optional<KinkProfile> match_tanh(const TravelingWaveProblem& problem);

struct ShootOptions {
    double takeoff_offset = 1e-6;  // relative to |u_plus - u_minus|
    double xi_factor = 40.0;       // profile half-width = xi_factor / slowest rate
    int max_bracket_doublings = 64;
    int max_bisections = 200;
    bool speed_selection = false;  // bisect rho instead of the take-off scale
    double h_max = 5e-3;
    double rtol = 1e-13;
    double atol = 1e-16;
    std::size_t n_samples = 2001;
};

struct ShootResult {
    KinkProfile profile;
    double rho;          // input rho, or the selected rho* in speed-selection mode
    int bisections;
    double landing_gap;  // closest approach |u - u_plus| of the accepted orbit
};

// Heteroclinic connection by shooting from the saddle at u_minus along its
// unstable eigendirection with adaptive 4/5-order stepping.  At fixed rho
// the problem is autonomous, so the take-off amplitude only translates one
// orbit: it either reaches the landing tube at u_plus (|u - u_plus| <= tol
// and slope consistent with the local stable manifold), or it certifies as
// landed at its best stable-manifold-consistent point (roundoff floors the
// closest approach of a true connection near the square root of the
// integrator error, which can sit above tol).  In speed-selection mode rho
// is bisected between overshoot and undershoot instead.  The exponential
// tails beyond the integrated window come from the quadratic local
// manifolds of the saddles, and the returned profile carries its own
// residual certificate via residual().
// Errors: NoConnection if the orbit misses (fixed rho) or no bracket exists
// (speed selection), ToleranceUnmet after max_bisections.
ShootResult shoot(const TravelingWaveProblem& problem, double tol,
                  const ShootOptions& opts = {});

// Same machinery with a general force P(u, xi) that settles to
// `asymptotic_force` for large |xi|; the linearisations and the asymptote
// consistency checks use the asymptotic polynomial.  Because the force is
// xi-dependent the take-off amplitude is a genuine shooting parameter: it
// is bracketed on a geometric ladder and log-bisected, restarting from a
// closer take-off point if the bracket collapses before a landing.  The
// profile keeps the parameterisation the landing selects; when the force
// happens to be autonomous that translate is arbitrary rather than centred.
ShootResult shoot_general(double rho, const std::function<double(double, double)>& force,
                          const Polynomial& asymptotic_force, double u_minus, double u_plus,
                          double tol, const ShootOptions& opts = {});

}  // namespace mtcavity

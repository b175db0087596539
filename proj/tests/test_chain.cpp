#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mtcavity/chain.hpp"
#include "mtcavity/errors.hpp"
#include "mtcavity/kink.hpp"

using namespace mtcavity;

namespace {

ChainParams phi4_params(double dx, double dt) {
    ChainParams p;
    p.potential = testutil::phi4_potential();
    p.dx = dx;
    p.dt = dt;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    ChainParams p = phi4_params(0.1, 0.05);
    CHECK_NOTHROW(p.validate());
    p.dt = 0.051;
    CHECK_THROWS_AS(p.validate(), ValidationError);  // CFL bound dt <= dx/2
    p.dt = 0.05;
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.gamma = 0.0;
    p.dx = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("init_from_profile centres the grid and sets udot = -v u'") {
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0, 0.5);
    FieldState s = init_from_profile(profile, 9, 0.5);
    REQUIRE(s.size() == 9);
    CHECK(s.x0 == -2.0);
    CHECK(s.x(4) == 0.0);
    CHECK(s.u[4] == 0.0);  // odd node count puts a node on the midpoint
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.u[i] == profile.value(s.x(i)));
        CHECK(s.udot[i] == -0.5 * profile.slope(s.x(i)));
    }
}

TEST_CASE("front measurement interpolates the first crossing") {
    FieldState s;
    s.u = {1.0, 1.0, 0.8, 0.2, 0.0, 0.0, 0.0, 0.0};
    s.udot.assign(8, 0.0);
    s.dx = 1.0;
    s.x0 = 0.0;
    CHECK(measure_front(s, 0.5) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK_THROWS_AS(measure_front(s, 2.0), NoCrossing);
}

TEST_CASE("uniform rest state is a fixed point of the stepper") {
    for (BoundaryKind b : {BoundaryKind::fixed_to_asymptote, BoundaryKind::zero_gradient}) {
        ChainParams p = phi4_params(0.1, 0.05);
        p.boundary = b;
        FieldState s;
        s.u.assign(32, 1.0);  // vacuum of the double well
        s.udot.assign(32, 0.0);
        s.dx = p.dx;
        for (int k = 0; k < 100; ++k) step(s, p);
        for (double v : s.u) CHECK(v == 1.0);  // bit-exact: all forces vanish
        for (double v : s.udot) CHECK(v == 0.0);
    }
}

TEST_CASE("static kink holds position and energy") {
    ChainParams p = phi4_params(0.05, 0.025);
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0);
    FieldState s = init_from_profile(profile, 801, p.dx);
    Trajectory traj = evolve(s, p, 5.0, 20);
    REQUIRE(traj.samples.size() > 2);
    const double e0 = traj.samples.front().energy;
    // continuum kink energy is 2 sqrt(2) / 3; trapezoid + central differences
    // on dx = 0.05 sit within O(dx^2) of it
    CHECK(testutil::close(e0, 0.9428090415820634, 2e-3));
    for (const auto& sample : traj.samples) {
        CHECK(std::abs(sample.front) <= 1e-9);  // symmetric grid: no drift
        // gamma = 0: leapfrog energy oscillates within an O(dt^2) band
        CHECK(std::abs(sample.energy - e0) <= 5e-7);
        CHECK(testutil::close(sample.max_abs_u, 1.0, 1e-3));
    }
}

TEST_CASE("boosted kink travels at its construction speed") {
    const double v = 0.5;
    ChainParams p = phi4_params(0.04, 0.02);
    // reduced force gains 1/(1 - v^2); the matching kink steepens to
    // tanh(sqrt(A/2) xi) with A = 1/(1 - v^2)
    const double k = std::sqrt(0.5 / (1.0 - v * v));
    auto profile = KinkProfile::make_tanh(1.0, k, 0.0, v);
    FieldState s = init_from_profile(profile, 1001, p.dx);
    Trajectory traj = evolve(s, p, 6.0, 25);
    REQUIRE(traj.samples.size() >= 4);
    // least-squares slope of front vs t
    double st = 0, sf = 0, stt = 0, stf = 0;
    const auto n = static_cast<double>(traj.samples.size());
    for (const auto& sample : traj.samples) {
        st += sample.t;
        sf += sample.front;
        stt += sample.t * sample.t;
        stf += sample.t * sample.front;
    }
    const double slope = (n * stf - st * sf) / (n * stt - st * st);
    CHECK(testutil::close(slope, v, 0.01));
}

TEST_CASE("damping drains energy monotonically") {
    ChainParams p = phi4_params(0.05, 0.025);
    p.gamma = 0.5;
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0, 0.4);
    FieldState s = init_from_profile(profile, 401, p.dx);
    Trajectory traj = evolve(s, p, 3.0, 10);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].energy <= traj.samples[i - 1].energy + 1e-12);
}

TEST_CASE("runaway potential triggers the blowup guard") {
    ChainParams p;
    p.potential = Polynomial{0.0, 0.0, 0.0, 0.0, -0.25};  // U = -u^4/4: anti-restoring
    p.dx = 0.1;
    p.dt = 0.05;
    FieldState s;
    s.u.assign(64, 2.0);
    s.udot.assign(64, 0.0);
    s.dx = p.dx;
    CHECK_THROWS_AS(evolve(s, p, 50.0, 10), NumericalBlowup);
}

TEST_CASE("field dumps follow the requested stride") {
    ChainParams p = phi4_params(0.1, 0.05);
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0);
    FieldState s = init_from_profile(profile, 201, p.dx);
    Trajectory traj = evolve(s, p, 1.0, 5, 10);
    CHECK(!traj.dumps.empty());
    for (std::size_t i = 1; i < traj.dumps.size(); ++i)
        CHECK(traj.dumps[i].t > traj.dumps[i - 1].t);
    for (const auto& d : traj.dumps) CHECK(d.size() == s.size());
}

TEST_CASE("stepping is bitwise deterministic") {
    ChainParams p = phi4_params(0.05, 0.025);
    p.gamma = 0.3;
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0, 0.2);
    FieldState a = init_from_profile(profile, 101, p.dx);
    FieldState b = init_from_profile(profile, 101, p.dx);
    for (int k = 0; k < 200; ++k) {
        step(a, p);
        step(b, p);
    }
    CHECK(a.u == b.u);
    CHECK(a.udot == b.udot);
}

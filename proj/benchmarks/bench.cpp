#include <benchmark/benchmark.h>

#include <cmath>

#include "mtcavity/cavity.hpp"
#include "mtcavity/chain.hpp"
#include "mtcavity/quantum_correction.hpp"
#include "mtcavity/traveling_wave.hpp"

using namespace mtcavity;

namespace {

ChainParams phi4_chain() {
    ChainParams p;
    p.potential = Polynomial{0.25, 0.0, -0.5, 0.0, 0.25};
    p.dx = 0.01;
    p.dt = 0.005;
    return p;
}

void BM_chain_step(benchmark::State& state) {
    ChainParams p = phi4_chain();
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0);
    FieldState s = init_from_profile(profile, static_cast<std::size_t>(state.range(0)), p.dx);
    for (auto _ : state) {
        step(s, p);
        benchmark::DoNotOptimize(s.u.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_chain_step)->Arg(1001)->Arg(4001)->Arg(16001);

void BM_chain_energy(benchmark::State& state) {
    ChainParams p = phi4_chain();
    auto profile = KinkProfile::make_tanh(1.0, 1.0 / std::sqrt(2.0), 0.0);
    FieldState s = init_from_profile(profile, static_cast<std::size_t>(state.range(0)), p.dx);
    for (auto _ : state) benchmark::DoNotOptimize(energy(s, p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_chain_energy)->Arg(4001);

void BM_shoot_symmetric_kink(benchmark::State& state) {
    TravelingWaveProblem prob{0.0, Polynomial{0.0, -1.0, 0.0, 1.0}, -1.0, 1.0};
    for (auto _ : state) {
        ShootResult r = shoot(prob, 1e-8);
        benchmark::DoNotOptimize(r.landing_gap);
    }
}
BENCHMARK(BM_shoot_symmetric_kink)->Unit(benchmark::kMillisecond);

void BM_shoot_speed_selection(benchmark::State& state) {
    TravelingWaveProblem prob{0.0, Polynomial{0.3, -1.0, -0.3, 1.0}, -1.0, 1.0};
    ShootOptions opts;
    opts.speed_selection = true;
    for (auto _ : state) {
        ShootResult r = shoot(prob, 1e-8, opts);
        benchmark::DoNotOptimize(r.rho);
    }
}
BENCHMARK(BM_shoot_speed_selection)->Unit(benchmark::kMillisecond);

void BM_weierstrass_smear(benchmark::State& state) {
    Polynomial p{0.3, -1.0, 0.25, 2.0, -0.5, 0.0, 1.5};
    for (auto _ : state) {
        Polynomial q = weierstrass(p, 0.5);
        benchmark::DoNotOptimize(q.coeffs().data());
    }
}
BENCHMARK(BM_weierstrass_smear);

void BM_dense_spectrum(benchmark::State& state) {
    CavityParams cp;
    cp.omega_c = 10.0;
    cp.omega_0 = 10.0;
    cp.lambda = 0.5;
    cp.n_emitters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        SpectrumResult r = single_excitation_spectrum(cp);
        benchmark::DoNotOptimize(r.splitting);
    }
}
BENCHMARK(BM_dense_spectrum)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

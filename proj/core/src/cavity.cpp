#include "mtcavity/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "mtcavity/constants.hpp"
#include "mtcavity/errors.hpp"

namespace mtcavity {

namespace {

constexpr double kBrightWeight = 1.0e-12;
constexpr std::size_t kMaxEmitters = 20000;   // closed-form path guard
constexpr std::size_t kDenseBudget = 4096;    // dense eigensolve guard

}  // namespace

double CavityParams::kappa() const {
    return std::isinf(q_factor) ? 0.0 : omega_c / q_factor;
}

void CavityParams::validate() const {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw DegenerateInput("cavity: omega_c must be finite and > 0");
    if (!(omega_0 > 0.0) || !std::isfinite(omega_0))
        throw DegenerateInput("cavity: omega_0 must be finite and > 0");
    if (!(lambda >= 0.0) || std::isnan(lambda) || std::isinf(lambda))
        throw DegenerateInput("cavity: lambda must be finite and >= 0");
    if (n_emitters < 1) throw DegenerateInput("cavity: n_emitters must be >= 1");
    if (n_emitters > kMaxEmitters)
        throw DegenerateInput(
                    "cavity: n_emitters exceeds the dense-solver cap " +
                        std::to_string(kMaxEmitters));
    if (std::isnan(q_factor) || !(q_factor > 0.0))
        throw DegenerateInput("cavity: q_factor must be > 0 (infinity allowed)");
}

RabiPeaks rabi_peaks(const CavityParams& params) {
    params.validate();
    const double delta = params.detuning();
    const double n = static_cast<double>(params.n_emitters);
    const double r = std::sqrt(delta * delta + 4.0 * n * params.lambda * params.lambda);
    const double centre = params.convention == PeakConvention::standard
                              ? params.omega_0 + 0.5 * delta
                              : params.omega_0 - 0.5 * delta;
    RabiPeaks peaks;
    peaks.lower = centre - 0.5 * r;
    peaks.upper = centre + 0.5 * r;
    if (r > 0.0) {
        peaks.weight_lower = 0.5 * (1.0 - delta / r);
        peaks.weight_upper = 0.5 * (1.0 + delta / r);
    } else {
        peaks.weight_lower = 0.5;  // fully degenerate: split the weight evenly
        peaks.weight_upper = 0.5;
    }
    return peaks;
}

SpectrumResult single_excitation_spectrum(const CavityParams& params) {
    params.validate();
    const std::size_t n = params.n_emitters;
    if (n > kDenseBudget)
        throw DegenerateInput("single_excitation_spectrum: n_emitters " + std::to_string(n) +
                              " exceeds the dense eigensolve budget " +
                              std::to_string(kDenseBudget));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1),
                                              static_cast<Eigen::Index>(n + 1));
    h(0, 0) = params.omega_c;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        h(k, k) = params.omega_0;
        h(0, k) = params.lambda;
        h(k, 0) = params.lambda;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalBlowup("single-excitation eigensolve failed to converge");

    SpectrumResult out;
    out.eigenvalues.resize(n + 1);
    out.photon_weights.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out.eigenvalues[i] = solver.eigenvalues()(k);
        const double v0 = solver.eigenvectors()(0, k);
        out.photon_weights[i] = v0 * v0;
        if (out.photon_weights[i] > kBrightWeight) out.bright.push_back(i);
    }
    if (out.bright.size() >= 2)
        out.splitting = out.eigenvalues[out.bright.back()] - out.eigenvalues[out.bright.front()];
    return out;
}

AbsorptionCurve absorption_curve(const CavityParams& params, double lo, double hi,
                                 std::size_t n_points) {
    params.validate();
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DegenerateInput("absorption_curve: need a finite window with hi > lo");
    if (n_points < 9)
        throw DegenerateInput("absorption_curve: need at least 9 grid points");

    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    const double kappa = params.kappa();
    if (kappa > 0.0 && kappa < 8.0 * step)
        throw GridTooCoarse("absorption_curve: linewidth " + std::to_string(kappa) +
                                        " needs a grid step <= kappa/8; got " +
                                        std::to_string(step));
    const double width = kappa > 0.0 ? kappa : 8.0 * step;

    const RabiPeaks peaks = rabi_peaks(params);
    const double half = 0.5 * width;
    const double norm = half / std::numbers::pi;

    AbsorptionCurve curve;
    curve.omega.resize(n_points);
    curve.absorption.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double w = lo + step * static_cast<double>(i);
        const double dl = w - peaks.lower;
        const double du = w - peaks.upper;
        curve.omega[i] = w;
        curve.absorption[i] = norm * (peaks.weight_lower / (dl * dl + half * half) +
                                      peaks.weight_upper / (du * du + half * half));
    }
    return curve;
}

VacuumField vacuum_field_amplitude(double omega_c, double eps_r, double volume) {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw DegenerateInput("vacuum field: omega_c must be finite and > 0");
    if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
        throw DegenerateInput("vacuum field: eps_r must be finite and >= 1");
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw DegenerateInput("vacuum field: volume must be finite and > 0");

    VacuumField field;
    field.si = std::sqrt(consts.hbar * omega_c / (2.0 * consts.eps0 * eps_r * volume));

    // same quantity through Gaussian units: sqrt(2 pi hbar w / (eps_r V)) in
    // statvolt/cm with hbar in erg s and V in cm^3, then 1 statvolt/cm =
    // 29979.2458 V/m.  Agrees with the SI route to ~1e-9 (the residual is
    // the measured-vs-defined eps0).
    const double hbar_cgs = consts.hbar * 1.0e7;  // erg s
    const double volume_cm3 = volume * 1.0e6;
    const double statvolt_per_cm =
        std::sqrt(2.0 * std::numbers::pi * hbar_cgs * omega_c / (eps_r * volume_cm3));
    field.paper_gaussian = statvolt_per_cm * 29979.2458;
    field.primary = field.si;
    return field;
}

double rabi_coupling(double field, double dipole, double cos_theta) {
    if (!(field >= 0.0) || !std::isfinite(field))
        throw DegenerateInput("rabi_coupling: field must be finite and >= 0");
    if (!(dipole >= 0.0) || !std::isfinite(dipole))
        throw DegenerateInput("rabi_coupling: dipole must be finite and >= 0");
    if (!(std::abs(cos_theta) <= 1.0))
        throw DegenerateInput("rabi_coupling: |cos_theta| must be <= 1");
    return field * dipole * cos_theta / consts.hbar;
}

EnhancementScan enhancement_scan(const CavityParams& base, const std::vector<std::size_t>& ns) {
    base.validate();
    if (base.lambda == 0.0)
        throw ZeroSplitting("enhancement_scan: lambda = 0 gives no splitting to fit");
    if (ns.empty()) throw DegenerateInput("enhancement_scan: empty count list");

    std::vector<std::size_t> distinct = ns;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        throw FitUnderdetermined(
                    "enhancement_scan: need at least two distinct emitter counts");

    EnhancementScan scan;
    scan.n_values = ns;
    scan.splittings.reserve(ns.size());
    for (std::size_t n : ns) {
        CavityParams p = base;
        p.omega_c = base.omega_0;  // resonance isolates the sqrt(N) factor
        p.n_emitters = n;
        const SpectrumResult dense = single_excitation_spectrum(p);
        if (!(dense.splitting > 0.0))
            throw ZeroSplitting("enhancement_scan: vanishing splitting at N = " +
                                std::to_string(n));
        scan.splittings.push_back(dense.splitting);
    }

    double mx = 0.0, my = 0.0;
    const auto count = static_cast<double>(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        mx += std::log(static_cast<double>(ns[i]));
        my += std::log(scan.splittings[i]);
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double dx = std::log(static_cast<double>(ns[i])) - mx;
        const double dy = std::log(scan.splittings[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    scan.exponent = sxy / sxx;
    scan.prefactor = std::exp(my - scan.exponent * mx);
    return scan;
}

}  // namespace mtcavity

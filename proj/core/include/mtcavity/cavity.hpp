#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace mtcavity {

// Two bookkeeping conventions for where the polariton doublet sits relative
// to the bare lines when the cavity is detuned.  `standard` centres the
// doublet on the mean of the dressed pair, (omega_c + omega_0)/2; `paper`
// mirrors the detuning term, centring it on omega_0 - detuning/2 instead.
// On resonance they coincide; off resonance they differ by exactly the
// detuning (reported, not resolved here).
enum class PeakConvention { standard, paper };

struct CavityParams {
    double omega_c = 1.0;  // cavity mode frequency (angular)
    double omega_0 = 1.0;  // emitter transition frequency
    double lambda = 0.0;   // single-emitter vacuum coupling
    std::size_t n_emitters = 1;
    double q_factor = std::numeric_limits<double>::infinity();
    PeakConvention convention = PeakConvention::standard;

    double detuning() const { return omega_c - omega_0; }
    double kappa() const;  // cavity linewidth omega_c / Q (0 when Q is infinite)
    void validate() const;
};

struct RabiPeaks {
    double lower = 0.0;
    double upper = 0.0;
    double weight_lower = 0.0;  // photon weights; they sum to 1
    double weight_upper = 0.0;

    double splitting() const { return upper - lower; }
};

// Closed-form polariton doublet: upper/lower = centre +- R/2 with
// R = sqrt(detuning^2 + 4 N lambda^2); photon weights (1 -+ detuning/R)/2.
RabiPeaks rabi_peaks(const CavityParams& params);

struct SpectrumResult {
    std::vector<double> eigenvalues;     // ascending, N+1 entries
    std::vector<double> photon_weights;  // squared photon component per state
    std::vector<std::size_t> bright;     // states with photon weight > 1e-12
    double splitting = 0.0;              // highest bright minus lowest bright (0 if < 2)
};

// Dense diagonalisation of the single-excitation arrow Hamiltonian
//   diag(omega_c, omega_0, ..., omega_0),  H[0][i] = lambda.
// For lambda > 0 exactly two states carry photon weight; the other N - 1
// stay dark at omega_0.  Kept deliberately independent of rabi_peaks so the
// two routes can check each other.
SpectrumResult single_excitation_spectrum(const CavityParams& params);

struct AbsorptionCurve {
    std::vector<double> omega;
    std::vector<double> absorption;
};

// Area-normalised Lorentzian doublet on a uniform grid over [lo, hi] with
// linewidth kappa = omega_c / Q.  A finite kappa below 8 grid steps throws
// GridTooCoarse; an infinite-Q cavity is drawn at that resolution floor
// instead (plot-only choice, the line positions are unaffected).
AbsorptionCurve absorption_curve(const CavityParams& params, double lo, double hi,
                                 std::size_t n_points);

struct VacuumField {
    double si = 0.0;              // sqrt(hbar omega / (2 eps0 eps_r V))  [V/m]
    double paper_gaussian = 0.0;  // Gaussian-units route, converted to V/m
    double primary = 0.0;         // = si; the Gaussian value rides along as a cross-check
};

// Root-mean-square vacuum field of a mode at omega_c in a dielectric volume
// (eps_r relative permittivity, volume in m^3).
VacuumField vacuum_field_amplitude(double omega_c, double eps_r, double volume);

// lambda = field * dipole * cos_theta / hbar
double rabi_coupling(double field, double dipole, double cos_theta);

struct EnhancementScan {
    std::vector<std::size_t> n_values;
    std::vector<double> splittings;
    double exponent = 0.0;   // least-squares slope of log splitting vs log N
    double prefactor = 0.0;  // exp(intercept)
};

// Resonant splitting versus emitter count from the dense spectrum, with a
// log-log power-law fit.  Throws ZeroSplitting for lambda = 0 and
// FitUnderdetermined for fewer than two distinct counts.
EnhancementScan enhancement_scan(const CavityParams& base, const std::vector<std::size_t>& ns);

}  // namespace mtcavity

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtcavity/units.hpp"

namespace mtcavity {

// Order-of-magnitude inputs for the protein-lattice cavity estimate.
// Everything is SI; frequencies are angular (rad/s).
struct EstimateInputs {
    // dimer electrostatics
    double charge_count = 36.0;     // elementary charges displaced per flip
    double dipole_length = 4.0e-9;  // m, effective charge separation
    double eps_r = 80.0;            // aqueous screening

    // front transport
    double track_length = 1.0e-6;  // m
    double front_speed = 2.0;      // m/s

    // cavity mode
    double omega_c = 6.0e12;    // rad/s
    double ring_time = 1.0e-4;  // s, energy storage time of the mode
    std::optional<double> cavity_volume;  // m^3; open parameter
    std::optional<double> n_coherent;     // coherently coupled dimer count; open parameter

    // environment
    double temperature = 310.0;            // K
    std::optional<double> dipole_spacing;  // m; defaults to dipole_length
    double collapse_lo = 1.0e-7;           // s, conjectured reduction window
    double collapse_hi = 1.0e-6;

    void validate() const;
};

struct ReportField {
    std::string name;
    double value = 0.0;
    std::string unit;
    Dim dim;
    std::string basis;  // one-line derivation note
};

struct EstimateReport {
    std::vector<ReportField> fields;
    bool feasible = false;  // the front finishes inside the reduction window

    const ReportField& at(const std::string& name) const;
    bool has(const std::string& name) const;
};

// building blocks (do not need the open parameters)
double dimer_dipole(const EstimateInputs& in);     // q e l / eps_r
double transport_time(const EstimateInputs& in);   // L / v
double quality_factor(const EstimateInputs& in);   // omega_c * ring_time

// Full chain: dipole -> vacuum field -> single and collective coupling ->
// splitting, plus the thermal dipole-dipole comparison and the transport
// feasibility flag.  Requires both open parameters; throws
// MissingOpenParameter naming whichever is absent.  Every field carries its
// SI dimension and the report is self-audited against the defining
// relations before it is returned.
EstimateReport full_report(const EstimateInputs& in);

}  // namespace mtcavity

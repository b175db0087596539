#include "mtcavity/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mtcavity/cavity.hpp"
#include "mtcavity/constants.hpp"
#include "mtcavity/errors.hpp"

namespace mtcavity {

namespace {

void need_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DegenerateInput(std::string("estimator: ") + what + " must be finite and > 0");
}

}  // namespace

void EstimateInputs::validate() const {
    if (!(charge_count >= 0.0) || !std::isfinite(charge_count))
        throw DegenerateInput("estimator: charge_count must be finite and >= 0");
    need_positive(dipole_length, "dipole_length");
    if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
        throw DegenerateInput("estimator: eps_r must be finite and >= 1");
    need_positive(track_length, "track_length");
    need_positive(front_speed, "front_speed");
    need_positive(omega_c, "omega_c");
    need_positive(ring_time, "ring_time");
    need_positive(temperature, "temperature");
    need_positive(collapse_lo, "collapse_lo");
    need_positive(collapse_hi, "collapse_hi");
    if (collapse_hi < collapse_lo)
        throw DegenerateInput("estimator: collapse window must have hi >= lo");
    if (cavity_volume) need_positive(*cavity_volume, "cavity_volume");
    if (n_coherent) need_positive(*n_coherent, "n_coherent");
    if (dipole_spacing) need_positive(*dipole_spacing, "dipole_spacing");
}

const ReportField& EstimateReport::at(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name) return f;
    throw DegenerateInput("report has no field named '" + name + "'");
}

bool EstimateReport::has(const std::string& name) const {
    return std::any_of(fields.begin(), fields.end(),
                       [&](const ReportField& f) { return f.name == name; });
}

double dimer_dipole(const EstimateInputs& in) {
    in.validate();
    return in.charge_count * consts.elem_charge * in.dipole_length / in.eps_r;
}

double transport_time(const EstimateInputs& in) {
    in.validate();
    return in.track_length / in.front_speed;
}

double quality_factor(const EstimateInputs& in) {
    in.validate();
    return in.omega_c * in.ring_time;
}

EstimateReport full_report(const EstimateInputs& in) {
    in.validate();
    if (!in.cavity_volume)
        throw MissingOpenParameter(
                    "cavity_volume is an open parameter; provide it to evaluate the coupling");
    if (!in.n_coherent)
        throw MissingOpenParameter(
                    "n_coherent is an open parameter; provide it to evaluate the collective "
                    "coupling");

    const double dipole = dimer_dipole(in);
    EstimateInputs bare = in;
    bare.eps_r = 1.0;
    const double dipole_bare = dimer_dipole(bare);
    const double t_front = transport_time(in);
    const double q = quality_factor(in);
    const VacuumField field = vacuum_field_amplitude(in.omega_c, in.eps_r, *in.cavity_volume);
    const double lambda_single = rabi_coupling(field.primary, dipole, 1.0);
    const double lambda_collective = std::sqrt(*in.n_coherent) * lambda_single;
    const double spacing = in.dipole_spacing.value_or(in.dipole_length);
    const double u_dd = dipole * dipole /
                        (4.0 * std::numbers::pi * consts.eps0 * in.eps_r * spacing * spacing *
                         spacing);
    const double k_bt = consts.kB * in.temperature;

    using namespace dims;
    EstimateReport rep;
    rep.fields = {
        {"dipole", dipole, "C m", dipole_moment,
         "displaced charge q e times separation, screened by eps_r"},
        {"dipole_unscreened", dipole_bare, "C m", dipole_moment,
         "same displacement with eps_r = 1"},
        {"transport_time", t_front, "s", second, "track length over front speed"},
        {"quality_factor", q, "", dimensionless, "omega_c times the ring-down time"},
        {"vacuum_field", field.primary, "V/m", volt_per_meter,
         "rms vacuum field sqrt(hbar omega / (2 eps0 eps_r V))"},
        {"vacuum_field_gaussian_route", field.paper_gaussian, "V/m", volt_per_meter,
         "Gaussian-units evaluation of the same field, converted"},
        {"single_coupling", lambda_single, "rad/s", per_second,
         "vacuum field times dipole over hbar, aligned dipole"},
        {"collective_coupling", lambda_collective, "rad/s", per_second,
         "sqrt(n_coherent) enhancement of the single coupling"},
        {"vacuum_splitting", 2.0 * lambda_collective, "rad/s", per_second,
         "twice the collective coupling"},
        {"thermal_dipole_energy", u_dd, "J", joule,
         "nearest-neighbour dipole-dipole energy d^2/(4 pi eps0 eps_r r^3)"},
        {"thermal_ratio", u_dd / k_bt, "", dimensionless,
         "dipole-dipole energy over k_B T"},
        {"collapse_lo", in.collapse_lo, "s", second, "conjectured reduction window, lower edge"},
        {"collapse_hi", in.collapse_hi, "s", second, "conjectured reduction window, upper edge"},
    };
    rep.feasible = t_front <= in.collapse_hi;

    // dimensional audit: every derived field must match the dimension forced
    // by its defining relation (the field one in squared form, sqrt-free)
    const Dim hbar_dim = joule_second;
    const Dim omega_dim = per_second;
    const Dim field2 = hbar_dim * omega_dim / (vacuum_permittivity * cubic_meter);
    const bool ok =
        rep.at("dipole").dim == coulomb * meter &&
        rep.at("transport_time").dim == meter / (meter / second) &&
        rep.at("quality_factor").dim == omega_dim * second &&
        rep.at("vacuum_field").dim.pow(2) == field2 &&
        rep.at("single_coupling").dim ==
            volt_per_meter * dipole_moment / hbar_dim &&
        rep.at("thermal_dipole_energy").dim ==
            dipole_moment.pow(2) / (vacuum_permittivity * meter.pow(3)) &&
        rep.at("thermal_ratio").dim ==
            joule / (joule_per_kelvin * kelvin);
    if (!ok)
        throw DegenerateInput("estimator: dimensional audit failed; a relation is miswired");
    return rep;
}

}  // namespace mtcavity

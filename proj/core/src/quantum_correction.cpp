#include "mtcavity/quantum_correction.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mtcavity/errors.hpp"

namespace mtcavity {

namespace {

constexpr double kVarianceCap = 1.0e3;

void check_variance(double v, const char* what) {
    if (std::isnan(v) || v < 0.0)
        throw NegativeVariance(std::string(what) + " must be >= 0");
    if (!(v <= kVarianceCap))
        throw DegenerateInput(
                    std::string(what) + " exceeds the supported cap " + std::to_string(kVarianceCap));
}

}  // namespace

Polynomial weierstrass(const Polynomial& p, double variance) {
    check_variance(variance, "smearing variance");
    if (p.is_zero()) return p;

    std::vector<double> out = p.coeffs();
    Polynomial cur = p;
    double factor = 1.0;
    for (int j = 1; 2 * j <= p.degree(); ++j) {
        cur = cur.derivative().derivative();
        factor *= variance / (2.0 * static_cast<double>(j));
        const auto& cs = cur.coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i) out[i] += factor * cs[i];
    }
    return Polynomial(std::move(out));
}

Polynomial smear_derivative(const Polynomial& potential, int n, double variance) {
    if (n < 0 || n > potential.degree())
        throw DegenerateInput(
                    "smear_derivative: derivative order must lie in [0, degree]");
    Polynomial d = potential;
    for (int i = 0; i < n; ++i) d = d.derivative();
    return weierstrass(d, variance);
}

SmearingKernel SmearingKernel::none() { return SmearingKernel(); }

SmearingKernel SmearingKernel::uniform(double variance) {
    check_variance(variance, "uniform kernel variance");
    SmearingKernel k;
    k.kind_ = Kind::uniform;
    k.amplitude_ = variance;
    return k;
}

SmearingKernel SmearingKernel::sech2_bump(double amplitude, double width) {
    check_variance(amplitude, "sech2 bump amplitude");
    if (!(width > 0.0) || !(width <= 1.0e6))
        throw DegenerateInput("sech2 bump width must lie in (0, 1e6]");
    SmearingKernel k;
    k.kind_ = Kind::sech2_bump;
    k.amplitude_ = amplitude;
    k.width_ = width;
    return k;
}

double SmearingKernel::variance_at(double xi) const {
    switch (kind_) {
        case Kind::none:
            return 0.0;
        case Kind::uniform:
            return amplitude_;
        case Kind::sech2_bump: {
            const double s = 1.0 / std::cosh(xi / width_);
            return amplitude_ * s * s;
        }
    }
    return 0.0;
}

double SmearingKernel::asymptotic_variance() const {
    return kind_ == Kind::uniform ? amplitude_ : 0.0;
}

CorrectionResult corrected_kink(const TravelingWaveProblem& problem, const SmearingKernel& kernel,
                                double tol, const CorrectionOptions& opts) {
    problem.validate();
    if (opts.max_iterations < 1)
        throw DegenerateInput("corrected_kink: max_iterations must be >= 1");
    if (!(opts.fp_tol > 0.0))
        throw DegenerateInput("corrected_kink: fp_tol must be > 0");

    const Polynomial p_inf = weierstrass(problem.force, kernel.asymptotic_variance());

    // surviving rest states near the original pair
    const double span = std::abs(problem.u_plus - problem.u_minus);
    const double lo = std::min(problem.u_minus, problem.u_plus) - 0.5 * span;
    const double hi = std::max(problem.u_minus, problem.u_plus) + 0.5 * span;
    const auto roots = real_roots(p_inf, lo, hi, 1.0e-12);
    if (roots.size() < 2)
        throw NoConnection(
                    "corrected_kink: smearing leaves fewer than two rest states; the corrected "
                    "front does not exist");
    const double r_lo = roots.front();
    const double r_hi = roots.back();
    const Polynomial anti = p_inf.antiderivative();
    const double v_lo = -anti(r_lo);
    const double v_hi = -anti(r_hi);
    const double tie = 1.0e-12 * std::max({1.0, std::abs(v_lo), std::abs(v_hi)});
    double u_minus = r_lo, u_plus = r_hi;
    if (v_hi > v_lo + tie) {
        u_minus = r_hi;
        u_plus = r_lo;
    }

    // even derivatives give the smeared force at arbitrary local variance
    // without rebuilding polynomials inside the integrator loop
    std::vector<Polynomial> evens;
    evens.push_back(problem.force);
    {
        Polynomial cur = problem.force;
        for (int j = 1; 2 * j <= problem.force.degree(); ++j) {
            cur = cur.derivative().derivative();
            evens.push_back(cur);
        }
    }
    const SmearingKernel local = kernel;
    auto force = [evens, local](double u, double xi) {
        const double s = local.variance_at(xi);
        double acc = evens[0](u);
        double factor = 1.0;
        for (std::size_t j = 1; j < evens.size(); ++j) {
            factor *= s / (2.0 * static_cast<double>(j));
            acc += factor * evens[j](u);
        }
        return acc;
    };

    CorrectionResult result{KinkProfile::make_constant(u_minus), 0, false, problem.rho, p_inf};

    std::vector<double> prev_u;
    int it = 0;
    while (it < opts.max_iterations && !result.converged) {
        ++it;
        ShootResult sr = shoot_general(problem.rho, force, p_inf, u_minus, u_plus, tol, opts.shoot);
        result.rho = sr.rho;
        const auto& cur_u = sr.profile.sample_u();
        if (!prev_u.empty() && prev_u.size() == cur_u.size()) {
            double delta = 0.0;
            for (std::size_t i = 0; i < cur_u.size(); ++i)
                delta = std::max(delta, std::abs(cur_u[i] - prev_u[i]));
            if (delta <= opts.fp_tol) result.converged = true;
        }
        prev_u = cur_u;
        result.profile = std::move(sr.profile);
    }
    result.iterations = it;
    return result;
}

}  // namespace mtcavity

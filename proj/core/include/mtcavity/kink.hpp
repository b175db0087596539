#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mtcavity {

// A front profile u(xi) in the co-moving coordinate xi = x - v t.
//
// Three families:
//   tanh_kink  u = c1 (tanh(c2 xi) + c3)
//   logistic   u = c1 + (c2 - c1) / (1 + exp(c3 (c2 - c1) xi))
//   numeric    Hermite interpolation of (xi, u, u') samples on a uniform
//              grid, clamped to the asymptotes outside the sampled window
class KinkProfile {
public:
    enum class Family { tanh_kink, logistic, numeric };

    static KinkProfile make_tanh(double c1, double c2, double c3, double velocity = 0.0);
    static KinkProfile make_logistic(double c1, double c2, double c3, double velocity = 0.0);
    static KinkProfile make_numeric(std::vector<double> xi, std::vector<double> u,
                                    std::vector<double> du, double u_minus, double u_plus,
                                    double velocity = 0.0);
    // degenerate constant profile; handy for equilibrium setups
    static KinkProfile make_constant(double value);

    Family family() const { return family_; }
    double velocity() const { return velocity_; }
    void set_velocity(double v) { velocity_ = v; }

    double value(double xi) const;
    double slope(double xi) const;
    // analytic families only; the numeric family certifies curvature through
    // finite differences instead (see residual())
    double curvature(double xi) const;

    double u_minus() const { return u_minus_; }  // xi -> -inf
    double u_plus() const { return u_plus_; }    // xi -> +inf
    double midpoint() const { return 0.5 * (u_minus_ + u_plus_); }

    // no opposite-sign increments anywhere (flat saturated tails allowed)
    bool is_monotone() const;

    const std::array<double, 3>& params() const { return p_; }
    const std::vector<double>& sample_xi() const { return xi_; }
    const std::vector<double>& sample_u() const { return u_; }
    const std::vector<double>& sample_du() const { return du_; }

private:
    KinkProfile() = default;

    Family family_ = Family::numeric;
    std::array<double, 3> p_{0.0, 0.0, 0.0};
    double velocity_ = 0.0;
    double u_minus_ = 0.0, u_plus_ = 0.0;
    std::vector<double> xi_, u_, du_;  // numeric family
};

}  // namespace mtcavity

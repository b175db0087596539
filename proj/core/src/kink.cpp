#include "mtcavity/kink.hpp"

#include <algorithm>
#include <cmath>

#include "mtcavity/errors.hpp"

namespace mtcavity {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DegenerateInput(std::string(what) + " is not finite");
}

}  // namespace

KinkProfile KinkProfile::make_tanh(double c1, double c2, double c3, double velocity) {
    require_finite(c1, "c1");
    require_finite(c2, "c2");
    require_finite(c3, "c3");
    if (c2 == 0.0) throw DegenerateInput("tanh kink needs c2 != 0");
    KinkProfile k;
    k.family_ = Family::tanh_kink;
    k.p_ = {c1, c2, c3};
    k.velocity_ = velocity;
    double sgn = c2 > 0 ? 1.0 : -1.0;
    k.u_minus_ = c1 * (c3 - sgn);
    k.u_plus_ = c1 * (c3 + sgn);
    return k;
}

KinkProfile KinkProfile::make_logistic(double c1, double c2, double c3, double velocity) {
    require_finite(c1, "c1'");
    require_finite(c2, "c2'");
    require_finite(c3, "c3'");
    if (c1 == c2) throw DegenerateInput("logistic kink needs c1' != c2'");
    if (c3 == 0.0) throw DegenerateInput("logistic kink needs c3' != 0");
    KinkProfile k;
    k.family_ = Family::logistic;
    k.p_ = {c1, c2, c3};
    k.velocity_ = velocity;
    double rate = c3 * (c2 - c1);
    if (rate > 0) {
        k.u_minus_ = c2;
        k.u_plus_ = c1;
    } else {
        k.u_minus_ = c1;
        k.u_plus_ = c2;
    }
    return k;
}

KinkProfile KinkProfile::make_numeric(std::vector<double> xi, std::vector<double> u,
                                      std::vector<double> du, double u_minus, double u_plus,
                                      double velocity) {
    if (xi.size() < 2 || xi.size() != u.size() || xi.size() != du.size()) {
        throw DegenerateInput("numeric profile needs matching xi/u/du samples (>= 2)");
    }
    for (std::size_t i = 1; i < xi.size(); ++i) {
        if (!(xi[i] > xi[i - 1])) throw DegenerateInput("numeric profile grid must increase");
    }
    require_finite(u_minus, "u_minus");
    require_finite(u_plus, "u_plus");
    KinkProfile k;
    k.family_ = Family::numeric;
    k.velocity_ = velocity;
    k.u_minus_ = u_minus;
    k.u_plus_ = u_plus;
    k.xi_ = std::move(xi);
    k.u_ = std::move(u);
    k.du_ = std::move(du);
    return k;
}

KinkProfile KinkProfile::make_constant(double value) {
    require_finite(value, "constant level");
    KinkProfile k;
    k.family_ = Family::numeric;
    k.u_minus_ = k.u_plus_ = value;
    k.xi_ = {-1.0, 1.0};
    k.u_ = {value, value};
    k.du_ = {0.0, 0.0};
    return k;
}

namespace {

// stable logistic helpers: y = 1/(1+e^t) written through tanh/sech so large
// |t| saturates instead of overflowing
inline double logistic_y(double t) { return 0.5 * (1.0 - std::tanh(0.5 * t)); }

inline double logistic_y1my(double t) {
    double s = 1.0 / std::cosh(0.5 * t);  // cosh overflow -> s == 0, fine
    return 0.25 * s * s;
}

}  // namespace

double KinkProfile::value(double xi) const {
    switch (family_) {
        case Family::tanh_kink:
            return p_[0] * (std::tanh(p_[1] * xi) + p_[2]);
        case Family::logistic: {
            double d = p_[1] - p_[0];
            return p_[0] + d * logistic_y(p_[2] * d * xi);
        }
        case Family::numeric:
            break;
    }
    if (xi <= xi_.front()) return xi == xi_.front() ? u_.front() : u_minus_;
    if (xi >= xi_.back()) return xi == xi_.back() ? u_.back() : u_plus_;
    auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
    std::size_t i = static_cast<std::size_t>(it - xi_.begin()) - 1;
    double h = xi_[i + 1] - xi_[i];
    double t = (xi - xi_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    // cubic Hermite basis
    return (2 * t3 - 3 * t2 + 1) * u_[i] + (t3 - 2 * t2 + t) * h * du_[i] +
           (-2 * t3 + 3 * t2) * u_[i + 1] + (t3 - t2) * h * du_[i + 1];
}

double KinkProfile::slope(double xi) const {
    switch (family_) {
        case Family::tanh_kink: {
            double s = 1.0 / std::cosh(p_[1] * xi);
            return p_[0] * p_[1] * s * s;
        }
        case Family::logistic: {
            double d = p_[1] - p_[0];
            double r = p_[2] * d;
            return -d * r * logistic_y1my(r * xi);
        }
        case Family::numeric:
            break;
    }
    if (xi <= xi_.front() || xi >= xi_.back()) return 0.0;
    auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
    std::size_t i = static_cast<std::size_t>(it - xi_.begin()) - 1;
    double h = xi_[i + 1] - xi_[i];
    double t = (xi - xi_[i]) / h;
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * u_[i] + (3 * t2 - 4 * t + 1) * h * du_[i] +
            (-6 * t2 + 6 * t) * u_[i + 1] + (3 * t2 - 2 * t) * h * du_[i + 1]) / h;
}

double KinkProfile::curvature(double xi) const {
    switch (family_) {
        case Family::tanh_kink: {
            double th = std::tanh(p_[1] * xi);
            double s = 1.0 / std::cosh(p_[1] * xi);
            return -2.0 * p_[0] * p_[1] * p_[1] * s * s * th;
        }
        case Family::logistic: {
            double d = p_[1] - p_[0];
            double r = p_[2] * d;
            double t = r * xi;
            return d * r * r * logistic_y1my(t) * (1.0 - 2.0 * logistic_y(t));
        }
        case Family::numeric:
            throw DegenerateInput("curvature of a numeric profile is not defined analytically");
    }
    return 0.0;
}

bool KinkProfile::is_monotone() const {
    if (family_ != Family::numeric) return true;  // analytic families are monotone by form
    int dir = 0;
    for (std::size_t i = 1; i < u_.size(); ++i) {
        double d = u_[i] - u_[i - 1];
        if (d == 0.0) continue;
        int s = d > 0 ? 1 : -1;
        if (dir == 0) dir = s;
        else if (s != dir) return false;
    }
    return true;
}

}  // namespace mtcavity

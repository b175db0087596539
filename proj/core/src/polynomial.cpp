#include "mtcavity/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "mtcavity/errors.hpp"

namespace mtcavity {

Polynomial::Polynomial(std::initializer_list<double> ascending)
    : c_(ascending) {
    trim();
}

Polynomial::Polynomial(std::vector<double> ascending)
    : c_(std::move(ascending)) {
    trim();
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    for (double v : c_) {
        if (!std::isfinite(v)) throw DegenerateInput("polynomial coefficient is not finite");
    }
    if (degree() > max_degree) {
        throw DegenerateInput("polynomial degree exceeds " + std::to_string(max_degree));
    }
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() < 2) return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (c_.empty()) return Polynomial{};
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> s(c_);
    for (double& v : s) v *= factor;
    return Polynomial(std::move(s));
}

Polynomial Polynomial::plus_constant(double value) const {
    std::vector<double> s(c_);
    if (s.empty()) s.push_back(value);
    else s[0] += value;
    return Polynomial(std::move(s));
}

namespace {

constexpr int kScanIntervals = 4096;

// Bisect a strict sign change down to machine resolution.  The scan interval
// is already narrow, so ~60 halvings put the midpoint on the last
// representable double and |p(root)| at rounding level.
double bisect_root(const Polynomial& p, double a, double b, double fa) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

void collect_roots(const Polynomial& p, double lo, double hi, double tol,
                   std::vector<double>& out, int depth) {
    if (p.degree() < 1) return;

    const double h = (hi - lo) / kScanIntervals;
    double xa = lo;
    double fa = p(xa);
    for (int i = 0; i < kScanIntervals; ++i) {
        double xb = (i + 1 == kScanIntervals) ? hi : lo + h * (i + 1);
        double fb = p(xb);
        if (fa == 0.0) out.push_back(xa);
        if (fa * fb < 0.0) out.push_back(bisect_root(p, xa, xb, fa));
        xa = xb;
        fa = fb;
    }
    if (fa == 0.0) out.push_back(hi);

    // Tangential roots never flip the sign; they sit on stationary points of
    // p, so recurse on p' and keep stationary points where p itself vanishes
    // within tol.
    if (p.degree() >= 2 && depth < Polynomial::max_degree) {
        std::vector<double> stat;
        collect_roots(p.derivative(), lo, hi, tol, stat, depth + 1);
        for (double s : stat) {
            if (std::abs(p(s)) <= tol) out.push_back(s);
        }
    }
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol) {
    if (p.is_zero()) throw DegenerateInput("cannot locate roots of the zero polynomial");
    if (!(lo < hi)) throw DegenerateInput("root search interval is empty");
    if (!(tol > 0.0)) throw DegenerateInput("root tolerance must be positive");

    std::vector<double> out;
    collect_roots(p, lo, hi, tol, out, 0);
    std::sort(out.begin(), out.end());

    // multiplicity is ignored; anything closer than tol is one root
    std::vector<double> merged;
    for (double r : out) {
        if (merged.empty() || r - merged.back() > tol) merged.push_back(r);
    }
    return merged;
}

}  // namespace mtcavity

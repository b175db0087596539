#pragma once

#include <initializer_list>
#include <vector>

namespace mtcavity {

// Real polynomial with ascending coefficients, degree capped at 6.
// Evaluation is a plain Horner loop, so identical inputs give identical
// bits on every call; nothing here depends on global state.
class Polynomial {
public:
    static constexpr int max_degree = 6;

    Polynomial() = default;  // identically zero
    Polynomial(std::initializer_list<double> ascending);
    explicit Polynomial(std::vector<double> ascending);

    double operator()(double x) const;

    const std::vector<double>& coeffs() const { return c_; }
    // degree of the zero polynomial is reported as 0
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    double leading_coeff() const { return c_.empty() ? 0.0 : c_.back(); }

    Polynomial derivative() const;
    // antiderivative with zero constant term
    Polynomial antiderivative() const;
    Polynomial scaled(double factor) const;
    Polynomial plus_constant(double value) const;

    bool operator==(const Polynomial& other) const { return c_ == other.c_; }

private:
    void trim();
    std::vector<double> c_;
};

// All real roots of p in [lo, hi], ascending, each reported once, located to
// absolute tolerance tol.  Sign changes are picked up by a 4096-interval scan
// plus bisection; tangential (even-multiplicity) roots are recovered from the
// roots of p' where |p| <= tol.  Throws DegenerateInput for the zero
// polynomial.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol);

}  // namespace mtcavity

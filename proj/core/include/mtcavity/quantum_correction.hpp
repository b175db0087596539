#pragma once

#include "mtcavity/kink.hpp"
#include "mtcavity/polynomial.hpp"
#include "mtcavity/traveling_wave.hpp"

namespace mtcavity {

// Gaussian smearing of a polynomial: each monomial z^m picks up the even
// central moments of a normal variable with the given variance,
//   z^m  ->  sum_j C(m, 2j) (2j-1)!! variance^j z^(m-2j),
// equivalently  sum_j variance^j / (2^j j!)  P^(2j).  variance = 0 is the
// identity.  Throws NegativeVariance for variance < 0.
Polynomial weierstrass(const Polynomial& p, double variance);

// smear the n-th derivative (n <= degree) of a potential
Polynomial smear_derivative(const Polynomial& potential, int n, double variance);

// Spatial variance profile sigma^2(xi) describing how strongly the on-site
// potential is smeared at each point of the co-moving frame.
class SmearingKernel {
public:
    enum class Kind { none, uniform, sech2_bump };

    static SmearingKernel none();
    static SmearingKernel uniform(double variance);
    // localized spot: variance(xi) = amplitude sech^2(xi / width)
    static SmearingKernel sech2_bump(double amplitude, double width);

    Kind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double width() const { return width_; }

    double variance_at(double xi) const;
    double asymptotic_variance() const;  // value as |xi| -> inf

private:
    SmearingKernel() = default;
    Kind kind_ = Kind::none;
    double amplitude_ = 0.0;
    double width_ = 1.0;
};

struct CorrectionOptions {
    int max_iterations = 8;
    double fp_tol = 1.0e-10;  // max |u_i - u_i'| between successive passes
    ShootOptions shoot;
};

struct CorrectionResult {
    KinkProfile profile;
    int iterations = 0;
    bool converged = false;
    double rho = 0.0;
    Polynomial effective_force;  // smeared force in the asymptotic regions
};

// Kink of the smeared problem: the force P is smeared with the local
// variance sigma^2(xi) and the connection is reshot until the profile stops
// moving (the force does not feed back on the profile, so the second pass
// already reproduces the first; the loop guards the contract rather than
// the physics).  End states are the extreme rest states of the smeared
// asymptotic force near the original pair, oriented downhill in
// V = -integral P.  Throws NoConnection when smearing leaves fewer than two
// rest states.  For localized kernels the width must be well inside the
// shooting window (xi_factor / slowest decay rate).
CorrectionResult corrected_kink(const TravelingWaveProblem& problem, const SmearingKernel& kernel,
                                double tol, const CorrectionOptions& opts = {});

}  // namespace mtcavity

#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mtcavity/polynomial.hpp"

namespace testutil {

// phi^4 double well U = (1 - u^2)^2 / 4, vacua +-1, kink tanh(xi / sqrt 2)
inline mtcavity::Polynomial phi4_potential() { return {0.25, 0.0, -0.5, 0.0, 0.25}; }

// U' = 2u(u - 1/4)(u - 1) / 2 ... the antiderivative of the Nagumo force
// scaled so the reduced problem at gamma = 0.75, v = 0.5 is exactly
// P = 2u^3 - 2.5u^2 + 0.5u (all ratios dyadic, no rounding anywhere)
inline mtcavity::Polynomial nagumo_scaled_potential() {
    return {0.0, 0.0, 0.1875, -0.625, 0.375};
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string make_temp_dir(const std::string& tag) {
    std::string tmpl = "/tmp/mtcavity_" + tag + "_XXXXXX";
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    return tmpl;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in) throw std::runtime_error("cannot read " + path);
    return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace testutil

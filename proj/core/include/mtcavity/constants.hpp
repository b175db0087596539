#pragma once

namespace mtcavity {

// CODATA 2018 values, SI.  hbar, e and kB are exact by definition since the
// 2019 redefinition; eps0 is the recommended measured value.
struct PhysConsts {
    double hbar = 1.054571817e-34;         // J s
    double elem_charge = 1.602176634e-19;  // C
    double eps0 = 8.8541878128e-12;        // F / m
    double kB = 1.380649e-23;              // J / K
};

inline constexpr PhysConsts consts{};

}  // namespace mtcavity

#pragma once

namespace mtcavity {

// SI dimension exponents (kg, m, s, A, K).  Multiplying quantities adds
// exponents; the estimator uses this to audit every reported relation.
struct Dim {
    int kg = 0;
    int m = 0;
    int s = 0;
    int A = 0;
    int K = 0;

    constexpr Dim operator*(const Dim& o) const {
        return {kg + o.kg, m + o.m, s + o.s, A + o.A, K + o.K};
    }
    constexpr Dim operator/(const Dim& o) const {
        return {kg - o.kg, m - o.m, s - o.s, A - o.A, K - o.K};
    }
    constexpr Dim pow(int n) const { return {kg * n, m * n, s * n, A * n, K * n}; }
    constexpr bool operator==(const Dim& o) const = default;
};

namespace dims {

inline constexpr Dim dimensionless{};
inline constexpr Dim kilogram{1, 0, 0, 0, 0};
inline constexpr Dim meter{0, 1, 0, 0, 0};
inline constexpr Dim second{0, 0, 1, 0, 0};
inline constexpr Dim ampere{0, 0, 0, 1, 0};
inline constexpr Dim kelvin{0, 0, 0, 0, 1};

inline constexpr Dim per_second = dimensionless / second;
inline constexpr Dim cubic_meter = meter.pow(3);
inline constexpr Dim coulomb = ampere * second;
inline constexpr Dim joule = kilogram * meter.pow(2) / second.pow(2);
inline constexpr Dim joule_second = joule * second;
inline constexpr Dim joule_per_kelvin = joule / kelvin;
inline constexpr Dim volt_per_meter = joule / (coulomb * meter);
inline constexpr Dim dipole_moment = coulomb * meter;
inline constexpr Dim vacuum_permittivity = coulomb.pow(2) / (joule * meter);

}  // namespace dims

}  // namespace mtcavity

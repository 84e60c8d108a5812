#pragma once

#include <cmath>

namespace nlh {

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// pi^{3/2}
inline const double pi_3_2 = std::sqrt(pi) * pi;

/// pi^3, the surface measure of the unit 5-sphere
inline const double pi_cubed = pi * pi * pi;

/// Model constants of the critical Hartree problem in six dimensions.
struct ModelConstants {
    double c_omega   = 12.0 / pi_3_2;  ///< amplitude of the ground state
    double c_hartree = 2.0 * pi_3_2;   ///< coupling in the Newton identity
    double vol_s5    = pi_cubed;       ///< surface measure of S^5
};

inline ModelConstants model_constants() { return {}; }

} // namespace nlh

#pragma once

#include "nlh/constants.hpp"

namespace nlh {

/// Closed-form radial profiles attached to the ground state
/// w(r) = 12 pi^{-3/2} (1+r^2)^{-2}.
enum class RadialProfile {
    Omega,        ///< the ground state itself
    OmegaPrime,   ///< dw/dr
    LambdaOmega,  ///< scaling mode 2 w + r w'
    OmegaSquared  ///< w^2
};

/// w(r); throws std::invalid_argument for negative or non-finite r.
double eval_omega(double r);

/// dw/dr = -48 pi^{-3/2} r (1+r^2)^{-3}
double eval_omega_prime(double r);

/// d2w/dr2 = -48 pi^{-3/2} (1-5r^2) (1+r^2)^{-4}
double eval_omega_second(double r);

/// Scaling mode 2 w(r) + r w'(r) = 24 pi^{-3/2} (1-r^2)(1+r^2)^{-3}.
/// Spans the radial kernel of the linearized operator; changes sign once,
/// at r = 1.
double eval_lambda_omega(double r);

/// w(r)^2
double eval_omega_squared(double r);

double eval_profile(RadialProfile kind, double r);

} // namespace nlh

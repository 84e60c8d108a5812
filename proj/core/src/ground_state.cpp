#include "nlh/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace nlh {

namespace {
void require_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("radius must be finite and nonnegative");
}
} // namespace

double eval_omega(double r) {
    require_radius(r);
    const double s = 1.0 + r * r;
    return (12.0 / pi_3_2) / (s * s);
}

double eval_omega_prime(double r) {
    require_radius(r);
    const double s = 1.0 + r * r;
    return -48.0 / pi_3_2 * r / (s * s * s);
}

double eval_omega_second(double r) {
    require_radius(r);
    const double s = 1.0 + r * r;
    return -48.0 / pi_3_2 * (1.0 - 5.0 * r * r) / (s * s * s * s);
}

double eval_lambda_omega(double r) {
    require_radius(r);
    const double s = 1.0 + r * r;
    return 24.0 / pi_3_2 * (1.0 - r * r) / (s * s * s);
}

double eval_omega_squared(double r) {
    const double w = eval_omega(r);
    return w * w;
}

double eval_profile(RadialProfile kind, double r) {
    switch (kind) {
        case RadialProfile::Omega: return eval_omega(r);
        case RadialProfile::OmegaPrime: return eval_omega_prime(r);
        case RadialProfile::LambdaOmega: return eval_lambda_omega(r);
        case RadialProfile::OmegaSquared: return eval_omega_squared(r);
    }
    throw std::invalid_argument("unknown profile");
}

} // namespace nlh

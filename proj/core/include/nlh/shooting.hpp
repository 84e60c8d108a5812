#pragma once

#include "nlh/radial_grid.hpp"

#include <vector>

namespace nlh {

/// Trajectory of the moment-augmented shooting system for the reduced
/// radial operator: with m_a(r) = int_0^r t phi w dt, m_b(r) = int_0^r t^5 phi w dt,
///   phi'' = -(5/r) phi' - 2 pi^{3/2} w phi - 2 pi^3 w(r) (m_b/r^4 - m_a),
/// started at r = eps from the Frobenius series phi = phi0 (1 - 2 r^2 + 6 r^4).
struct ShootingTrajectory {
    std::vector<double> r;
    std::vector<double> phi;
    std::vector<double> dphi;
    std::vector<double> m_a;
    std::vector<double> m_b;
    std::vector<double> lambda;  ///< 2 w(0) phi(r) / (phi0 w(r)); lambda(0) = 2
    double phi0 = 1.0;
    double rtol = 1e-10;
    double atol = 1e-12;
};

/// Integrate to r_max with adaptive Dormand-Prince 5(4), output every 0.05
/// by default or at the caller's radii. phi0 must be nonzero.
ShootingTrajectory shoot_frak_l0(double phi0, double r_max, double rtol, double atol,
                                 const std::vector<double>& output_radii = {});

struct BoundReport {
    /// per-node margins (value minus bound); negative = violation
    std::vector<double> growth_margin;   ///< lambda - 2 - [(9/5)r^4 + (12/5)r^2 - (12/5)log(1+r^2)]
    std::vector<double> quartic_margin;  ///< lambda - (r^4 + 1)
    std::vector<double> sign_margin;     ///< phi/phi0 - 1/4
    double min_growth_margin = 0.0;
    double min_quartic_margin = 0.0;
    double min_sign_margin = 0.0;
    double wronskian_max_rel = 0.0;      ///< identity d/dr[r^5 w^2 lambda'] residual
    bool all_pass = false;
    double tolerance = 1e-6;
};

/// Check the growth bounds and the Wronskian identity along a trajectory
/// with positive phi0. Violations are reported, not thrown.
BoundReport check_bounds(const ShootingTrajectory& traj, double tolerance = 1e-6);

/// Collocation matrix of the reduced operator (the mode-0 operator with its
/// rank-one tail integral added back), for consistency tests:
/// frak_L0 = L_0 + 2 pi^3 w(r) int_0^inf (.) w t dt.
MatrixXd frak_l0_matrix(const RadialGrid& grid);

} // namespace nlh

#pragma once

#include "nlh/radial_grid.hpp"

#include <array>

namespace nlh {

/// Two-branch mode kernel of the Newtonian potential in R^6:
/// K_k(t,r) = 2 pi^3/(k+2) * t^{k+5}/r^{k+4} (t<r) and r^k/t^{k-1} (t>r).
/// Continuous at t = r with value 2 pi^3/(k+2) * r; satisfies the weighted
/// symmetry r^5 K_k(t,r) = t^5 K_k(r,t).
double kernel_value(int k, double t, double r);

/// Grid discretization of f -> int_0^inf K_k(t, .) f(t) dt for one mode.
/// Holds the prefix-sum ingredients and the kink/cut correction vectors;
/// the O(n) prefix path and the dense matrix share this discretization
/// exactly.
class ModeKernel {
public:
    ModeKernel(const RadialGrid& grid, int k);

    int k() const { return k_; }
    const RadialGrid& grid() const { return *grid_; }

    /// O(n) application via two prefix sums plus local corrections.
    /// Pre: |f(r_n)| r_n^6 bounded (checked); violations throw.
    RadialFunction apply(const RadialFunction& f) const;

    /// Same discretization assembled as an n x n matrix.
    const MatrixXd& dense_matrix() const { return dense_; }

    /// Kink/cut correction part of the discretization alone (banded).
    MatrixXd correction_matrix() const;

    /// Prefix-sum path without the integrability check, raw vector interface.
    VectorXd apply_vector(const VectorXd& f) const;

private:
    const RadialGrid* grid_;
    int k_;
    double pref_;
    VectorXd tlow_, thi_;          // w t^{k+5}, w t^{1-k}
    VectorXd rlow_, rhi_;          // pref r^{-(k+4)}, pref r^k
    VectorXd corr0_, corr1_, corr2_; // coefficients on p, S1 p, S2 p (p = f W^{-1})
    MatrixXd small_rows_;          // n_small x 4 moment-correction rows (k <= 1)
    MatrixXd dense_;

    void build_corrections();
};

/// r -> int K_k(t,r) f(t) dt on the grid (one-shot convenience).
RadialFunction apply_mode_potential(const RadialGrid& g, int k, const RadialFunction& f);

/// Newtonian potential of a radial density by direct 2D adaptive quadrature:
/// Phi f(|x|) = |S^4| int_0^inf int_0^pi f(s) s^5 sin^4(th)
///              (|x|^2 - 2|x| s cos th + s^2)^{-2} dth ds,  |S^4| = 8 pi^2/3.
/// Independent of the mode-kernel machinery; used as an oracle.
/// Throws std::runtime_error when the requested tolerance is not reached.
double oracle_potential_direct(const std::function<double(double)>& f, double x_norm,
                               double rel_tol = 1e-9);

/// Truncated zonal expansion of |x-y|^{-4} in R^6:
/// sum_{k<=K} 2/(k+2) * min^k / max^{k+4} * zonal_density(k, cos angle).
/// Throws on |x| == |y| (expansion point) or zero vectors.
double expand_kernel(const std::array<double, 6>& x, const std::array<double, 6>& y,
                     int max_degree);

/// Per-term table of the expansion, for reporting.
std::vector<double> expand_kernel_terms(const std::array<double, 6>& x,
                                        const std::array<double, 6>& y, int max_degree);

} // namespace nlh

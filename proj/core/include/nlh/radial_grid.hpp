#pragma once

#include <Eigen/Dense>
#include <memory>

namespace nlh {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class RadialGrid;

/// Values of a radial profile at the nodes of one grid.
struct RadialFunction {
    const RadialGrid* grid = nullptr;
    VectorXd values;

    RadialFunction() = default;
    RadialFunction(const RadialGrid& g, VectorXd v);
    double operator[](Eigen::Index i) const { return values[i]; }
    Eigen::Index size() const { return values.size(); }
};

/// Collocation grid on (0, inf): interior Chebyshev-Lobatto points mapped by
/// r = L (1+u)/(1-u). Quadrature weights for dt and r^5 dr, differentiation
/// operators, and the correction tables used by the mode-kernel quadrature.
class RadialGrid {
public:
    /// n >= 16 nodes, map scale L > 0; throws std::invalid_argument otherwise.
    RadialGrid(int n, double map_scale);

    int n() const { return n_; }
    double map_scale() const { return map_scale_; }

    const VectorXd& nodes() const { return r_; }
    const VectorXd& u() const { return u_; }
    const VectorXd& weights_plain() const { return w_plain_; }
    const VectorXd& weights_r5() const { return w_r5_; }

    /// first/second derivative operators at the nodes (no boundary conditions,
    /// exact on 1, r, r^2)
    const MatrixXd& d1() const { return d1_; }
    const MatrixXd& d2() const { return d2_; }
    /// extended-precision rows of d1/d2, row-major
    const std::vector<long double>& derivative_rows(int order) const {
        return order == 1 ? d1_ld_ : d2_ld_;
    }

    /// Cumulative integration: (cumint() * h)[i] ~ int_0^{r_i} h(t) dt,
    /// panel-local, relatively accurate at every scale.
    const MatrixXd& cumint() const { return cumint_; }

    /// Derivative matrices on plain Lobatto interpolation with slaved
    /// endpoints: value 0 at u=+1 (r=inf); at u=-1 either value 0 or,
    /// when neumann_left, derivative 0. Used by the mode operators.
    void lobatto_derivatives(bool neumann_left, MatrixXd& d1_bc, MatrixXd& d2_bc) const;

    // --- mode-kernel quadrature correction tables -----------------------
    /// E-tables of the paired kink templates (t-r_i)^m/m! (1+t^2)^{-4}, m=1..3
    const MatrixXd& kink_tables() const { return kink_E_; }
    /// five-point derivative stencils (dense banded rows)
    const MatrixXd& stencil_d1() const { return stencil1_; }
    const MatrixXd& stencil_d2() const { return stencil2_; }
    /// nodes where stencil-based corrections are reliable
    const std::vector<bool>& stencil_trust() const { return trust_; }
    /// quadratic model of a function near r=0 from its first four node values;
    /// row l = coefficients of t^l
    const Eigen::Matrix<double, 3, 4>& left_fit() const { return left_fit_; }
    /// number of origin-side nodes handled by moment corrections
    int n_small() const { return n_small_; }

private:
    int n_;
    double map_scale_;
    VectorXd u_, r_, w_plain_, w_r5_;
    MatrixXd d1_, d2_;
    std::vector<long double> d1_ld_, d2_ld_;  // row-major, for differentiate()
    MatrixXd kink_E_;              // 4 x n (row 0 unused)
    MatrixXd stencil1_, stencil2_; // n x n, 5 nonzeros per row
    std::vector<bool> trust_;
    Eigen::Matrix<double, 3, 4> left_fit_;
    int n_small_ = 10;
    MatrixXd cumint_;

    void build_cumint();
};

/// Convenience factory mirroring the grid constructor.
RadialGrid build_grid(int n, double map_scale);

/// Sample a scalar function on the grid.
template <typename F>
RadialFunction sample(const RadialGrid& g, F&& f) {
    VectorXd v(g.n());
    for (int i = 0; i < g.n(); ++i) v[i] = f(g.nodes()[i]);
    return RadialFunction(g, std::move(v));
}

/// <f, g> = int f g r^5 dr; throws std::invalid_argument on grid mismatch.
double weighted_inner_product(const RadialFunction& f, const RadialFunction& g);

double weighted_norm(const RadialFunction& f);

/// Apply d1 (order 1) or d2 (order 2); other orders throw.
RadialFunction differentiate(const RadialFunction& f, int order);

} // namespace nlh

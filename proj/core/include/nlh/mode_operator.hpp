#pragma once

#include "nlh/potential.hpp"

namespace nlh {

/// Discretized one-dimensional mode operator
///   L_k f = -f'' - (5/r) f' + k(k+4)/r^2 f - 2 pi^{3/2} w f
///           - 2 w(r) int_0^inf K_k(t,r) w(t) f(t) dt
/// on L^2((0,inf), r^5 dr).
///
/// a_total is the pointwise (collocation) matrix with the boundary behavior
/// f'(0) = 0 (k = 0) or f(0) = 0 (k >= 1) and f(inf) = 0 slaved through the
/// map endpoints. s_sym is the same operator symmetrized in the r^5 dr
/// metric, assembled from the quadratic form in Liouville variables
/// v = r^{5/2} f, so that s_sym = W^{1/2} a W^{-1/2} holds at form level
/// without amplifying the weight range.
class ModeOperator {
public:
    ModeOperator(const RadialGrid& grid, int k);

    int k() const { return k_; }
    const RadialGrid& grid() const { return *grid_; }
    const ModeKernel& kernel() const { return kernel_; }

    const MatrixXd& a_total() const { return a_total_; }
    const MatrixXd& s_sym() const { return s_sym_; }
    /// max-norm asymmetry of s_sym before the explicit (S+S^T)/2 step
    double symmetry_defect() const { return defect_; }

    /// Matrix-vector application of a_total; nonlocal part available through
    /// the O(n) prefix path (identical discretization).
    RadialFunction apply(const RadialFunction& f) const;
    /// O(n log 1) fast path: local part dense row sweep is avoided; uses
    /// precomputed local diagonal/derivative action plus the kernel prefix sums.
    VectorXd apply_fast(const VectorXd& f) const;

private:
    const RadialGrid* grid_;
    int k_;
    ModeKernel kernel_;
    MatrixXd a_total_;
    MatrixXd local_;    // differential + local potential part of a_total
    MatrixXd s_sym_;
    double defect_ = 0.0;
};

ModeOperator assemble_mode_operator(const RadialGrid& grid, int k);

RadialFunction apply_mode_operator(const ModeOperator& op, const RadialFunction& f);

/// <L_k f, f> in the weighted inner product.
double quadratic_form(const ModeOperator& op, const RadialFunction& f);

struct MonotonicityGap {
    /// Q_k(f) - Q_{k-1}(f); the k-independent form terms cancel algebraically,
    /// so the difference is evaluated from the centrifugal term plus the
    /// nonlocal kernel difference (prefix-sum path)
    double direct = 0.0;
    /// same quantity from the closed-form double integral (cumulative
    /// integration path)
    double closed_form = 0.0;
};

/// Both evaluations of <L_k f,f> - <L_{k-1} f,f> for nonnegative f, k >= 1.
/// The closed form is
///   (2k+3) int f^2 r^3 dr
///   + 8 pi^3 int_{t<r} (wf)(r) (wf)(t) t^{k+4} r^{1-k} [ r/(k+1) - t/(k+2) ] dt dr,
/// evaluated with the grid's cumulative-integration operator.
/// Throws std::invalid_argument when f changes sign or vanishes.
MonotonicityGap monotonicity_gap(const ModeOperator& op_k, const ModeOperator& op_km1,
                                 const RadialFunction& f);

} // namespace nlh

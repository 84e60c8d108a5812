#include "nlh/mode_operator.hpp"

#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace nlh {

ModeOperator::ModeOperator(const RadialGrid& grid, int k)
    : grid_(&grid), k_(k), kernel_(grid, k) {
    if (k < 0) throw std::invalid_argument("mode degree must be nonnegative");
    const int n = grid.n();
    const VectorXd& r = grid.nodes();
    const VectorXd& w = grid.weights_plain();

    VectorXd om(n);
    for (int i = 0; i < n; ++i) om[i] = eval_omega(r[i]);

    // pointwise collocation operator
    MatrixXd d1b, d2b;
    grid.lobatto_derivatives(/*neumann_left=*/k == 0, d1b, d2b);
    local_ = -d2b;
    for (int i = 0; i < n; ++i) {
        local_.row(i) -= (5.0 / r[i]) * d1b.row(i);
        local_(i, i) += k * (k + 4.0) / (r[i] * r[i]) - 2.0 * pi_3_2 * om[i];
    }
    a_total_ = local_;
    {
        const MatrixXd& P = kernel_.dense_matrix();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a_total_(i, j) += -2.0 * om[i] * P(i, j) * om[j];
    }

    // symmetrized operator from the quadratic form in v = r^{5/2} f variables
    MatrixXd dv, dv2;
    grid.lobatto_derivatives(/*neumann_left=*/false, dv, dv2);
    MatrixXd F = dv.transpose() * w.asDiagonal() * dv;
    for (int i = 0; i < n; ++i)
        F(i, i) += w[i] * ((k * (k + 4.0) + 3.75) / (r[i] * r[i]) - 2.0 * pi_3_2 * om[i]);
    const double pref = 2.0 * pi_cubed / (k + 2.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double mn = r[j], mx = r[i];  // nodes ascending
            const double kap = pref * std::pow(mn, k + 5.0) * std::pow(mx, 1.0 - k) /
                               std::pow(mn * mx, 2.5);
            const double v = -2.0 * (w[i] * om[i]) * (w[j] * om[j]) * kap;
            F(i, j) += v;
            if (i != j) F(j, i) += v;
        }
    }
    {
        // corrections mapped to v-space: w_i r_i^{5/2} (-2 om_i) C_ij om_j r_j^{-5/2}
        const MatrixXd C = kernel_.correction_matrix();
        MatrixXd Cv(n, n);
        for (int i = 0; i < n; ++i) {
            const double li = w[i] * std::pow(r[i], 2.5) * (-2.0) * om[i];
            for (int j = 0; j < n; ++j) Cv(i, j) = li * C(i, j) * om[j] / std::pow(r[j], 2.5);
        }
        F += Cv;
    }
    s_sym_.resize(n, n);
    VectorXd sw = w.cwiseSqrt();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s_sym_(i, j) = F(i, j) / (sw[i] * sw[j]);
    defect_ = (s_sym_ - s_sym_.transpose()).cwiseAbs().maxCoeff() /
              s_sym_.cwiseAbs().maxCoeff();
    s_sym_ = 0.5 * (s_sym_ + s_sym_.transpose()).eval();
}

RadialFunction ModeOperator::apply(const RadialFunction& f) const {
    if (f.grid != grid_) throw std::invalid_argument("mode operator: grid mismatch");
    return RadialFunction(*grid_, a_total_ * f.values);
}

VectorXd ModeOperator::apply_fast(const VectorXd& f) const {
    const int n = grid_->n();
    const VectorXd& r = grid_->nodes();
    VectorXd q(n);
    for (int i = 0; i < n; ++i) q[i] = eval_omega(r[i]) * f[i];
    VectorXd nl = kernel_.apply_vector(q);
    VectorXd out = local_ * f;
    for (int i = 0; i < n; ++i) out[i] += -2.0 * eval_omega(r[i]) * nl[i];
    return out;
}

ModeOperator assemble_mode_operator(const RadialGrid& grid, int k) {
    return ModeOperator(grid, k);
}

RadialFunction apply_mode_operator(const ModeOperator& op, const RadialFunction& f) {
    return op.apply(f);
}

double quadratic_form(const ModeOperator& op, const RadialFunction& f) {
    return weighted_inner_product(op.apply(f), f);
}

MonotonicityGap monotonicity_gap(const ModeOperator& op_k, const ModeOperator& op_km1,
                                 const RadialFunction& f) {
    const RadialGrid& g = op_k.grid();
    if (&op_km1.grid() != &g || f.grid != &g)
        throw std::invalid_argument("monotonicity gap: grid mismatch");
    const int k = op_k.k();
    if (op_km1.k() != k - 1 || k < 1)
        throw std::invalid_argument("monotonicity gap: operators must be consecutive modes");
    const double fmax = f.values.cwiseAbs().maxCoeff();
    if (!(fmax > 0.0)) throw std::invalid_argument("monotonicity gap: f must be nonzero");
    if (f.values.minCoeff() < -1e-12 * fmax)
        throw std::invalid_argument("monotonicity gap: f must be nonnegative");

    // The derivative and local-potential terms of the two quadratic forms
    // cancel identically in the difference, which keeps the evaluation valid
    // for test functions outside the mode-k trial spaces (f(0) need not
    // vanish). The nonlocal difference still goes through the corrected
    // kernel quadrature.
    const int n = g.n();
    const VectorXd& r = g.nodes();
    const VectorXd& w = g.weights_plain();
    VectorXd gv(n);
    for (int i = 0; i < n; ++i) gv[i] = eval_omega(r[i]) * f.values[i];
    double cent = 0.0;
    for (int i = 0; i < n; ++i)
        cent += g.weights_r5()[i] * f.values[i] * f.values[i] / (r[i] * r[i]);

    MonotonicityGap gap;
    {
        const VectorXd dk = op_k.kernel().apply_vector(gv);
        const VectorXd dk1 = op_km1.kernel().apply_vector(gv);
        double nl = 0.0;
        for (int i = 0; i < n; ++i) nl += g.weights_r5()[i] * gv[i] * (dk[i] - dk1[i]);
        gap.direct = (2.0 * k + 3.0) * cent - 2.0 * nl;
    }

    // closed form: (2k+3) int f^2 r^3 dr
    //   + 8 pi^3 int (wf)(r) r^{1-k} [ r I_{k+4}(r)/(k+1) - I_{k+5}(r)/(k+2) ] dr,
    // I_m(r) = int_0^r t^m (wf)(t) dt via the panel-local cumulative rule,
    // whose partials stay relatively accurate down to the smallest radii
    VectorXd h4(n), h5(n);
    for (int i = 0; i < n; ++i) {
        h4[i] = gv[i] * std::pow(r[i], k + 4.0);
        h5[i] = h4[i] * r[i];
    }
    const MatrixXd& Q = g.cumint();
    const VectorXd I4 = Q * h4;
    const VectorXd I5 = Q * h5;
    double dbl = 0.0;
    for (int i = 0; i < n; ++i)
        dbl += w[i] * gv[i] * std::pow(r[i], 1.0 - k) *
               (r[i] * I4[i] / (k + 1.0) - I5[i] / (k + 2.0));
    gap.closed_form = (2.0 * k + 3.0) * cent + 8.0 * pi_cubed * dbl;
    return gap;
}

} // namespace nlh

#include "nlh/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace nlh {

namespace {

// sign changes over the region where the vector is trusted: hybridization
// residue beyond the localization radius is noise by construction
int count_sign_changes(const VectorXd& v, const VectorXd& r, double r_max,
                       double rel_floor = 1e-6) {
    double vmax = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (r[i] <= r_max) vmax = std::max(vmax, std::abs(v[i]));
    const double floor = rel_floor * vmax;
    int changes = 0;
    double last = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (r[i] > r_max || std::abs(v[i]) <= floor) continue;
        if (last != 0.0 && v[i] * last < 0.0) ++changes;
        last = v[i];
    }
    return changes;
}

} // namespace

SpectrumResult solve_spectrum(const ModeOperator& op, int num_eigs, double r_tail_factor) {
    const RadialGrid& g = op.grid();
    const int n = g.n();
    if (num_eigs < 1 || num_eigs > n - 2)
        throw std::invalid_argument("solve_spectrum: num_eigs must lie in [1, n-2]");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(op.s_sym());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_spectrum: eigensolver failed to converge");

    const double r_tail = r_tail_factor * g.map_scale();
    SpectrumResult out;
    out.k = op.k();
    out.r_tail = r_tail;
    out.eigenvalues = es.eigenvalues().head(num_eigs);
    out.eigenvectors.resize(n, num_eigs);
    out.residuals.resize(num_eigs);
    out.localization.resize(num_eigs);
    const VectorXd sw = g.weights_plain().cwiseSqrt();
    for (int m = 0; m < num_eigs; ++m) {
        VectorXd x = es.eigenvectors().col(m);
        // scaled -> v -> f, then normalize in the weighted metric
        VectorXd f(n);
        for (int i = 0; i < n; ++i) f[i] = x[i] / sw[i] / std::pow(g.nodes()[i], 2.5);
        RadialFunction rf(g, f);
        const double nrm = weighted_norm(rf);
        rf.values /= nrm;
        // fix a deterministic orientation
        Eigen::Index imax;
        rf.values.cwiseAbs().maxCoeff(&imax);
        if (rf.values[imax] < 0.0) rf.values = -rf.values;
        out.eigenvectors.col(m) = rf.values;
        const VectorXd res = op.s_sym() * x - out.eigenvalues[m] * x;
        out.residuals[m] = res.norm() / x.norm();
        double tail = 0.0;
        for (int i = 0; i < n; ++i)
            if (g.nodes()[i] > r_tail) tail += x[i] * x[i];
        out.localization[m] = tail / x.squaredNorm();
    }
    return out;
}

double residual_norm(const ModeOperator& op, const RadialFunction& f, double lambda) {
    const double nrm = weighted_norm(f);
    if (!(nrm > 0.0)) throw std::invalid_argument("residual_norm: zero function");
    RadialFunction lf = op.apply(f);
    lf.values -= lambda * f.values;
    return weighted_norm(lf) / nrm;
}

std::vector<KernelCandidate> classify_kernel(const ModeOperator& op, double tol_eig,
                                             double tail_fraction, double r_tail_factor,
                                             double edge_band) {
    if (!(tol_eig > 0.0)) throw std::invalid_argument("classify_kernel: tol_eig must be positive");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw std::invalid_argument("classify_kernel: tail_fraction must lie in (0,1)");
    const RadialGrid& g = op.grid();
    const int n = g.n();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(op.s_sym());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("classify_kernel: eigensolver failed to converge");
    const VectorXd& ev = es.eigenvalues();

    std::vector<int> band;
    for (int m = 0; m < n; ++m)
        if (std::abs(ev[m]) < edge_band) band.push_back(m);
    std::vector<KernelCandidate> out;
    if (band.empty()) return out;

    const double r_tail = r_tail_factor * g.map_scale();
    VectorXd tail_ind(n);
    for (int i = 0; i < n; ++i) tail_ind[i] = (g.nodes()[i] > r_tail) ? 1.0 : 0.0;

    // within the near-edge band, the combination with minimal tail mass;
    // the embedded zero mode hybridizes with box modes, so single eigenpairs
    // are not representative
    const int b = (int)band.size();
    MatrixXd B(n, b);
    for (int m = 0; m < b; ++m) B.col(m) = es.eigenvectors().col(band[m]);
    MatrixXd Mt = B.transpose() * tail_ind.asDiagonal() * B;
    Eigen::SelfAdjointEigenSolver<MatrixXd> tb(0.5 * (Mt + Mt.transpose()));
    const VectorXd c = tb.eigenvectors().col(0);
    VectorXd x = B * c;
    double lam_star = 0.0;
    for (int m = 0; m < b; ++m) lam_star += c[m] * c[m] * ev[band[m]];
    lam_star /= c.squaredNorm();
    const double loc = x.dot(tail_ind.asDiagonal() * x) / x.squaredNorm();

    if (std::abs(lam_star) <= tol_eig && loc <= tail_fraction) {
        const VectorXd sw = g.weights_plain().cwiseSqrt();
        VectorXd f(n);
        for (int i = 0; i < n; ++i) f[i] = x[i] / sw[i] / std::pow(g.nodes()[i], 2.5);
        RadialFunction rf(g, f);
        rf.values /= weighted_norm(rf);
        Eigen::Index imax;
        rf.values.cwiseAbs().maxCoeff(&imax);
        if (rf.values[imax] < 0.0) rf.values = -rf.values;
        KernelCandidate cand;
        cand.lambda = lam_star;
        cand.localization = loc;
        cand.sign_changes = count_sign_changes(x, g.nodes(), r_tail);  // scaled signs = f signs
        cand.vector = std::move(rf);
        out.push_back(std::move(cand));
    }
    return out;
}

} // namespace nlh

#include "nlh/potential.hpp"

#include "nlh/constants.hpp"
#include "nlh/harmonics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nlh {

double kernel_value(int k, double t, double r) {
    if (k < 0) throw std::invalid_argument("kernel degree must be nonnegative");
    if (!(t > 0.0) || !(r > 0.0)) throw std::invalid_argument("kernel radii must be positive");
    const double pref = 2.0 * pi_cubed / (k + 2.0);
    if (t < r) return pref * std::pow(t, k + 5) / std::pow(r, k + 4);
    return pref * std::pow(r, k) / std::pow(t, k - 1);
}

ModeKernel::ModeKernel(const RadialGrid& grid, int k) : grid_(&grid), k_(k) {
    if (k < 0) throw std::invalid_argument("kernel degree must be nonnegative");
    const int n = grid.n();
    const VectorXd& r = grid.nodes();
    const VectorXd& w = grid.weights_plain();
    pref_ = 2.0 * pi_cubed / (k + 2.0);
    tlow_.resize(n);
    thi_.resize(n);
    rlow_.resize(n);
    rhi_.resize(n);
    for (int i = 0; i < n; ++i) {
        tlow_[i] = w[i] * std::pow(r[i], k + 5);
        thi_[i] = w[i] * std::pow(r[i], 1.0 - k);
        rlow_[i] = pref_ * std::pow(r[i], -(k + 4.0));
        rhi_[i] = pref_ * std::pow(r[i], (double)k);
        if (!std::isfinite(tlow_[i]) || !std::isfinite(thi_[i]) || !std::isfinite(rlow_[i]) ||
            !std::isfinite(rhi_[i]))
            throw std::invalid_argument(
                "mode kernel: degree too large for this grid's radial range");
    }
    build_corrections();
    dense_ = correction_matrix();
    const int nn = grid.n();
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
            dense_(i, j) += (j < i) ? rlow_[i] * tlow_[j] : rhi_[i] * thi_[j];
}

void ModeKernel::build_corrections() {
    const RadialGrid& g = *grid_;
    const int n = g.n();
    const VectorXd& r = g.nodes();
    const MatrixXd& E = g.kink_tables();
    const auto& trust = g.stencil_trust();
    const int k = k_;

    corr0_.setZero(n);
    corr1_.setZero(n);
    corr2_.setZero(n);
    for (int i = 0; i < n; ++i) {
        const double d1j = -4.0 * pi_cubed;
        const double d2j = -20.0 * pi_cubed / r[i];
        const double d3j = -4.0 * pi_cubed * (k * k + 4.0 * k + 15.0) / (r[i] * r[i]);
        corr0_[i] = d1j * E(1, i) + d2j * E(2, i) + d3j * E(3, i);
        if (trust[i]) {
            corr1_[i] = 2.0 * d1j * E(2, i) + 3.0 * d2j * E(3, i);
            corr2_[i] = 3.0 * d1j * E(3, i);
        }
    }
    const int ns = (k <= 1) ? std::min(g.n_small(), n) : 0;
    for (int i = 0; i < ns; ++i) {
        corr0_[i] = 0.0;
        corr1_[i] = 0.0;
        corr2_[i] = 0.0;
    }
    // origin-side moment corrections, valid for k <= 1 where the branch
    // difference stays integrable down to t = 0
    small_rows_ = MatrixXd::Zero(ns, 4);
    const auto& fit = g.left_fit();
    const VectorXd& w = g.weights_plain();
    for (int i = 0; i < ns; ++i) {
        const double ri = r[i];
        for (int l = 0; l < 3; ++l) {
            const double co =
                pref_ * (std::pow(ri, l + 2.0) / (k + 6.0 + l) - std::pow(ri, l + 2.0) / (2.0 - k + l));
            for (int p = 0; p < 4; ++p) small_rows_(i, p) += co * fit(l, p);
        }
        for (int j = 0; j < i; ++j) {
            const double t = r[j];
            const double delta =
                pref_ * (std::pow(t, k + 5.0) / std::pow(ri, k + 4.0) -
                         std::pow(ri, (double)k) * std::pow(t, 1.0 - k));
            const double wd = w[j] * delta;
            for (int p = 0; p < 4; ++p)
                small_rows_(i, p) -= wd * (fit(0, p) + fit(1, p) * t + fit(2, p) * t * t);
        }
    }
}

VectorXd ModeKernel::apply_vector(const VectorXd& q) const {
    const RadialGrid& g = *grid_;
    const int n = g.n();
    const VectorXd& r = g.nodes();
    VectorXd out(n);
    // two prefix sums: lower over j < i, upper over j >= i
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = rlow_[i] * acc;
        acc += tlow_[i] * q[i];
    }
    acc = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        acc += thi_[i] * q[i];
        out[i] += rhi_[i] * acc;
    }
    // kink/cut corrections in p = q (1+r^2)^4 space
    VectorXd p(n);
    for (int i = 0; i < n; ++i) {
        const double s = 1.0 + r[i] * r[i];
        p[i] = q[i] * s * s * s * s;
    }
    const MatrixXd& S1 = g.stencil_d1();
    const MatrixXd& S2 = g.stencil_d2();
    for (int i = 0; i < n; ++i) {
        double c = corr0_[i] * p[i];
        if (corr1_[i] != 0.0 || corr2_[i] != 0.0) {
            int a = i - 2;
            if (a < 0) a = 0;
            if (a > n - 5) a = n - 5;
            double dp = 0.0, d2p = 0.0;
            for (int pnt = a; pnt < a + 5; ++pnt) {
                dp += S1(i, pnt) * p[pnt];
                d2p += S2(i, pnt) * p[pnt];
            }
            c += corr1_[i] * dp + corr2_[i] * d2p;
        }
        out[i] += c;
    }
    for (int i = 0; i < small_rows_.rows(); ++i)
        out[i] += small_rows_(i, 0) * q[0] + small_rows_(i, 1) * q[1] +
                  small_rows_(i, 2) * q[2] + small_rows_(i, 3) * q[3];
    return out;
}

RadialFunction ModeKernel::apply(const RadialFunction& f) const {
    if (f.grid != grid_) throw std::invalid_argument("mode kernel: grid mismatch");
    const int n = grid_->n();
    const double rn = grid_->nodes()[n - 1];
    const double scale = 1.0 + f.values.cwiseAbs().maxCoeff();
    if (std::abs(f.values[n - 1]) * std::pow(rn, 6.0) > 1e12 * scale)
        throw std::runtime_error("mode kernel: integrand grows too fast at infinity");
    return RadialFunction(*grid_, apply_vector(f.values));
}

MatrixXd ModeKernel::correction_matrix() const {
    const RadialGrid& g = *grid_;
    const int n = g.n();
    const VectorXd& r = g.nodes();
    const MatrixXd& S1 = g.stencil_d1();
    const MatrixXd& S2 = g.stencil_d2();
    MatrixXd M = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int a = i - 2;
        if (a < 0) a = 0;
        if (a > n - 5) a = n - 5;
        for (int pnt = 0; pnt < n; ++pnt) {
            double c = (pnt == i) ? corr0_[i] : 0.0;
            if (pnt >= a && pnt < a + 5) c += corr1_[i] * S1(i, pnt) + corr2_[i] * S2(i, pnt);
            if (c != 0.0) {
                const double s = 1.0 + r[pnt] * r[pnt];
                M(i, pnt) += c * s * s * s * s;
            }
        }
    }
    for (int i = 0; i < small_rows_.rows(); ++i)
        for (int p = 0; p < 4; ++p) M(i, p) += small_rows_(i, p);
    return M;
}

RadialFunction apply_mode_potential(const RadialGrid& g, int k, const RadialFunction& f) {
    return ModeKernel(g, k).apply(f);
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod 7/15

namespace {

const double gk_x[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                        0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                        0.2077849550078985, 0.0};
const double gk_wk[8] = {0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
                         0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                         0.2044329400752989, 0.2094821410847278};
const double gk_wg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                         0.4179591836734694};

struct GkEstimate {
    double value;
    double error;
};

template <typename F>
GkEstimate gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk_x[i];
        const double v = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
        fk += gk_wk[i] * v;
        if (i % 2 == 1) fg += gk_wg[i / 2] * v;
    }
    const double value = fk * h;
    const double err = std::abs((fk - fg) * h);
    return {value, err};
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol, double abs_tol,
                          int max_depth = 48) {
    struct Item {
        double a, b, value, error;
        int depth;
    };
    GkEstimate first = gk15(f, a, b);
    std::vector<Item> stack{{a, b, first.value, first.error, 0}};
    double total = first.value;
    double total_err = first.error;
    int iterations = 0;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (++iterations > 20000)
            throw std::runtime_error("adaptive quadrature did not reach tolerance");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].error > stack[worst].error) worst = i;
        Item it = stack[worst];
        if (it.depth >= max_depth)
            throw std::runtime_error("adaptive quadrature hit maximal refinement depth");
        stack.erase(stack.begin() + (std::ptrdiff_t)worst);
        const double m = 0.5 * (it.a + it.b);
        GkEstimate lft = gk15(f, it.a, m);
        GkEstimate rgt = gk15(f, m, it.b);
        total += lft.value + rgt.value - it.value;
        total_err += lft.error + rgt.error - it.error;
        stack.push_back({it.a, m, lft.value, lft.error, it.depth + 1});
        stack.push_back({m, it.b, rgt.value, rgt.error, it.depth + 1});
    }
    return total;
}

} // namespace

double oracle_potential_direct(const std::function<double(double)>& f, double x_norm,
                               double rel_tol) {
    if (!(x_norm >= 0.0)) throw std::invalid_argument("oracle: radius must be nonnegative");
    if (x_norm == 0.0) {
        // Phi f(0) = pi^3 int_0^inf f(s) s ds
        auto h = [&f](double s) { return f(s) * s; };
        double inner = integrate_adaptive(h, 0.0, 1.0, rel_tol * 0.25, 0.0);
        auto tail = [&f](double tau) {
            const double s = 1.0 / tau;
            return f(s) * s * (s * s);  // h(1/tau)/tau^2
        };
        inner += integrate_adaptive(tail, 1e-9, 1.0, rel_tol * 0.25, 1e-300);
        return pi_cubed * inner;
    }
    const double s4 = 8.0 * pi * pi / 3.0;  // |S^4|
    auto angular = [&](double s) {
        auto g = [&](double th) {
            const double st = std::sin(th);
            const double q = x_norm * x_norm - 2.0 * x_norm * s * std::cos(th) + s * s;
            return st * st * st * st / (q * q);
        };
        return integrate_adaptive(g, 0.0, pi, rel_tol * 0.1, 1e-300);
    };
    auto outer = [&](double s) { return f(s) * std::pow(s, 5.0) * angular(s); };
    const double x = x_norm;
    double total = integrate_adaptive(outer, 0.0, x, rel_tol * 0.25, 1e-300);
    total += integrate_adaptive(outer, x, 2.0 * x, rel_tol * 0.25, 1e-300);
    auto tail = [&](double tau) {
        const double s = 2.0 * x / tau;
        return outer(s) * (2.0 * x) / (tau * tau);
    };
    total += integrate_adaptive(tail, 1e-9, 1.0, rel_tol * 0.25, 1e-300);
    return s4 * total;
}

// ---------------------------------------------------------------------------

std::vector<double> expand_kernel_terms(const std::array<double, 6>& x,
                                        const std::array<double, 6>& y, int max_degree) {
    double nx = 0.0, ny = 0.0, dot = 0.0;
    for (int i = 0; i < 6; ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
        dot += x[i] * y[i];
    }
    nx = std::sqrt(nx);
    ny = std::sqrt(ny);
    if (nx == 0.0 || ny == 0.0) throw std::invalid_argument("expansion needs nonzero vectors");
    if (nx == ny) throw std::invalid_argument("expansion diverges at |x| = |y|");
    const double mn = std::min(nx, ny), mx = std::max(nx, ny);
    const double rho = mn / mx;
    double t = dot / (nx * ny);
    t = std::min(1.0, std::max(-1.0, t));
    GegenbauerTable table(max_degree);
    const std::vector<double> c = table.eval_all(t);
    std::vector<double> terms(max_degree + 1);
    double radial = 1.0 / (mx * mx * mx * mx);
    for (int k = 0; k <= max_degree; ++k) {
        // 2/(k+2) * zonal_density = C_k^{(2)}
        terms[k] = radial * c[k];
        radial *= rho;
    }
    return terms;
}

double expand_kernel(const std::array<double, 6>& x, const std::array<double, 6>& y,
                     int max_degree) {
    const std::vector<double> terms = expand_kernel_terms(x, y, max_degree);
    double s = 0.0;
    for (double v : terms) s += v;
    return s;
}

} // namespace nlh

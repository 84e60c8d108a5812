#include "nlh/radial_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlh {

namespace {

constexpr long double PI_L = 3.14159265358979323846264338327950288L;

// int_r^inf (t-r)^m/m! (1+t^2)^{-4} dt, m = 1,2,3. Long-double closed forms
// with a large-r series branch (the direct forms cancel ~r^5 digits).
long double template_tail(int m, long double r) {
    if (r >= 8.0L) {
        const long double x = 1.0L / (r * r);
        long double s = 0.0L;
        switch (m) {
            case 1:
                s = 11.0L / 27 * x - 11.0L / 30;
                s = s * x + 15.0L / 46;
                s = s * x - 2.0L / 7;
                s = s * x + 14.0L / 57;
                s = s * x - 7.0L / 34;
                s = s * x + 1.0L / 6;
                s = s * x - 5.0L / 39;
                s = s * x + 1.0L / 11;
                s = s * x - 1.0L / 18;
                s = s * x + 1.0L / 42;
                return s * x * x * x;
            case 2:
                s = -13.0L / 783 * x + 11.0L / 675;
                s = s * x - 11.0L / 690;
                s = s * x + 5.0L / 322;
                s = s * x - 2.0L / 133;
                s = s * x + 14.0L / 969;
                s = s * x - 7.0L / 510;
                s = s * x + 1.0L / 78;
                s = s * x - 5.0L / 429;
                s = s * x + 1.0L / 99;
                s = s * x - 1.0L / 126;
                s = s * x + 1.0L / 210;
                return s * x * x * sqrtl(x);  // x^{5/2}
            case 3:
                s = -1.0L / 1566 * x + 11.0L / 16200;
                s = s * x - 1.0L / 1380;
                s = s * x + 1.0L / 1288;
                s = s * x - 1.0L / 1197;
                s = s * x + 7.0L / 7752;
                s = s * x - 1.0L / 1020;
                s = s * x + 1.0L / 936;
                s = s * x - 1.0L / 858;
                s = s * x + 1.0L / 792;
                s = s * x - 1.0L / 756;
                s = s * x + 1.0L / 840;
                return s * x * x;
        }
    }
    const long double c = atanl(1.0L / r);
    const long double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r5 = r4 * r;
    switch (m) {
        case 1:
            return (-30.0L * r5 * c + 30.0L * r4 - 60.0L * r3 * c + 50.0L * r2 -
                    30.0L * r * c + 16.0L) /
                   (96.0L * (1.0L + r2) * (1.0L + r2));
        case 2:
            return (30.0L * r4 * c - 30.0L * r3 + 36.0L * r2 * c - 26.0L * r + 6.0L * c) /
                   (192.0L * (1.0L + r2));
        case 3:
            return -5.0L * r3 * c / 96.0L + 5.0L * r2 / 96.0L - r * c / 32.0L +
                   1.0L / 72.0L;
    }
    return 0.0L;
}

struct ChebInterior {
    std::vector<long double> u, theta, w_u, bary;
    std::vector<std::vector<long double>> D, D2;
};

// interior Chebyshev-Lobatto points (zeros of U_n), barycentric
// differentiation matrices and Fejer-2 weights, all in long double
ChebInterior build_interior(int n) {
    const int M = n + 1;
    ChebInterior c;
    c.u.resize(n);
    c.theta.resize(n);
    c.w_u.resize(n);
    c.bary.resize(n);
    for (int j = 1; j <= n; ++j) {
        const long double th = (long double)(M - j) * PI_L / M;
        c.theta[j - 1] = th;
        c.u[j - 1] = cosl(th);
        const long double st = sinl(th);
        c.bary[j - 1] = ((j % 2) ? -1.0L : 1.0L) * st * st;
        long double s = 0.0L;
        for (int m = 1; m <= M / 2; ++m)
            s += sinl((2.0L * m - 1.0L) * th) / (2.0L * m - 1.0L);
        c.w_u[j - 1] = 4.0L / M * st * s;
    }
    c.D.assign(n, std::vector<long double>(n, 0.0L));
    c.D2.assign(n, std::vector<long double>(n, 0.0L));
    for (int i = 0; i < n; ++i) {
        long double diag = 0.0L;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            c.D[i][j] = (c.bary[j] / c.bary[i]) / (c.u[i] - c.u[j]);
            diag -= c.D[i][j];
        }
        c.D[i][i] = diag;
    }
    for (int i = 0; i < n; ++i) {
        long double diag = 0.0L;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            c.D2[i][j] = 2.0L * c.D[i][j] * (c.D[i][i] - 1.0L / (c.u[i] - c.u[j]));
            diag -= c.D2[i][j];
        }
        c.D2[i][i] = diag;
    }
    return c;
}

} // namespace

RadialFunction::RadialFunction(const RadialGrid& g, VectorXd v) : grid(&g), values(std::move(v)) {
    if (values.size() != g.n())
        throw std::invalid_argument("value count does not match grid size");
}

RadialGrid::RadialGrid(int n, double map_scale) : n_(n), map_scale_(map_scale) {
    if (n < 16) throw std::invalid_argument("grid needs at least 16 nodes");
    if (!(map_scale > 0.0)) throw std::invalid_argument("map scale must be positive");

    const ChebInterior c = build_interior(n);
    const long double L = map_scale;

    u_.resize(n);
    r_.resize(n);
    w_plain_.resize(n);
    w_r5_.resize(n);
    for (int i = 0; i < n; ++i) {
        const long double om = 1.0L - c.u[i];
        const long double r = L * (1.0L + c.u[i]) / om;
        const long double wp = c.w_u[i] * 2.0L * L / (om * om);
        u_[i] = (double)c.u[i];
        r_[i] = (double)r;
        w_plain_[i] = (double)wp;
        w_r5_[i] = (double)(wp * r * r * r * r * r);
        if (!(r_[i] > 0.0) || !(w_plain_[i] > 0.0))
            throw std::runtime_error("grid build produced nonpositive node or weight");
        if (i > 0 && !(r_[i] > r_[i - 1]))
            throw std::runtime_error("grid nodes not increasing");
    }

    // d1 = (D diag((1-u)^2) + diag(2(1-u)))/(2L)
    // d2 = (diag((1-u)^2) D2 diag((1-u)^2) + 2 diag(1-u) D diag((1-u)^2)
    //       + 2 diag((1-u)^2))/(4L^2)
    d1_.resize(n, n);
    d2_.resize(n, n);
    d1_ld_.resize((std::size_t)n * n);
    d2_ld_.resize((std::size_t)n * n);
    for (int i = 0; i < n; ++i) {
        const long double omi = 1.0L - c.u[i];
        for (int j = 0; j < n; ++j) {
            const long double omj2 = (1.0L - c.u[j]) * (1.0L - c.u[j]);
            long double v1 = c.D[i][j] * omj2;
            long double v2 = omi * omi * c.D2[i][j] * omj2 + 2.0L * omi * c.D[i][j] * omj2;
            if (i == j) {
                v1 += 2.0L * omi;
                v2 += 2.0L * omi * omi;
            }
            v1 /= 2.0L * L;
            v2 /= 4.0L * L * L;
            d1_(i, j) = (double)v1;
            d2_(i, j) = (double)v2;
            d1_ld_[(std::size_t)i * n + j] = v1;
            d2_ld_[(std::size_t)i * n + j] = v2;
        }
    }

    // kink-template tables E_m[i] = exact tail integral - quadrature sum
    kink_E_ = MatrixXd::Zero(4, n);
    for (int i = 0; i < n; ++i) {
        const long double ri = r_[i];
        long double rule[4] = {0.0L, 0.0L, 0.0L, 0.0L};
        for (int j = i + 1; j < n; ++j) {
            const long double d = (long double)r_[j] - ri;
            const long double t2 = (long double)r_[j] * r_[j];
            const long double wgt = (long double)w_plain_[j] /
                                    ((1.0L + t2) * (1.0L + t2) * (1.0L + t2) * (1.0L + t2));
            rule[1] += wgt * d;
            rule[2] += wgt * d * d * 0.5L;
            rule[3] += wgt * d * d * d / 6.0L;
        }
        for (int m = 1; m <= 3; ++m)
            kink_E_(m, i) = (double)(template_tail(m, ri) - rule[m]);
    }

    // five-point derivative stencils, scaled Vandermonde solves
    stencil1_ = MatrixXd::Zero(n, n);
    stencil2_ = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int a = i - 2;
        if (a < 0) a = 0;
        if (a > n - 5) a = n - 5;
        Eigen::Matrix<double, 5, 5> V;
        double h = 0.0;
        for (int p = 0; p < 5; ++p) h = std::max(h, std::abs(r_[a + p] - r_[i]));
        for (int p = 0; p < 5; ++p) {
            const double x = (r_[a + p] - r_[i]) / h;
            double pw = 1.0;
            for (int l = 0; l < 5; ++l) {
                V(l, p) = pw;
                pw *= x;
            }
        }
        Eigen::Matrix<double, 5, 1> rhs1 = Eigen::Matrix<double, 5, 1>::Zero();
        Eigen::Matrix<double, 5, 1> rhs2 = Eigen::Matrix<double, 5, 1>::Zero();
        rhs1(1) = 1.0;
        rhs2(2) = 2.0;
        const auto lu = V.fullPivLu();
        const Eigen::Matrix<double, 5, 1> c1 = lu.solve(rhs1);
        const Eigen::Matrix<double, 5, 1> c2 = lu.solve(rhs2);
        for (int p = 0; p < 5; ++p) {
            stencil1_(i, a + p) = c1(p) / h;
            stencil2_(i, a + p) = c2(p) / (h * h);
        }
    }

    trust_.resize(n);
    for (int i = 0; i < n; ++i) {
        const double hi = r_[std::min(i + 2, n - 1)];
        const double lo = r_[std::max(i - 2, 0)];
        trust_[i] = hi / lo <= 3.0;
    }

    // quadratic model near the origin from the first four nodes
    {
        Eigen::Matrix<double, 4, 3> V;
        const double s = r_[3];
        for (int p = 0; p < 4; ++p) {
            const double x = r_[p] / s;
            V(p, 0) = 1.0;
            V(p, 1) = x;
            V(p, 2) = x * x;
        }
        const Eigen::Matrix<double, 3, 4> pinv =
            (V.transpose() * V).ldlt().solve(V.transpose() * Eigen::Matrix4d::Identity());
        for (int l = 0; l < 3; ++l)
            for (int p = 0; p < 4; ++p) left_fit_(l, p) = pinv(l, p) / std::pow(s, l);
    }

    build_cumint();
}

void RadialGrid::build_cumint() {
    const int n = n_;
    // Panel-local cumulative rule in the map variable: the integral up to u_i
    // is the prefix of per-panel integrals of local interpolants, so every
    // partial carries relative (not global-absolute) accuracy. Each panel of
    // eight node intervals integrates the 13-node barycentric interpolant
    // with a 12-point Gauss-Legendre rule on the exact subinterval.
    constexpr int panel = 8;
    static const double gl_x[6] = {0.1252334085114689, 0.3678314989981802,
                                   0.5873179542866175, 0.7699026741943047,
                                   0.9041172563704749, 0.9815606342467192};
    static const double gl_w[6] = {0.2491470458134028, 0.2334925365383548,
                                   0.2031674267230659, 0.1600783285433462,
                                   0.1069393259953184, 0.0471753363865118};
    cumint_ = MatrixXd::Zero(n, n);

    // row(i) accumulates int_{a}^{b} of the interpolant through stencil nodes,
    // expressed as coefficients on the stencil values of h(t) (including the
    // dr/du Jacobian at the sampled points)
    auto add_interval = [&](Eigen::RowVectorXd& row, int s_lo, int s_hi, double a, double b) {
        if (b <= a) return;
        const int m = s_hi - s_lo + 1;
        std::vector<double> bw(m);  // barycentric weights of the stencil in u
        for (int p = 0; p < m; ++p) {
            long double prod = 1.0L;
            for (int q = 0; q < m; ++q)
                if (q != p) prod *= (long double)(u_[s_lo + p] - u_[s_lo + q]);
            bw[p] = (double)(1.0L / prod);
        }
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int gp = 0; gp < 12; ++gp) {
            const double x = (gp < 6) ? c - h * gl_x[gp] : c + h * gl_x[gp - 6];
            const double wq = h * gl_w[gp % 6];
            const double om = 1.0 - x;
            const double jac = 2.0 * map_scale_ / (om * om);
            // barycentric evaluation weights at x
            double denom = 0.0;
            bool at_node = false;
            for (int p = 0; p < m; ++p) {
                const double d = x - u_[s_lo + p];
                if (d == 0.0) {
                    row(s_lo + p) += wq * jac;
                    at_node = true;
                    break;
                }
                denom += bw[p] / d;
            }
            if (at_node) continue;
            for (int p = 0; p < m; ++p)
                row(s_lo + p) += wq * jac * (bw[p] / (x - u_[s_lo + p])) / denom;
        }
    };

    // panel q spans [a_q, u_{(q+1)*panel-1}] with a_0 = -1, a_q = u_{q*panel-1}
    const int npanel = (n + panel - 1) / panel;
    std::vector<Eigen::RowVectorXd> panel_rows(npanel, Eigen::RowVectorXd::Zero(n));
    Eigen::RowVectorXd prefix = Eigen::RowVectorXd::Zero(n);
    std::vector<Eigen::RowVectorXd> prefix_rows(npanel, Eigen::RowVectorXd::Zero(n));
    for (int q = 0; q < npanel; ++q) {
        prefix_rows[q] = prefix;
        const int j0 = q * panel;
        const int j1 = std::min((q + 1) * panel - 1, n - 1);
        const double a = (j0 == 0) ? -1.0 : u_[j0 - 1];
        const int s_lo = std::max(0, j0 - 3);
        const int s_hi = std::min(n - 1, j1 + 3);
        add_interval(panel_rows[q], s_lo, s_hi, a, u_[j1]);
        prefix += panel_rows[q];
    }
    for (int i = 0; i < n; ++i) {
        const int q = i / panel;
        Eigen::RowVectorXd row = prefix_rows[q];
        const int j0 = q * panel;
        const int j1 = std::min((q + 1) * panel - 1, n - 1);
        const double a = (j0 == 0) ? -1.0 : u_[j0 - 1];
        const int s_lo = std::max(0, j0 - 3);
        const int s_hi = std::min(n - 1, j1 + 3);
        add_interval(row, s_lo, s_hi, a, u_[i]);
        cumint_.row(i) = row;
    }
}

void RadialGrid::lobatto_derivatives(bool neumann_left, MatrixXd& d1_bc, MatrixXd& d2_bc) const {
    const int n = n_;
    const int M = n + 1;  // Lobatto grid has M+1 = n+2 points
    std::vector<long double> y(M + 1), b(M + 1);
    for (int j = 0; j <= M; ++j) {
        y[j] = -cosl((long double)j * PI_L / M);
        b[j] = ((j % 2) ? -1.0L : 1.0L) / ((j == 0 || j == M) ? 2.0L : 1.0L);
    }
    std::vector<std::vector<long double>> D(M + 1, std::vector<long double>(M + 1, 0.0L));
    std::vector<std::vector<long double>> D2(M + 1, std::vector<long double>(M + 1, 0.0L));
    for (int i = 0; i <= M; ++i) {
        long double diag = 0.0L;
        for (int j = 0; j <= M; ++j) {
            if (i == j) continue;
            D[i][j] = (b[j] / b[i]) / (y[i] - y[j]);
            diag -= D[i][j];
        }
        D[i][i] = diag;
    }
    for (int i = 0; i <= M; ++i) {
        long double diag = 0.0L;
        for (int j = 0; j <= M; ++j) {
            if (i == j) continue;
            D2[i][j] = 2.0L * D[i][j] * (D[i][i] - 1.0L / (y[i] - y[j]));
            diag -= D2[i][j];
        }
        D2[i][i] = diag;
    }
    // interior block with slaved endpoints: f(+1) = 0 always;
    // f(-1) = 0 (Dirichlet) or from f_u(-1) = 0 (Neumann).
    std::vector<long double> coef(n, 0.0L);
    if (neumann_left) {
        for (int j = 1; j <= n; ++j) coef[j - 1] = -D[0][j] / D[0][0];
    }
    d1_bc.resize(n, n);
    d2_bc.resize(n, n);
    const long double L = map_scale_;
    for (int i = 1; i <= n; ++i) {
        const long double om = 1.0L - y[i];
        const long double up = om * om / (2.0L * L);
        const long double upp = -om * om * om / (2.0L * L * L);
        for (int j = 1; j <= n; ++j) {
            long double du = D[i][j];
            long double d2u = D2[i][j];
            if (neumann_left) {
                du += D[i][0] * coef[j - 1];
                d2u += D2[i][0] * coef[j - 1];
            }
            d1_bc(i - 1, j - 1) = (double)(up * du);
            d2_bc(i - 1, j - 1) = (double)(up * up * d2u + upp * du);
        }
    }
}

RadialGrid build_grid(int n, double map_scale) { return RadialGrid(n, map_scale); }

double weighted_inner_product(const RadialFunction& f, const RadialFunction& g) {
    if (f.grid == nullptr || f.grid != g.grid)
        throw std::invalid_argument("weighted_inner_product: grids do not match");
    return f.grid->weights_r5().dot(f.values.cwiseProduct(g.values));
}

double weighted_norm(const RadialFunction& f) {
    return std::sqrt(std::max(0.0, weighted_inner_product(f, f)));
}

RadialFunction differentiate(const RadialFunction& f, int order) {
    if (f.grid == nullptr) throw std::invalid_argument("differentiate: empty function");
    if (order != 1 && order != 2)
        throw std::invalid_argument("differentiate: order must be 1 or 2");
    // extended-precision first-derivative rows; the second derivative is the
    // composition, which keeps the row conditioning at first-derivative level
    const int n = f.grid->n();
    const std::vector<long double>& D = f.grid->derivative_rows(1);
    std::vector<long double> work(n), out_ld(n);
    for (int i = 0; i < n; ++i) {
        long double acc = 0.0L;
        for (int j = 0; j < n; ++j)
            acc += D[(std::size_t)i * n + j] * (long double)f.values[j];
        work[i] = acc;
    }
    if (order == 2) {
        for (int i = 0; i < n; ++i) {
            long double acc = 0.0L;
            for (int j = 0; j < n; ++j) acc += D[(std::size_t)i * n + j] * work[j];
            out_ld[i] = acc;
        }
    } else {
        out_ld = work;
    }
    VectorXd out(n);
    for (int i = 0; i < n; ++i) out[i] = (double)out_ld[i];
    return RadialFunction(*f.grid, std::move(out));
}

} // namespace nlh

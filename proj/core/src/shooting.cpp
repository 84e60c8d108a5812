#include "nlh/shooting.hpp"

#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"
#include "nlh/mode_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nlh {

namespace {

using State = std::array<double, 4>;  // phi, phi', m_a, m_b

State rhs(double r, const State& y) {
    const double w = eval_omega(r);
    const double r2 = r * r;
    State d;
    d[0] = y[1];
    d[1] = -5.0 / r * y[1] - 2.0 * pi_3_2 * w * y[0] -
           2.0 * pi_cubed * w * (y[3] / (r2 * r2) - y[2]);
    d[2] = r * y[0] * w;
    d[3] = r2 * r2 * r * y[0] * w;
    return d;
}

// Dormand-Prince 5(4)
struct DpStep {
    State y5;
    State err;
};

DpStep dp45(double r, const State& y, double h) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const State k1 = rhs(r, y);
    State t = y;
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * a21 * k1[i];
    const State k2 = rhs(r + h / 5.0, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const State k3 = rhs(r + 3.0 * h / 10.0, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State k4 = rhs(r + 4.0 * h / 5.0, t);
    for (int i = 0; i < 4; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State k5 = rhs(r + 8.0 * h / 9.0, t);
    for (int i = 0; i < 4; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State k6 = rhs(r + h, t);
    DpStep s;
    for (int i = 0; i < 4; ++i)
        s.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State k7 = rhs(r + h, s.y5);
    for (int i = 0; i < 4; ++i)
        s.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
    return s;
}

} // namespace

ShootingTrajectory shoot_frak_l0(double phi0, double r_max, double rtol, double atol,
                                 const std::vector<double>& output_radii) {
    if (phi0 == 0.0) throw std::invalid_argument("shoot: phi0 must be nonzero");
    if (!(r_max > 0.0)) throw std::invalid_argument("shoot: r_max must be positive");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("shoot: tolerances must be positive");

    std::vector<double> rout = output_radii;
    if (rout.empty()) {
        const long m = std::lround(std::floor(r_max / 0.05 + 1e-9));
        for (long i = 1; i <= m; ++i) rout.push_back(0.05 * (double)i);
    }
    std::sort(rout.begin(), rout.end());
    if (rout.empty()) throw std::invalid_argument("shoot: no output radii below r_max");
    if (rout.back() > r_max * (1.0 + 1e-12))
        throw std::invalid_argument("shoot: output radius beyond r_max");
    if (rout.front() <= 1e-6)
        throw std::invalid_argument("shoot: output radii must exceed the series start");

    const double eps = 1e-6;
    const double w0 = eval_omega(0.0);
    // Frobenius start: phi = phi0 (1 - 2 r^2 + 6 r^4 + ...)
    State y{phi0 * (1.0 - 2.0 * eps * eps + 6.0 * std::pow(eps, 4)),
            phi0 * (-4.0 * eps + 24.0 * std::pow(eps, 3)),
            phi0 * w0 * (eps * eps / 2.0 - std::pow(eps, 4)),
            phi0 * w0 * std::pow(eps, 6) / 6.0};

    ShootingTrajectory traj;
    traj.phi0 = phi0;
    traj.rtol = rtol;
    traj.atol = atol;
    traj.r.reserve(rout.size());

    double r = eps;
    double h = 1e-4;
    std::size_t next_out = 0;
    long steps = 0;
    while (next_out < rout.size()) {
        const double target = rout[next_out];
        bool hits_output = false;
        double hstep = h;
        if (r + hstep >= target) {
            hstep = target - r;
            hits_output = true;
        }
        const DpStep s = dp45(r, y, hstep);
        double errnorm = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(s.y5[i]));
            const double e = s.err[i] / sc;
            errnorm += e * e;
        }
        errnorm = std::sqrt(errnorm / 4.0);
        if (errnorm <= 1.0) {
            r += hstep;
            y = s.y5;
            if (hits_output && std::abs(r - target) < 1e-12 * std::max(1.0, target)) {
                traj.r.push_back(target);
                traj.phi.push_back(y[0]);
                traj.dphi.push_back(y[1]);
                traj.m_a.push_back(y[2]);
                traj.m_b.push_back(y[3]);
                const double lam = 2.0 * w0 * y[0] / (phi0 * eval_omega(target));
                traj.lambda.push_back(lam);
                ++next_out;
            }
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(errnorm, 1e-10), -0.2), 0.2, 5.0);
        h = std::min(h * fac, 1.0);
        if (h < 1e-14)
            throw std::runtime_error("shoot: step size underflow (stiffness)");
        if (++steps > 100000000L)
            throw std::runtime_error("shoot: step budget exceeded");
    }
    return traj;
}

BoundReport check_bounds(const ShootingTrajectory& traj, double tolerance) {
    if (!(traj.phi0 > 0.0))
        throw std::invalid_argument("check_bounds: trajectory must have positive phi0");
    const std::size_t m = traj.r.size();
    BoundReport rep;
    rep.tolerance = tolerance;
    rep.growth_margin.resize(m);
    rep.quartic_margin.resize(m);
    rep.sign_margin.resize(m);
    const double w0 = eval_omega(0.0);
    const double scale = 2.0 * w0 / traj.phi0;
    double wr_max = 0.0;
    double g_min = 1e300, q_min = 1e300, s_min = 1e300;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = traj.r[i];
        const double lam = traj.lambda[i];
        const double b1 = 1.8 * std::pow(r, 4) + 2.4 * r * r - 2.4 * std::log1p(r * r);
        rep.growth_margin[i] = lam - 2.0 - b1;
        rep.quartic_margin[i] = lam - (std::pow(r, 4) + 1.0);
        rep.sign_margin[i] = traj.phi[i] / traj.phi0 - 0.25;
        g_min = std::min(g_min, rep.growth_margin[i]);
        q_min = std::min(q_min, rep.quartic_margin[i]);
        s_min = std::min(s_min, rep.sign_margin[i]);
        // d/dr [ r^5 w^2 lambda' ] = 2 pi^3 r w^2 int_0^r (r^4 - t^4) phi~ w t dt,
        // expanded through the trajectory's own second derivative
        const double w = eval_omega(r);
        const double wp = eval_omega_prime(r);
        const double wpp = eval_omega_second(r);
        const double r2 = r * r, r4 = r2 * r2;
        const double phipp = -5.0 / r * traj.dphi[i] - 2.0 * pi_3_2 * w * traj.phi[i] -
                             2.0 * pi_cubed * w * (traj.m_b[i] / r4 - traj.m_a[i]);
        const double lhs = scale * (r4 * r * (phipp * w - wpp * traj.phi[i]) +
                                    5.0 * r4 * (traj.dphi[i] * w - wp * traj.phi[i]));
        const double rhsv = scale * 2.0 * pi_cubed * r * w * w * (r4 * traj.m_a[i] - traj.m_b[i]);
        const double rel = std::abs(lhs - rhsv) / std::max(std::abs(rhsv), 1e-300);
        wr_max = std::max(wr_max, rel);
    }
    rep.min_growth_margin = g_min;
    rep.min_quartic_margin = q_min;
    rep.min_sign_margin = s_min;
    rep.wronskian_max_rel = wr_max;
    rep.all_pass = g_min >= -tolerance && q_min >= -tolerance && s_min >= -tolerance &&
                   wr_max <= 1e-8;
    return rep;
}

MatrixXd frak_l0_matrix(const RadialGrid& grid) {
    ModeOperator op(grid, 0);
    MatrixXd M = op.a_total();
    const int n = grid.n();
    for (int i = 0; i < n; ++i) {
        const double wi = eval_omega(grid.nodes()[i]);
        for (int j = 0; j < n; ++j) {
            const double t = grid.nodes()[j];
            M(i, j) += 2.0 * pi_cubed * wi * grid.weights_plain()[j] * t * eval_omega(t);
        }
    }
    return M;
}

} // namespace nlh

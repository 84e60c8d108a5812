#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"
#include "nlh/mode_operator.hpp"
#include "nlh/shooting.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

using namespace nlh;
using nlh::testing::grid256;

TEST_SUITE_BEGIN("shooting");

namespace {
const ShootingTrajectory& base_traj() {
    static ShootingTrajectory t = shoot_frak_l0(1.0, 50.0, 1e-10, 1e-12);
    return t;
}
} // namespace

TEST_CASE("series start") {
    const ShootingTrajectory& t = base_traj();
    // phi(0.1) ~ 1 - 2 (0.1)^2
    const double phi01 = t.phi[1];  // output mesh 0.05, 0.10, ...
    CHECK(t.r[1] == doctest::Approx(0.1));
    CHECK(std::abs(phi01 - 0.98) <= 1e-3);
    CHECK(t.lambda[0] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("sign persistence and lower bound") {
    const ShootingTrajectory& t = base_traj();
    double min_phi = 1e300;
    for (double p : t.phi) min_phi = std::min(min_phi, p);
    CHECK(min_phi > 0.25);
    CHECK(min_phi > 0.0);
}

TEST_CASE("linearity in the initial value") {
    ShootingTrajectory t3 = shoot_frak_l0(-3.0, 10.0, 1e-10, 1e-12);
    ShootingTrajectory t1 = shoot_frak_l0(1.0, 10.0, 1e-10, 1e-12);
    double worst = 0.0;
    for (std::size_t i = 0; i < t1.r.size(); ++i)
        worst = std::max(worst, std::abs(t3.phi[i] + 3.0 * t1.phi[i]) /
                                    std::max(std::abs(3.0 * t1.phi[i]), 1e-30));
    CHECK(worst <= 1e-8);
}

TEST_CASE("growth bounds and the derivative identity") {
    BoundReport rep = check_bounds(base_traj(), 1e-6);
    CHECK(rep.min_growth_margin >= -1e-6);
    CHECK(rep.min_quartic_margin >= -1e-6);
    CHECK(rep.min_sign_margin >= -1e-6);
    CHECK(rep.wronskian_max_rel <= 1e-8);
    CHECK(rep.all_pass);
    // bound values at reference radii
    {
        const double b1 = 1.8 + 2.4 - 2.4 * std::log(2.0);
        CHECK(b1 == doctest::Approx(2.536447).epsilon(1e-6));
        // lambda(2) must exceed 2^4 + 1 = 17
        std::size_t i2 = 0;
        for (std::size_t i = 0; i < base_traj().r.size(); ++i)
            if (std::abs(base_traj().r[i] - 2.0) < 1e-9) i2 = i;
        CHECK(base_traj().lambda[i2] >= 17.0);
    }
}

TEST_CASE("tolerance refinement") {
    ShootingTrajectory a = shoot_frak_l0(1.0, 50.0, 1e-10, 1e-12);
    ShootingTrajectory b = shoot_frak_l0(1.0, 50.0, 5e-11, 1e-12);
    const double rel = std::abs(a.phi.back() - b.phi.back()) / std::abs(b.phi.back());
    CHECK(rel <= 10.0 * 1e-10);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(shoot_frak_l0(0.0, 50.0, 1e-10, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(shoot_frak_l0(1.0, -1.0, 1e-10, 1e-12), std::invalid_argument);
    ShootingTrajectory neg = shoot_frak_l0(-1.0, 5.0, 1e-8, 1e-10);
    CHECK_THROWS_AS(check_bounds(neg, 1e-6), std::invalid_argument);
}

TEST_CASE("reduced operator equals the mode operator plus its rank-one tail") {
    // L_0 phi = frak_L0 phi - 2 pi^3 w(r) int_0^inf phi w t dt for smooth phi;
    // the reduced side is rebuilt from closed-form derivatives and the
    // cumulative moments, independent of the operator assembly
    const RadialGrid& g = grid256();
    ModeOperator op0(g, 0);
    const int n = g.n();
    const VectorXd& r = g.nodes();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.2, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = U(rng), b = U(rng) - 0.7, c = 0.3 + 0.8 * U(rng);
        auto phi = [=](double t) { return (a + b * t * t) * std::exp(-c * t * t); };
        auto phi1 = [=](double t) {
            return (2.0 * b * t - 2.0 * c * t * (a + b * t * t)) * std::exp(-c * t * t);
        };
        auto phi2 = [=](double t) {
            const double e = std::exp(-c * t * t);
            return e * (2.0 * b - 2.0 * c * (a + 3.0 * b * t * t) -
                        2.0 * c * t * (2.0 * b * t - 2.0 * c * t * (a + b * t * t)));
        };
        RadialFunction pf = sample(g, phi);
        // moments by the cumulative rule
        VectorXd h1(n), h5(n);
        for (int i = 0; i < n; ++i) {
            h1[i] = r[i] * pf.values[i] * eval_omega(r[i]);
            h5[i] = std::pow(r[i], 5) * pf.values[i] * eval_omega(r[i]);
        }
        const VectorXd ma = g.cumint() * h1;
        const VectorXd mb = g.cumint() * h5;
        const double tail_int = g.weights_plain().dot(h1);
        const VectorXd lhs = op0.a_total() * pf.values;
        VectorXd rhs(n);
        for (int i = 0; i < n; ++i) {
            const double rr = r[i];
            const double w = eval_omega(rr);
            const double frak = -phi2(rr) - 5.0 / rr * phi1(rr) - 2.0 * pi_3_2 * w * phi(rr) -
                                2.0 * pi_cubed * w * (mb[i] / std::pow(rr, 4) - ma[i]);
            rhs[i] = frak - 2.0 * pi_cubed * w * tail_int;
        }
        RadialFunction diff(g, lhs - rhs), ref(g, rhs);
        CHECK(weighted_norm(diff) / weighted_norm(ref) <= 1e-8);
    }
}

TEST_CASE("trajectory consistent with an independent local discretization") {
    // second derivative from five-point differences on a fine mesh and
    // moments from composite Simpson; residual of the reduced equation
    std::vector<double> mesh;
    for (int i = 1; i <= 10000; ++i) mesh.push_back(0.0025 * i);
    const ShootingTrajectory t = shoot_frak_l0(1.0, 25.0, 1e-10, 1e-12, mesh);
    const std::size_t m = t.r.size();
    const double h = t.r[1] - t.r[0];
    // Simpson moments on the mesh 0, h, 2h, ...
    std::vector<double> ma(m), mb(m);
    auto f1 = [&](std::size_t i) { return t.r[i] * t.phi[i] * eval_omega(t.r[i]); };
    auto f5 = [&](std::size_t i) {
        return std::pow(t.r[i], 5) * t.phi[i] * eval_omega(t.r[i]);
    };
    // [0, r_0] stub from the leading series terms
    const double w0 = eval_omega(0.0);
    double a1 = w0 * (h * h / 2.0 - std::pow(h, 4));
    double a5 = w0 * std::pow(h, 6) / 6.0;
    ma[0] = a1;
    mb[0] = a5;
    for (std::size_t i = 2; i < m; i += 2) {
        a1 += h / 3.0 * (f1(i - 2) + 4.0 * f1(i - 1) + f1(i));
        a5 += h / 3.0 * (f5(i - 2) + 4.0 * f5(i - 1) + f5(i));
        ma[i] = a1;
        mb[i] = a5;
    }
    double worst = 0.0;
    for (std::size_t i = 4; i + 4 < m; i += 2) {
        if (t.r[i] < 0.05) continue;  // the moment/r^4 split amplifies there
        if (t.r[i] > 25.0) break;
        const double d2 = (-t.phi[i - 2] + 16.0 * t.phi[i - 1] - 30.0 * t.phi[i] +
                           16.0 * t.phi[i + 1] - t.phi[i + 2]) /
                          (12.0 * h * h);
        const double rr = t.r[i];
        const double w = eval_omega(rr);
        const double res = -d2 - 5.0 / rr * t.dphi[i] - 2.0 * pi_3_2 * w * t.phi[i] -
                           2.0 * pi_cubed * w * (mb[i] / std::pow(rr, 4) - ma[i]);
        worst = std::max(worst, std::abs(res));
    }
    CHECK(worst <= 1e-5);
}

TEST_SUITE_END();

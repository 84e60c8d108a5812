#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"
#include "nlh/mode_operator.hpp"
#include "nlh/spectrum.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

using namespace nlh;
using nlh::testing::grid256;
using nlh::testing::op256;

TEST_SUITE_BEGIN("operator");

TEST_CASE("scaling mode lies in the radial kernel, residual converges") {
    double prev0 = 1e300, prev1 = 1e300;
    for (int n : {64, 128, 256}) {
        RadialGrid g(n, 1.0);
        ModeOperator op0(g, 0), op1(g, 1);
        const double res0 = residual_norm(op0, sample(g, eval_lambda_omega), 0.0);
        const double res1 = residual_norm(op1, sample(g, eval_omega_prime), 0.0);
        CHECK(res0 < prev0);
        CHECK(res1 < prev1);
        prev0 = res0;
        prev1 = res1;
        if (n == 256) {
            CHECK(res0 <= 1e-6);
            CHECK(res1 <= 1e-6);
        }
    }
}

TEST_CASE("translation mode lies in the mode-1 kernel") {
    RadialFunction wp = sample(grid256(), eval_omega_prime);
    CHECK(residual_norm(op256(1), wp, 0.0) <= 1e-6);
}

TEST_CASE("forced identity on the ground state") {
    const RadialGrid& g = grid256();
    RadialFunction om = sample(g, eval_omega);
    RadialFunction lhs = op256(0).apply(om);
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        const double rhs = -4.0 * pi_3_2 * eval_omega_squared(g.nodes()[i]);
        diff = std::max(diff, std::abs(lhs.values[i] - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    CHECK(diff / scale <= 1e-7);
}

TEST_CASE("modes are distinguished") {
    // w' is not in the radial kernel
    RadialFunction wp = sample(grid256(), eval_omega_prime);
    CHECK(residual_norm(op256(0), wp, 0.0) > 0.1);
}

TEST_CASE("apply basics") {
    const RadialGrid& g = grid256();
    RadialFunction zero(g, VectorXd::Zero(g.n()));
    CHECK(op256(0).apply(zero).values.cwiseAbs().maxCoeff() == 0.0);
    RadialGrid other(32, 1.0);
    RadialFunction f = sample(other, eval_omega);
    CHECK_THROWS_AS(op256(0).apply(f), std::invalid_argument);
}

TEST_CASE("dense apply equals the fast path") {
    // the nonlocal discretizations must agree to summation-order level;
    // full rows are compared against their own conditioning (the local rows
    // carry large cancelling derivative entries at the map ends)
    const RadialGrid& g = grid256();
    nlh::testing::SmoothSampler sampler(23);
    for (int k : {0, 2}) {
        const ModeOperator& op = op256(k);
        const MatrixXd rowabs = op.a_total().cwiseAbs();
        for (int it = 0; it < 10; ++it) {
            RadialFunction f = sampler.even(g);
            VectorXd q(g.n());
            for (int i = 0; i < g.n(); ++i) q[i] = eval_omega(g.nodes()[i]) * f.values[i];
            const VectorXd nd = op.kernel().dense_matrix() * q;
            const VectorXd np = op.kernel().apply_vector(q);
            CHECK((nd - np).cwiseAbs().maxCoeff() <= 1e-13 * nd.cwiseAbs().maxCoeff());

            const VectorXd a = op.a_total() * f.values;
            const VectorXd b = op.apply_fast(f.values);
            const VectorXd cond = rowabs * f.values.cwiseAbs();
            for (int i = 0; i < g.n(); ++i)
                CHECK(std::abs(a[i] - b[i]) <= 1e-13 * cond[i] + 1e-300);
        }
    }
}

TEST_CASE("quadratic forms of the model profiles") {
    const RadialGrid& g = grid256();
    RadialFunction om = sample(g, eval_omega);
    RadialFunction wp = sample(g, eval_omega_prime);
    const double q0 = quadratic_form(op256(0), om) / weighted_inner_product(om, om);
    CHECK(q0 == doctest::Approx(-4.8).epsilon(1e-6));
    const double q1 = quadratic_form(op256(1), wp) / weighted_inner_product(wp, wp);
    CHECK(std::abs(q1) <= 1e-6);
    CHECK(quadratic_form(op256(2), om) > 0.0);
}

TEST_CASE("weighted symmetry of the form") {
    const RadialGrid& g = grid256();
    nlh::testing::SmoothSampler sampler(31);
    for (int k : {0, 1, 2}) {
        for (int it = 0; it < 6; ++it) {
            RadialFunction f = (k == 0) ? sampler.even(g) : sampler.mode(g, k);
            RadialFunction h = (k == 0) ? sampler.even(g) : sampler.mode(g, k);
            const double lhs = weighted_inner_product(op256(k).apply(f), h);
            const double rhs = weighted_inner_product(f, op256(k).apply(h));
            CHECK(std::abs(lhs - rhs) <= 1e-8 * weighted_norm(f) * weighted_norm(h));
        }
    }
}

TEST_CASE("symmetrized operator defect") {
    for (int k : {0, 1, 2, 6}) CHECK(op256(k).symmetry_defect() <= 1e-6);
}

TEST_CASE("monotonicity of the forms in the mode degree") {
    const RadialGrid& g = grid256();
    RadialFunction om = sample(g, eval_omega);
    auto gap = monotonicity_gap(op256(1), op256(0), om);
    CHECK(gap.direct > 0.0);
    CHECK(std::abs(gap.direct - gap.closed_form) <= 1e-8 * std::abs(gap.direct));

    RadialFunction ex = sample(g, [](double r) { return std::exp(-r); });
    auto gap3 = monotonicity_gap(op256(3), op256(2), ex);
    CHECK(gap3.direct > 0.0);
    CHECK(gap3.closed_form > 0.0);

    // coefficient difference of the centrifugal terms: k(k+4)-(k-1)(k+3) = 2k+3
    CHECK(2 * 2 + 3 == 7);

    RadialFunction lw = sample(g, eval_lambda_omega);  // changes sign
    CHECK_THROWS_AS(monotonicity_gap(op256(1), op256(0), lw), std::invalid_argument);
    CHECK_THROWS_AS(monotonicity_gap(op256(2), op256(0), om), std::invalid_argument);
}

TEST_CASE("form nonnegativity under the orthogonality condition") {
    const RadialGrid& g = grid256();
    RadialFunction osq = sample(g, eval_omega_squared);
    const double osq2 = weighted_inner_product(osq, osq);
    nlh::testing::SmoothSampler sampler(5);
    for (int it = 0; it < 20; ++it) {
        RadialFunction f = sampler.even(g);
        f.values -= (weighted_inner_product(f, osq) / osq2) * osq.values;
        const double q = quadratic_form(op256(0), f);
        CHECK(q >= -1e-6 * weighted_inner_product(f, f));
    }
    for (int k = 1; k <= 3; ++k) {
        for (int it = 0; it < 10; ++it) {
            RadialFunction f = sampler.mode(g, k);
            CHECK(quadratic_form(op256(k), f) >= -1e-6 * weighted_inner_product(f, f));
        }
    }
}

TEST_SUITE_END();

#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"
#include "nlh/spectrum.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

using namespace nlh;
using nlh::testing::grid256;
using nlh::testing::op256;

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("radial mode spectrum") {
    SpectrumResult sp = solve_spectrum(op256(0), 6);
    // variational bound from the ground-state Rayleigh quotient
    CHECK(sp.eigenvalues[0] <= -4.8);
    // simplicity: wide gap above the discrete ground state
    CHECK(sp.eigenvalues[1] - sp.eigenvalues[0] > 1e-4);
    for (int m = 0; m < 6; ++m) {
        CHECK(sp.residuals[m] <= 1e-6);
        RadialFunction v(grid256(), sp.eigenvectors.col(m));
        CHECK(weighted_norm(v) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // ascending order
    for (int m = 1; m < 6; ++m) CHECK(sp.eigenvalues[m] >= sp.eigenvalues[m - 1]);
    // eigenvector orthogonality in the weighted metric
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            RadialFunction va(grid256(), sp.eigenvectors.col(a));
            RadialFunction vb(grid256(), sp.eigenvectors.col(b));
            CHECK(std::abs(weighted_inner_product(va, vb)) <= 1e-8);
        }
}

TEST_CASE("ground state has a definite sign") {
    SpectrumResult sp = solve_spectrum(op256(0), 1);
    REQUIRE(sp.eigenvalues[0] < -1e-4);
    // count in the scaled coordinate where the end rows are not amplified
    const RadialGrid& g = grid256();
    VectorXd x(g.n());
    for (int i = 0; i < g.n(); ++i)
        x[i] = std::sqrt(g.weights_plain()[i]) * std::pow(g.nodes()[i], 2.5) *
               sp.eigenvectors(i, 0);
    const double floor = 1e-4 * x.cwiseAbs().maxCoeff();
    int changes = 0;
    double last = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        if (g.nodes()[i] > sp.r_tail || std::abs(x[i]) <= floor) continue;
        if (last != 0.0 && x[i] * last < 0.0) ++changes;
        last = x[i];
    }
    CHECK(changes == 0);
}

TEST_CASE("num_eigs bounds") {
    CHECK_THROWS_AS(solve_spectrum(op256(0), 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_spectrum(op256(0), 255), std::invalid_argument);
}

TEST_CASE("mode-1 zero mode") {
    SpectrumResult sp = solve_spectrum(op256(1), 4);
    CHECK(sp.eigenvalues[0] >= -1e-6);
    auto cands = classify_kernel(op256(1), 1e-6, 0.05);
    REQUIRE(cands.size() == 1);
    CHECK(std::abs(cands[0].lambda) <= 1e-6);
    CHECK(cands[0].localization <= 0.05);
    CHECK(cands[0].sign_changes == 0);
    RadialFunction wp = sample(grid256(), eval_omega_prime);
    const double cosine = std::abs(weighted_inner_product(cands[0].vector, wp)) /
                          (weighted_norm(cands[0].vector) * weighted_norm(wp));
    CHECK(cosine >= 0.999);
}

TEST_CASE("radial zero mode changes sign once") {
    auto cands = classify_kernel(op256(0), 1e-6, 0.05);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].sign_changes == 1);
    RadialFunction lw = sample(grid256(), eval_lambda_omega);
    const double cosine = std::abs(weighted_inner_product(cands[0].vector, lw)) /
                          (weighted_norm(cands[0].vector) * weighted_norm(lw));
    CHECK(cosine >= 0.999);
}

TEST_CASE("no localized zero modes beyond the symmetry degrees") {
    for (int k = 2; k <= 6; ++k) {
        SpectrumResult sp = solve_spectrum(op256(k), 3);
        CHECK(sp.eigenvalues[0] >= -1e-6);
        CHECK(classify_kernel(op256(k), 1e-6, 0.05).empty());
    }
}

TEST_CASE("lowest energies are nondecreasing in the mode degree") {
    double prev = solve_spectrum(op256(0), 1).eigenvalues[0];
    for (int k = 1; k <= 6; ++k) {
        const double lam = solve_spectrum(op256(k), 1).eigenvalues[0];
        CHECK(lam >= prev - 1e-6);
        prev = lam;
    }
}

TEST_CASE("residual norms of reference pairs") {
    const RadialGrid& g = grid256();
    RadialFunction lw = sample(g, eval_lambda_omega);
    RadialFunction wp = sample(g, eval_omega_prime);
    RadialFunction om = sample(g, eval_omega);
    CHECK(residual_norm(op256(0), lw, 0.0) <= 1e-6);
    CHECK(residual_norm(op256(1), wp, 0.0) <= 1e-6);
    // the Rayleigh quotient of w is not an eigenvalue
    const double q = quadratic_form(op256(0), om) / weighted_inner_product(om, om);
    CHECK(residual_norm(op256(0), om, q) > 0.01);
    RadialFunction zero(g, VectorXd::Zero(g.n()));
    CHECK_THROWS_AS(residual_norm(op256(0), zero, 0.0), std::invalid_argument);
}

TEST_CASE("classify parameter validation") {
    CHECK_THROWS_AS(classify_kernel(op256(0), -1.0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(classify_kernel(op256(0), 1e-6, 1.5), std::invalid_argument);
}

TEST_SUITE_END();

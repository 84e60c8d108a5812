#include "nlh/constants.hpp"
#include "nlh/harmonics.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <random>

using namespace nlh;

TEST_SUITE_BEGIN("harmonics");

TEST_CASE("dimension formula") {
    CHECK(alpha_k(0) == 1);
    CHECK(alpha_k(1) == 6);
    CHECK(alpha_k(2) == 20);
    CHECK(alpha_k(3) == 50);
    CHECK(alpha_k(4) == 105);
    CHECK_THROWS_AS(alpha_k(-1), std::invalid_argument);
}

TEST_CASE("gegenbauer recurrence values") {
    CHECK(gegenbauer_c2(0, 0.37) == 1.0);
    CHECK(gegenbauer_c2(1, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gegenbauer_c2(2, 1.0) == doctest::Approx(10.0).epsilon(1e-14));
    // C_k^{(2)}(1) = C(k+3, 3)
    for (int k = 0; k <= 12; ++k) {
        const double expect = (k + 1.0) * (k + 2.0) * (k + 3.0) / 6.0;
        CHECK(gegenbauer_c2(k, 1.0) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gegenbauer_c2(3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(gegenbauer_c2(-1, 0.0), std::invalid_argument);
}

TEST_CASE("zonal density") {
    CHECK(zonal_density(0, -0.3) == doctest::Approx(1.0));
    for (double t : {-0.8, 0.0, 0.4}) {
        CHECK(zonal_density(1, t) == doctest::Approx(6.0 * t).epsilon(1e-14));
    }
    CHECK(zonal_density(2, 1.0) == doctest::Approx(20.0).epsilon(1e-14));
}

TEST_CASE("zonal density at coincidence equals the dimension") {
    for (int k = 0; k <= 12; ++k) {
        CHECK(zonal_density(k, 1.0) == (double)alpha_k(k));
    }
}

TEST_CASE("generating function") {
    // sum_k C_k^{(2)}(t) r^k = (1 - 2rt + r^2)^{-2}, tail <= 10 r^{K+1}/(1-r)^5
    const int K = 40;
    GegenbauerTable table(K);
    for (double r : {0.1, 0.3, 0.5}) {
        for (double t : {-0.9, 0.0, 0.7}) {
            const std::vector<double> c = table.eval_all(t);
            double s = 0.0, rp = 1.0;
            for (int k = 0; k <= K; ++k) {
                s += c[k] * rp;
                rp *= r;
            }
            const double exact = 1.0 / std::pow(1.0 - 2.0 * r * t + r * r, 2.0);
            const double bound = 10.0 * std::pow(r, K + 1) / std::pow(1.0 - r, 5.0);
            CHECK(std::abs(s - exact) <= bound + 1e-13 * (1.0 + std::abs(exact)));
        }
    }
}

TEST_CASE("degree-one harmonics, Monte Carlo orthogonality") {
    // Y_{1,j} = sqrt(6) xi_j ; normalized 6-dimensional Gaussians, fixed seed
    std::mt19937_64 rng(42);
    std::normal_distribution<double> N(0.0, 1.0);
    const int samples = 1000000;
    double s11 = 0.0, s12 = 0.0, q11 = 0.0, q12 = 0.0;
    for (int it = 0; it < samples; ++it) {
        double x[6], nrm = 0.0;
        for (double& v : x) {
            v = N(rng);
            nrm += v * v;
        }
        nrm = std::sqrt(nrm);
        const double y1 = std::sqrt(6.0) * x[0] / nrm;
        const double y2 = std::sqrt(6.0) * x[1] / nrm;
        s11 += y1 * y1;
        s12 += y1 * y2;
        q11 += y1 * y1 * y1 * y1;
        q12 += y1 * y1 * y2 * y2;
    }
    const double m11 = s11 / samples, m12 = s12 / samples;
    const double se11 = std::sqrt((q11 / samples - m11 * m11) / samples);
    const double se12 = std::sqrt((q12 / samples - m12 * m12) / samples);
    // surface integrals = pi^3 * mean
    CHECK(std::abs(pi_cubed * m11 - pi_cubed) <= 3.0 * pi_cubed * se11);
    CHECK(std::abs(pi_cubed * m12) <= 3.0 * pi_cubed * se12);
}

TEST_SUITE_END();

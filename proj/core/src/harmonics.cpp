#include "nlh/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace nlh {

namespace {
std::int64_t binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        out = out * (n - r + i) / i;
    }
    return out;
}
} // namespace

std::int64_t alpha_k(int k) {
    if (k < 0) throw std::invalid_argument("degree must be nonnegative");
    if (k == 0) return 1;
    if (k == 1) return 6;
    return binomial(k + 5, k) - binomial(k + 3, k - 2);
}

double gegenbauer_c2(int k, double t) {
    if (k < 0) throw std::invalid_argument("degree must be nonnegative");
    if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("argument outside [-1,1]");
    double cm2 = 1.0;
    if (k == 0) return cm2;
    double cm1 = 4.0 * t;
    if (k == 1) return cm1;
    double c = 0.0;
    for (int m = 2; m <= k; ++m) {
        c = (2.0 * t * (m + 1.0) * cm1 - (m + 2.0) * cm2) / m;
        cm2 = cm1;
        cm1 = c;
    }
    return c;
}

double zonal_density(int k, double t) {
    return 0.5 * (k + 2.0) * gegenbauer_c2(k, t);
}

GegenbauerTable::GegenbauerTable(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 0) throw std::invalid_argument("degree must be nonnegative");
}

std::vector<double> GegenbauerTable::eval_all(double t) const {
    if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("argument outside [-1,1]");
    std::vector<double> c(max_degree_ + 1);
    c[0] = 1.0;
    if (max_degree_ >= 1) c[1] = 4.0 * t;
    for (int m = 2; m <= max_degree_; ++m)
        c[m] = (2.0 * t * (m + 1.0) * c[m - 1] - (m + 2.0) * c[m - 2]) / m;
    return c;
}

} // namespace nlh

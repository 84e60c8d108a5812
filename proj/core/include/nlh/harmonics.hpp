#pragma once

#include <cstdint>
#include <vector>

namespace nlh {

/// Index of one spherical harmonic on S^5: degree k, 1 <= j <= alpha_k.
struct ModeIndex {
    int k = 0;
    int j = 1;
};

/// dim of the degree-k harmonic space on S^5:
/// 1 (k=0), 6 (k=1), C(k+5,k) - C(k+3,k-2) otherwise.
std::int64_t alpha_k(int k);

/// Gegenbauer polynomial C_k^{(2)}(t) on [-1,1] via the three-term
/// recurrence k C_k = 2t(k+1) C_{k-1} - (k+2) C_{k-2}, C_0 = 1, C_1 = 4t.
double gegenbauer_c2(int k, double t);

/// Zonal density sum_j Y_{k,j}(xi) Y_{k,j}(eta) = ((k+2)/2) C_k^{(2)}(xi.eta).
double zonal_density(int k, double t);

/// Precomputed recurrence evaluator for degrees 0..max_degree.
class GegenbauerTable {
public:
    explicit GegenbauerTable(int max_degree);
    int max_degree() const { return max_degree_; }
    /// values C_0..C_K at one point, one recurrence sweep
    std::vector<double> eval_all(double t) const;

private:
    int max_degree_;
};

} // namespace nlh

#pragma once

#include "nlh/mode_operator.hpp"

namespace nlh {

/// Eigen-decomposition output for one mode. Eigenvalues ascending;
/// eigenvectors normalized in the r^5 dr inner product; localization is the
/// fraction of weighted mass beyond r_tail.
struct SpectrumResult {
    int k = 0;
    VectorXd eigenvalues;
    MatrixXd eigenvectors;   // columns, f-space
    VectorXd residuals;      // ||L v - lambda v|| / ||v|| in the weighted norm
    VectorXd localization;
    double r_tail = 0.0;
};

/// Smallest num_eigs eigenpairs of s_sym mapped back to function space.
/// Deterministic. num_eigs <= n - 2.
SpectrumResult solve_spectrum(const ModeOperator& op, int num_eigs,
                              double r_tail_factor = 20.0);

/// ||L_k f - lambda f|| / ||f|| via the collocation operator.
/// Throws std::invalid_argument for zero f.
double residual_norm(const ModeOperator& op, const RadialFunction& f, double lambda);

struct KernelCandidate {
    double lambda = 0.0;       ///< Rayleigh value within the near-zero band
    RadialFunction vector;
    double localization = 0.0;
    int sign_changes = 0;
};

/// Localized near-zero modes of one operator. The essential spectrum's
/// discretization produces a band of box modes above zero that hybridize
/// with any embedded eigenfunction at the edge; the candidate is therefore
/// extracted from the spectral band |lambda| < edge_band as the
/// combination with minimal tail mass, and accepted when its in-band
/// Rayleigh value and localization pass the thresholds.
std::vector<KernelCandidate> classify_kernel(const ModeOperator& op,
                                             double tol_eig, double tail_fraction,
                                             double r_tail_factor = 20.0,
                                             double edge_band = 1e-4);

} // namespace nlh

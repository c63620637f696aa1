#ifndef FRACWEAR_OPERATOR_SPECTRUM_HPP
#define FRACWEAR_OPERATOR_SPECTRUM_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fracwear/kernel.hpp"

namespace fracwear {

// Eigenpairs of the discretized mean-corrected operator restricted to
// zero-mean functions, plus everything the evolution formulas consume.
struct SpectralBasis {
    QuadratureGrid grid;
    std::vector<double> sigma;   // non-increasing eigenvalues of K2 on the zero-mean subspace
    Eigen::MatrixXd phi;         // eigenvector samples, columns orthonormal in the grid inner product
    std::vector<double> lambda_K;  // eigenvalues of K itself (non-increasing)
    std::vector<double> l;         // mode loads <K1, phi_k>
    std::optional<Eigen::VectorXd> null_vector;  // zero-mean numerical null mode, if any
    double l_perp = 0.0;
    Eigen::VectorXd k1_samples;  // cell averages of K1 (zero mean against c0 by construction)
    double c0 = 0.0;
    double a = 0.0;

    std::size_t n_modes() const { return sigma.size(); }
    double mode_value(std::size_t k, std::size_t i) const { return phi(Eigen::Index(i), Eigen::Index(k)); }
};

struct SpectrumOptions {
    double tol_psd = 1e-10;
    double tol_null_rel = 1e-8;  // |sigma| < tol_null_rel * sigma_1 counts as a null mode
};

// Deflates the constant direction, diagonalizes, sorts non-increasing, fixes
// signs (first non-negligible component positive) and computes mode loads.
// Throws if two or more numerical null modes appear.
SpectralBasis eigendecompose(const Discretization& disc, const SpectrumOptions& opts = {});

struct SpectrumDiagnostics {
    double sigma1 = 0.0;
    double sigma1_bound = 0.0;           // a pi log2 + 2a (C_K + |log a|), log kernel only
    bool sigma1_within_bound = false;
    double min_sigma = 0.0;
    bool psd = false;
    double max_interlacing_violation = 0.0;  // over k <= 50
    bool interlacing = false;
    std::vector<std::pair<int, double>> n_sigma_n;  // n * sigma_n for n in [10, N/4]
    double n_sigma_ratio = 0.0;                     // max/min over n in [10, 40]
    double max_zero_mean_residual = 0.0;
    bool null_mode_found = false;
};

SpectrumDiagnostics spectrum_diagnostics(const SpectralBasis& basis, const KernelSpec& kernel);

}  // namespace fracwear

#endif

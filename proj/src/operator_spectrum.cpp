#include "fracwear/operator_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracwear {

SpectralBasis eigendecompose(const Discretization& disc, const SpectrumOptions& opts) {
    const Eigen::Index N = disc.A_K2.rows();
    const double h = disc.grid.cell_width();

    // project out the constant direction; on the complement A_K2 and A_K have
    // the same quadratic form, so the deflated matrix is symmetric PSD
    Eigen::VectorXd u = Eigen::VectorXd::Constant(N, 1.0 / std::sqrt(double(N)));
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(N, N) - u * u.transpose();
    Eigen::MatrixXd M = P * disc.A_K2 * P;
    M = 0.5 * (M + M.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecompose: eigensolver failed");

    // drop the artificial eigenpair aligned with the deflated constant
    Eigen::Index drop = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < N; ++k) {
        const double overlap = std::abs(es.eigenvectors().col(k).dot(u));
        if (overlap > best) {
            best = overlap;
            drop = k;
        }
    }

    SpectralBasis basis;
    basis.grid = disc.grid;
    basis.a = disc.grid.a;
    basis.c0 = disc.c0;
    basis.k1_samples = disc.k1_cells;
    basis.sigma.reserve(std::size_t(N - 1));
    basis.phi.resize(N, N - 1);

    // eigensolver returns ascending order; reverse to non-increasing
    Eigen::Index col = 0;
    for (Eigen::Index k = N - 1; k >= 0; --k) {
        if (k == drop) continue;
        basis.sigma.push_back(es.eigenvalues()(k));
        basis.phi.col(col) = es.eigenvectors().col(k) / std::sqrt(h);
        ++col;
    }

    // sign convention: first component exceeding a tenth of the max is positive
    for (Eigen::Index k = 0; k < basis.phi.cols(); ++k) {
        const double mx = basis.phi.col(k).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < N; ++i) {
            if (std::abs(basis.phi(i, k)) > 0.1 * mx) {
                if (basis.phi(i, k) < 0.0) basis.phi.col(k) = -basis.phi.col(k);
                break;
            }
        }
    }

    // spectrum of K itself for the interlacing diagnostics
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esK(disc.A_K, Eigen::EigenvaluesOnly);
    basis.lambda_K.assign(esK.eigenvalues().data(), esK.eigenvalues().data() + N);
    std::reverse(basis.lambda_K.begin(), basis.lambda_K.end());

    // null-mode detection
    const double sigma1 = basis.sigma.empty() ? 0.0 : std::abs(basis.sigma.front());
    const double tol_null = std::max(opts.tol_null_rel * sigma1, 1e-14);
    std::vector<std::size_t> nulls;
    for (std::size_t k = 0; k < basis.sigma.size(); ++k)
        if (std::abs(basis.sigma[k]) < tol_null) nulls.push_back(k);
    if (nulls.size() >= 2)
        throw std::runtime_error(
            "eigendecompose: dim(Ker K2) > 1 detected; the model requires at most one null mode");
    if (nulls.size() == 1) {
        const Eigen::Index kn = Eigen::Index(nulls.front());
        basis.null_vector = basis.phi.col(kn);
        Eigen::MatrixXd reduced(N, basis.phi.cols() - 1);
        if (kn > 0) reduced.leftCols(kn) = basis.phi.leftCols(kn);
        if (kn + 1 < basis.phi.cols())
            reduced.rightCols(basis.phi.cols() - kn - 1) =
                basis.phi.rightCols(basis.phi.cols() - kn - 1);
        basis.phi = reduced;
        basis.sigma.erase(basis.sigma.begin() + long(nulls.front()));
    }

    // mode loads l_k = <K1, phi_k>; unchanged under constant shifts of K1
    // because the modes integrate to zero
    basis.l.resize(basis.sigma.size());
    for (std::size_t k = 0; k < basis.sigma.size(); ++k)
        basis.l[k] = basis.grid.inner(basis.k1_samples, basis.phi.col(Eigen::Index(k)));
    if (basis.null_vector) basis.l_perp = basis.grid.inner(basis.k1_samples, *basis.null_vector);
    return basis;
}

SpectrumDiagnostics spectrum_diagnostics(const SpectralBasis& basis, const KernelSpec& kernel) {
    SpectrumDiagnostics d;
    const std::size_t n = basis.sigma.size();
    if (n == 0) return d;
    d.sigma1 = basis.sigma.front();
    d.min_sigma = *std::min_element(basis.sigma.begin(), basis.sigma.end());
    d.psd = d.min_sigma >= -1e-10;
    d.null_mode_found = basis.null_vector.has_value();

    if (kernel.kind == KernelSpec::Kind::LogKernel) {
        d.sigma1_bound = kernel.a * M_PI * std::log(2.0) +
                         2.0 * kernel.a * (kernel.C_K + std::abs(std::log(kernel.a)));
        d.sigma1_within_bound = d.sigma1 <= d.sigma1_bound + 1e-6;
    }

    double viol = 0.0;
    for (std::size_t k = 0; k + 1 < std::min<std::size_t>(n, 50); ++k) {
        viol = std::max(viol, basis.sigma[k] - basis.lambda_K[k]);
        viol = std::max(viol, basis.lambda_K[k + 1] - basis.sigma[k]);
    }
    d.max_interlacing_violation = viol;
    d.interlacing = viol <= 1e-8;

    const std::size_t n_max = std::min(n, basis.grid.size() / 4);
    double lo = 1e300, hi = 0.0;
    for (std::size_t k = 9; k < n_max; ++k) {  // n = k + 1 in 1-based counting
        const double v = double(k + 1) * basis.sigma[k];
        d.n_sigma_n.emplace_back(int(k + 1), v);
        if (k + 1 <= 40) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    d.n_sigma_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

    double zres = 0.0;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(Eigen::Index(basis.grid.size()));
    for (std::size_t k = 0; k < n; ++k)
        zres = std::max(zres, std::abs(basis.grid.inner(ones, basis.phi.col(Eigen::Index(k)))));
    d.max_zero_mean_residual = zres;
    return d;
}

}  // namespace fracwear

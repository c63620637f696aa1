#ifndef FRACWEAR_KERNEL_HPP
#define FRACWEAR_KERNEL_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace fracwear {

// Displacement-pressure kernel on the contact interval (-a, a).
// LogKernel: K(x) = -log|x| + C_K with C_K > log a. Tabulated: any even
// square-integrable kernel supplied as a callable on (-2a, 2a).
struct KernelSpec {
    enum class Kind { LogKernel, Tabulated };
    Kind kind = Kind::LogKernel;
    double a = 1.0;
    double C_K = 0.0;
    std::function<double(double)> tabulated;

    static KernelSpec log_kernel(double a, double C_K);
    static KernelSpec tabulated_kernel(double a, std::function<double(double)> K);
    void validate() const;
};

// Uniform midpoint grid on (-a, a): x_i = -a + (i + 1/2) h, w_i = h = 2a/N.
struct QuadratureGrid {
    double a = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double cell_width() const { return weights.front(); }
    double integrate(const Eigen::VectorXd& f) const;
    double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
    void validate() const;
};

// K1(x) = int_{-a}^{a} K(zeta - x) dzeta; closed form for the log kernel,
// quadrature otherwise. |x| < a required.
double k1_profile(const KernelSpec& kernel, double x);

// c0 = -(1/2a) int K1(x) dx.
double c0_constant(const KernelSpec& kernel);

// Nystrom matrices with both arguments cell-averaged, so that
//   sum_i w_i K(x_i - x_j)-entries reproduce K1 exactly and
//   sum_i w_i K2(x_i, x_j) = c0 exactly (up to roundoff) for every j.
// On the uniform grid the physical operator (K p)(x_i) = sum_j A(i,j) p_j / 1
// coincides with the symmetrized matrix because all weights are equal.
struct Discretization {
    KernelSpec spec;
    QuadratureGrid grid;
    Eigen::MatrixXd A_K;        // cell-averaged Nystrom matrix of K, weights included
    Eigen::MatrixXd A_K2;       // same for K2
    Eigen::VectorXd k1_cells;   // cell averages of K1 at the nodes
    double c0 = 0.0;

    Eigen::VectorXd apply_K(const Eigen::VectorXd& p) const { return A_K * p; }
    Eigen::VectorXd apply_K2(const Eigen::VectorXd& q) const { return A_K2 * q; }
};

Discretization discretize(const KernelSpec& kernel, int N);

}  // namespace fracwear

#endif

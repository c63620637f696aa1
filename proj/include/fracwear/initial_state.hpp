#ifndef FRACWEAR_INITIAL_STATE_HPP
#define FRACWEAR_INITIAL_STATE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracwear/kernel.hpp"
#include "fracwear/operator_spectrum.hpp"

namespace fracwear {

struct PunchProfile {
    std::function<double(double)> shape;  // Delta(x)
    std::function<double(double)> slope;  // Delta'(x)
    std::string description;
    bool twice_differentiable = true;

    static PunchProfile flat();
    static PunchProfile quadratic(double coeff = 1.0);   // Delta = coeff x^2
    static PunchProfile constant(double offset);
};

struct InitialState {
    Eigen::VectorXd p0;  // samples at the grid nodes
    double delta0 = 0.0;
    double P0 = 0.0;
    bool square_integrable = true;
    double mass = 0.0;  // accurate mass of the constructed profile
};

// PV int_{-a}^{a} sqrt(a^2 - xi^2) g(xi) / (xi - x) dxi through a Chebyshev-U
// expansion of g (exact for polynomial g of degree < order).
double pv_weighted_hilbert(const std::function<double(double)>& g, double a, double x, int order = 64);

// Closed-form initial pressure for the log kernel at eta = 0 (requires a != 2
// and a twice continuously differentiable punch):
//   p(x,0) = (1/(pi^2 sqrt(a^2-x^2))) [ PV int sqrt(a^2-xi^2) Delta'(xi)/(xi-x) dxi
//            + (1/log(a/2)) (int Delta/sqrt(a^2-xi^2) + pi (C_K P0 - delta0)) ]
//   delta0 = C_K P0 - P0 log(a/2) + (1/pi) int Delta/sqrt(a^2-xi^2)
//            + (log(a/2)/pi^2) int PV[...]/sqrt(a^2-x^2)
InitialState initial_pressure_eta_zero(const KernelSpec& kernel, const PunchProfile& punch,
                                       double P0, const QuadratureGrid& grid, int cheb_order = 96);

// eta > 0: augmented Fredholm system
//   [eta I + A_K, -1; w^T, 0] [p0; delta0] = [-Delta(x_i); P0]
InitialState initial_pressure_eta_pos(const Discretization& disc, double eta,
                                      const PunchProfile& punch, double P0);

// semicircular profile p0(x) = (2 P0 / (a^2 pi)) sqrt(a^2 - x^2)
InitialState prescribed_initial_profile(double P0, double a, const QuadratureGrid& grid);

struct CoefficientSet {
    std::vector<double> d0;
    std::optional<double> d_perp0;
    int M = 0;
    double reconstruction_residual = 0.0;  // ||q0 - sum d_k phi_k|| / ||q0||
};

// q0 = p0 - P0/(2a), shifted to exact zero grid mean, projected on the leading
// M modes. Throws unless the state is square integrable or the caller overrides.
CoefficientSet project_initial(const InitialState& state, const SpectralBasis& basis, int M,
                               bool override_square_integrable = false);

}  // namespace fracwear

#endif

#ifndef FRACWEAR_EVOLUTION_HPP
#define FRACWEAR_EVOLUTION_HPP

#include <vector>

#include <Eigen/Dense>

#include "fracwear/initial_state.hpp"
#include "fracwear/kernel.hpp"
#include "fracwear/load_profile.hpp"
#include "fracwear/operator_spectrum.hpp"

namespace fracwear {

// Scalar model constants. eta = 0 is admissible only under a constant load.
struct ModelParams {
    double a = 1.0;      // contact half-width
    double eta = 0.0;    // surface compliance
    double nu = 1.0;     // wear coefficient
    double mu = 0.0;     // relaxation constant
    double alpha = 1.0;  // fractional order in (0,2)

    void validate() const;
    void validate_with_load(const LoadProfile& load) const;
};

// Resolution of the causal product-integration grids for the load convolution.
struct ConvolutionSpec {
    int cells_per_unit_low = 512;   // alpha < 1
    int cells_per_unit_high = 256;  // alpha >= 1
    int min_cells = 32;

    int cells(double alpha, double duration) const;
};

struct PressureField {
    std::vector<double> x;
    std::vector<double> t;
    Eigen::MatrixXd p;  // row m = pressure samples at time t[m]
    ModelParams params;
    double max_mass_violation = 0.0;

    double mass_at(std::size_t m, double cell_width) const;
    // linear interpolation between the two neighbouring nodes
    double value_at(std::size_t m, double x_query) const;
};

// int_0^t e_alpha(t - tau; lambda) [P(tau) - P(0)] dtau: numerical product
// integration over the transient window, closed form afterwards.
double load_difference_convolution(double alpha, double lambda, const LoadProfile& load, double t,
                                   const ConvolutionSpec& spec = {});

// d_k(t) of the separated solution:
//   d_k0 [1 + nu/(mu(eta+sigma)+nu) (E_alpha(-(mu+nu/(eta+sigma)) t^alpha) - 1)]
//   - l_k (P(t)-P(0)) / (2a(eta+sigma))
//   - nu l_k / (2a(eta+sigma)^2 beta) int_0^t e_alpha(t-tau;beta)[P(tau)-P(0)] dtau
// with beta = mu + nu/(eta+sigma).
double mode_coefficient(const ModelParams& params, double sigma_k, double d_k0, double l_k,
                        const LoadProfile& load, double t, const ConvolutionSpec& spec = {});

// same structure with sigma = 0; requires eta > 0 unless the initial component
// vanishes (then it is identically zero)
double null_coefficient(const ModelParams& params, double d_perp0, double l_perp,
                        const LoadProfile& load, double t, const ConvolutionSpec& spec = {});

PressureField pressure_field(const ModelParams& params, const SpectralBasis& basis,
                             const CoefficientSet& coeffs, const LoadProfile& load,
                             const std::vector<double>& t_list, int M,
                             const ConvolutionSpec& spec = {}, int threads = 1);

// wear field w(x,t) = int_0^t W(t-tau) p(x,tau) dtau with the memory kernel
// W(s) = -(nu/mu) e_alpha(s;mu) for mu > 0 and nu s^{alpha-1}/Gamma(alpha)
// at mu = 0. Product integration on the field's own time list.
Eigen::MatrixXd wear_history(const ModelParams& params, const PressureField& field,
                             bool* negative_wear = nullptr);
Eigen::VectorXd wear_field(const ModelParams& params, const PressureField& field, double t);

// indentation change delta(t) - delta(0)
double indentation(const ModelParams& params, const PressureField& field,
                   const SpectralBasis& basis, const LoadProfile& load, double t,
                   const ConvolutionSpec& spec = {});

// relative residual of the governing zero-mean equation per output time,
// evaluated with the discretized operator and product-integration convolution
std::vector<double> residual_check(const PressureField& field, const ModelParams& params,
                                   const Discretization& disc, const InitialState& initial,
                                   const LoadProfile& load);

}  // namespace fracwear

#endif

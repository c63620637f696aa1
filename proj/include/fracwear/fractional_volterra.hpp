#ifndef FRACWEAR_FRACTIONAL_VOLTERRA_HPP
#define FRACWEAR_FRACTIONAL_VOLTERRA_HPP

#include <functional>
#include <string>
#include <vector>

namespace fracwear {

struct TimeGrid {
    std::vector<double> nodes;  // strictly increasing, nodes.front() == 0
    bool uniform = false;

    static TimeGrid uniform_grid(double t_end, std::size_t n_cells);
    std::size_t size() const { return nodes.size(); }
    double dt() const;  // uniform grids only
    void validate() const;
};

// A function sampled on a time grid, optionally with first/second derivative
// samples. Derivative entries may be non-finite at t = 0 when the generating
// function has an integrable singularity there (e.g. f = t^alpha); the solvers
// fall back to increment-based cell means on such cells.
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> values;
    std::vector<double> deriv;
    std::vector<double> deriv2;

    static SampledFunction from_callable(TimeGrid g, const std::function<double(double)>& f);
    static SampledFunction from_callable(TimeGrid g, const std::function<double(double)>& f,
                                         const std::function<double(double)>& fp);
    static SampledFunction from_callable(TimeGrid g, const std::function<double(double)>& f,
                                         const std::function<double(double)>& fp,
                                         const std::function<double(double)>& fpp);
    void validate(bool need_deriv = false, bool need_deriv2 = false) const;
};

// u(t) + (lambda/Gamma(a)) int_0^t u(tau) (t-tau)^{a-1} dtau = f(t)
//   -> u = f + int_0^t e_a(t-tau; lambda) f(tau) dtau
SampledFunction solve_abel_second_kind(double alpha, double lambda, const SampledFunction& f);

// (1/Gamma(a)) int_0^t u (t-tau)^{a-1} dtau = f,  a in (0,1):
//   u = (1/Gamma(1-a)) [ f(0)/t^a + int_0^t f'(tau) (t-tau)^{-a} dtau ]
// values[0] is NaN: the solution is generally unbounded at t = 0.
SampledFunction solve_abel_first_kind(double alpha, const SampledFunction& f);

// Same first-kind equation for a in [1,2):
//   u = (Gamma(a) sin(pi(a-1)) / (pi(a-1)))
//       [ -(a-1) f(0)/t^a + f'(0)/t^{a-1} + int_0^t f''(tau) (t-tau)^{1-a} dtau ]
// degenerating to u = f' at a = 1.
SampledFunction solve_abel_first_kind_high(double alpha, const SampledFunction& f);

// u - (lambda/mu^{1-1/a}) int_0^t e_a(mu^{1/a}(t-tau);1) u(tau) dtau = f
//   -> u = f + (lambda/(mu+lambda)) int_0^t e_a(t-tau; mu+lambda) f(tau) dtau
// requires mu + lambda > 0 or lambda == 0.
SampledFunction solve_ml_second_kind(double alpha, double mu, double lambda, const SampledFunction& f);

// -(1/mu^{1-1/a}) int_0^t e_a(mu^{1/a}(t-tau);1) u(tau) dtau = f:
//   a in (0,1): u = mu f + (1/(Gamma(1-a) t^a) - mu) f(0) + (1/Gamma(1-a)) int f'(tau)(t-tau)^{-a}
//   a in [1,2): u = mu f - (a-1) f(0)/(Gamma(2-a) t^a) + f'(0)/(Gamma(2-a) t^{a-1})
//               + (1/Gamma(2-a)) int f''(tau)(t-tau)^{1-a}
//   a == 1:    u = mu f + f'
SampledFunction solve_ml_first_kind(double alpha, double mu, const SampledFunction& f);

enum class VolterraKind { First, Second };

struct OracleReport {
    double leading_weight = 0.0;
    bool ill_conditioned = false;
    std::string regularization;
};

// Brute-force validator: collocates u + c (k*u) = f (or eps u + c (k*u) = f for
// first-kind input, eps = 1e-10, with a cubic-extrapolation closure row fixing
// u(0)) with piecewise-constant cell densities (u_j + u_{j+1})/2 and kernel cell
// moments computed by adaptive quadrature of the supplied callable. Entirely
// independent of the closed forms above.
SampledFunction volterra_oracle(const std::function<double(double)>& kernel,
                                double singularity_exponent, double coefficient,
                                const SampledFunction& f, VolterraKind kind,
                                OracleReport* report = nullptr);

}  // namespace fracwear

#endif

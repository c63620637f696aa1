#ifndef FRACWEAR_SPECIAL_FUNCTIONS_HPP
#define FRACWEAR_SPECIAL_FUNCTIONS_HPP

#include <stdexcept>
#include <string>

namespace fracwear {

// Raised when the series branch cannot reach the requested tolerance within
// max_series_terms; carries the tolerance actually achieved.
struct MlAccuracyError : std::runtime_error {
    double achieved;
    explicit MlAccuracyError(double got, const std::string& what)
        : std::runtime_error(what), achieved(got) {}
};

// Controls for the Mittag-Leffler evaluation branches. The defaults give
// ~1e-10 relative accuracy on the series range |z| <= series_cutoff and
// ~1e-8 beyond it, which leaves two spare digits against the 1e-6
// tolerances used downstream.
struct MlEvalPolicy {
    double series_cutoff = 5.0;      // |z| below which the power series is used
    double asymptotic_cutoff = 12.0; // baseline |z| above which the large-argument expansion applies
    double target_rel_tol = 1e-10;
    int max_series_terms = 4000;

    void validate() const;
};

enum class MlBranch { Series, Gap, Asymptotic };

struct MlValue {
    double value = 0.0;
    MlBranch branch = MlBranch::Series;
    double est_rel_err = 0.0;
};

const char* ml_branch_name(MlBranch b);

// Gamma(z) for z > 0. Throws std::domain_error otherwise.
double gamma_fn(double z);

// 1/Gamma(z) on the whole real line; returns 0 at the poles z = 0, -1, -2, ...
double reciprocal_gamma(double z);

// E_{alpha,beta}(z) for real z, alpha in (0,2], beta > 0.
//
// Branches:
//   |z| <= series_cutoff, or z > 0 : defining power series (long double, log-space terms)
//   z < 0, |z| >= z_asy(alpha)     : algebraic inverse-power series plus, for alpha >= 1,
//                                    the oscillatory exponential contribution
//   z < 0 in between               : alpha < 1  -> spectral integral representation
//                                    alpha >= 1 -> square-root argument splitting into two
//                                                  half-order series evaluations
// where z_asy(alpha) = max(asymptotic_cutoff, (25/alpha)^alpha) for alpha <= 1 and
// max(asymptotic_cutoff, 24^alpha) for alpha > 1 (the oscillatory part must have
// decayed before the algebraic expansion is usable).
MlValue mittag_leffler_full(double alpha, double beta, double z, const MlEvalPolicy& policy = {});
double mittag_leffler(double alpha, double beta, double z, const MlEvalPolicy& policy = {});

// e_alpha(t; lambda) = d/dt E_alpha(-lambda t^alpha) = -lambda t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha).
// t > 0 required: the singularity at t = 0 is integrable and must be handled through
// the moment helpers below, never by point evaluation.
double ml_kernel(double alpha, double t, double lambda);

// e_alpha(z; 1); negative for alpha in (0,1], oscillatory for alpha in (1,2).
double ml_kernel_unit(double alpha, double z);

// int_0^{z0} e_alpha(lambda^{1/alpha} z; 1) dz = lambda^{-1/alpha} [E_alpha(-lambda z0^alpha) - 1],
// lambda > 0, z0 >= 0. Backbone of all product-integration weights.
double ml_kernel_antiderivative(double alpha, double lambda, double z0);

// Exact cell moments of the kernel e_alpha(s; lambda) over [s0, s1], 0 <= s0 <= s1,
// valid for any real lambda:
//   moment0 = int e_alpha(s;lambda) ds     = E_alpha(-lambda s^alpha) |_{s0}^{s1}
//   moment1 = int s e_alpha(s;lambda) ds   = s [E_alpha - E_{alpha,2}](-lambda s^alpha) |_{s0}^{s1}
double ml_kernel_moment0(double alpha, double lambda, double s0, double s1);
double ml_kernel_moment1(double alpha, double lambda, double s0, double s1);

}  // namespace fracwear

#endif

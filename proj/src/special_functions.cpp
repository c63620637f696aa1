#include "fracwear/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

namespace fracwear {

namespace {

constexpr long double kLdEps = std::numeric_limits<long double>::epsilon();

// sign * exp(log_abs) = 1/Gamma(x); sign == 0 marks a pole.
struct RecipGammaLog {
    long double log_abs;
    int sign;
};

RecipGammaLog rgamma_log(double x) {
    if (x > 0.0) return {-std::lgamma((long double)x), 1};
    if (x == std::floor(x)) return {0.0L, 0};
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    const long double s = boost::math::sin_pi((long double)x);
    return {std::lgamma(1.0L - (long double)x) + std::log(std::abs(s)) - std::log((long double)M_PI),
            s >= 0 ? 1 : -1};
}

struct SeriesResult {
    long double value;
    long double est;  // relative
    int terms;
    bool converged;
};

// sum_k z^k / Gamma(alpha k + beta) with log-space terms (no overflow up to
// the long double range) and Kahan compensation; works for real z of either sign.
SeriesResult series_real(double alpha, double beta, double z, const MlEvalPolicy& pol) {
    const long double az = std::abs((long double)z);
    if (az == 0.0L) return {1.0L / std::tgamma((long double)beta), kLdEps, 1, true};
    const long double logaz = std::log(az);
    const bool neg = z < 0.0;
    // run past the requested tolerance: the tail is cheap once the terms decay
    const long double stop_tol = std::min((long double)pol.target_rel_tol, 1e-13L);
    long double sum = 0.0L, comp = 0.0L, max_term = 0.0L, prev = std::numeric_limits<long double>::max();
    long double term = 0.0L;
    int k = 0;
    bool converged = false;
    for (; k < pol.max_series_terms; ++k) {
        const long double lg = std::lgamma((long double)alpha * k + (long double)beta);
        long double t = std::exp((long double)k * logaz - lg);
        if (neg && (k & 1)) t = -t;
        const long double y = t - comp;
        const long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        term = std::abs(t);
        max_term = std::max(max_term, term);
        if (k > 2 && term <= prev && term <= stop_tol * std::abs(sum)) {
            converged = true;
            ++k;
            break;
        }
        prev = term;
    }
    const long double denom = std::max(std::abs(sum), (long double)std::numeric_limits<double>::min());
    const long double est = (term + max_term * kLdEps * std::sqrt((long double)k)) / denom;
    return {sum, est, k, converged};
}

// Same series for a complex argument given as (log|z|, arg z).
SeriesResult series_complex_part(double alpha, double beta, long double logr, long double theta,
                                 const MlEvalPolicy& pol, std::complex<long double>* out) {
    std::complex<long double> sum(0.0L, 0.0L);
    const std::complex<long double> rot(std::cos(theta), std::sin(theta));
    std::complex<long double> phase(1.0L, 0.0L);
    long double max_term = 0.0L, prev = std::numeric_limits<long double>::max(), term = 0.0L;
    const long double stop_tol = std::min((long double)pol.target_rel_tol, 1e-13L);
    int k = 0;
    bool converged = false;
    for (; k < pol.max_series_terms; ++k) {
        const long double lg = std::lgamma((long double)alpha * k + (long double)beta);
        const long double mag = std::exp((long double)k * logr - lg);
        sum += mag * phase;
        phase *= rot;
        term = mag;
        max_term = std::max(max_term, term);
        if (k > 2 && term <= prev && term <= stop_tol * std::abs(sum)) {
            converged = true;
            ++k;
            break;
        }
        prev = term;
    }
    *out = sum;
    const long double denom = std::max(std::abs(sum), (long double)std::numeric_limits<double>::min());
    const long double est = (term + max_term * kLdEps * std::sqrt((long double)k)) / denom;
    return {0.0L, est, k, converged};
}

// Inverse-power part of the large-argument expansion,
// -sum_{k>=1} z^{-k} / Gamma(beta - alpha k), truncated at the smallest term.
// The truncation trend is tracked on the sin-free envelope |Gamma(1-arg)|/pi so
// that terms falling next to a Gamma pole (anomalously tiny) do not end the
// sum prematurely.
double asymptotic_algebraic(double alpha, double beta, double z, double* est_abs) {
    const long double logaz = std::log(std::abs((long double)z));
    const bool neg = z < 0.0;
    long double sum = 0.0L, prev_env = std::numeric_limits<long double>::max(), last_env = 0.0L;
    for (int k = 1; k <= 60; ++k) {
        const double arg = beta - alpha * k;
        const long double log_env =
            (arg > 0.5 ? -std::lgamma((long double)arg)
                       : std::lgamma(1.0L - (long double)arg) - std::log((long double)M_PI)) -
            (long double)k * logaz;
        const long double env = std::exp(log_env);
        if (env > prev_env && k > 2) break;
        prev_env = env;
        last_env = env;
        const RecipGammaLog rg = rgamma_log(arg);
        if (rg.sign == 0) continue;
        long double t = -(long double)rg.sign * std::exp(rg.log_abs - (long double)k * logaz);
        if (neg && (k & 1)) t = -t;
        sum += t;
    }
    *est_abs = (double)last_env;
    return (double)sum;
}

// Oscillatory exponential contribution on the negative axis (alpha >= 1 only):
// the conjugate saddle pair for alpha > 1, a single real term at alpha = 1.
double asymptotic_exponential(double alpha, double beta, double x) {
    if (alpha < 1.0) return 0.0;
    const double r = std::pow(x, 1.0 / alpha);
    if (alpha == 1.0)
        return std::pow(x, 1.0 - beta) * std::exp(-x) * boost::math::cos_pi(1.0 - beta);
    const double c = std::cos(M_PI / alpha), s = std::sin(M_PI / alpha);
    return (2.0 / alpha) * std::pow(x, (1.0 - beta) / alpha) * std::exp(r * c) *
           std::cos(r * s + M_PI * (1.0 - beta) / alpha);
}

double z_asymptotic(double alpha, const MlEvalPolicy& pol) {
    const double base = alpha <= 1.0 ? std::pow(25.0 / alpha, alpha) : std::pow(24.0, alpha);
    return std::max(pol.asymptotic_cutoff, base);
}

// Spectral representation of E_{alpha,beta}(-x) for 0 < alpha < 1, beta < 1 + alpha:
//   (1/pi) int_0^inf e^{-r} r^{alpha-beta} [r^alpha sin(pi beta) + x sin(pi(beta-alpha))]
//                     / (r^{2 alpha} + 2 x r^alpha cos(pi alpha) + x^2) dr
double spectral_integral(double alpha, double beta, double x, double* est) {
    const double sb = boost::math::sin_pi(beta);
    const double sba = boost::math::sin_pi(beta - alpha);
    const double ca = boost::math::cos_pi(alpha);
    auto f = [&](double r) {
        const double ra = std::pow(r, alpha);
        const double den = ra * ra + 2.0 * x * ra * ca + x * x;
        return std::exp(-r) * std::pow(r, alpha - beta) * (ra * sb + x * sba) / den / M_PI;
    };
    const double r0 = std::pow(x, 1.0 / alpha);  // denominator minimum sits near here
    double total = 0.0, err_total = 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    double e0 = 0.0;
    const double head = std::min(1.0, r0);
    total += ts.integrate(f, 0.0, head, 1e-12, &e0);
    err_total += std::abs(e0) * std::abs(total);
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double split = head;
    for (double edge : {r0, r0 + 60.0}) {
        if (edge <= split) continue;
        double e1 = 0.0;
        total += GK::integrate(f, split, edge, 14, 1e-13, &e1);
        err_total += e1;
        split = edge;
    }
    const double denom = std::max(std::abs(total), std::numeric_limits<double>::min());
    *est = err_total / denom + 1e-13;
    return total;
}

MlValue eval(double alpha, double beta, double z, const MlEvalPolicy& pol);

// Reduce beta below 1 + alpha with E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z,
// then evaluate through the spectral representation. For alpha > 1 the kernel
// ζ^alpha + x acquires a conjugate pole pair on the principal sheet whose
// residues are exactly the oscillatory exponential term, so it is added back.
MlValue gap_integral(double alpha, double beta, double z, const MlEvalPolicy& pol) {
    if (beta >= 1.0 + alpha - 1e-12) {
        const MlValue inner = gap_integral(alpha, beta - alpha, z, pol);
        MlValue out;
        out.branch = MlBranch::Gap;
        out.value = (inner.value - reciprocal_gamma(beta - alpha)) / z;
        out.est_rel_err = inner.est_rel_err * std::abs(inner.value / out.value / z) + 1e-14;
        return out;
    }
    MlValue out;
    out.branch = MlBranch::Gap;
    out.value = spectral_integral(alpha, beta, -z, &out.est_rel_err);
    if (alpha > 1.0) {
        const double expo = asymptotic_exponential(alpha, beta, -z);
        out.est_rel_err *= std::abs(out.value) / std::max(std::abs(out.value + expo), 1e-300);
        out.value += expo;
    }
    return out;
}

// E_{a,b}(z) = (E_{a/2,b}(w) + E_{a/2,b}(-w)) / 2 with w = sqrt(z); for z < 0 the
// square root is imaginary and the two half-order series are complex conjugates.
MlValue gap_duplication(double alpha, double beta, double z, const MlEvalPolicy& pol) {
    const long double logr = 0.5L * std::log(std::abs((long double)z));
    const long double theta = z < 0 ? 0.5L * (long double)M_PI : 0.0L;
    std::complex<long double> sp, sm;
    const SeriesResult a = series_complex_part(alpha / 2.0, beta, logr, theta, pol, &sp);
    const SeriesResult b = series_complex_part(alpha / 2.0, beta, logr, theta - (long double)M_PI, pol, &sm);
    const long double val = 0.5L * (sp.real() + sm.real());
    MlValue out;
    out.branch = MlBranch::Gap;
    out.value = (double)val;
    const long double scale = std::max(std::abs(sp), std::abs(sm));
    const long double denom = std::max(std::abs(val), (long double)std::numeric_limits<double>::min());
    out.est_rel_err = (double)((a.est + b.est) * scale / denom);
    if (!a.converged || !b.converged)
        throw MlAccuracyError(out.est_rel_err, "mittag_leffler: half-order series did not converge");
    return out;
}

MlValue eval(double alpha, double beta, double z, const MlEvalPolicy& pol) {
    MlValue out;
    if (z >= 0.0) {
        // all series terms are positive: no cancellation, usable until the terms overflow
        const double growth = std::pow(z, 1.0 / alpha);
        const double approx_terms = growth / alpha + 64.0;
        if (growth <= 200.0 && approx_terms < (double)pol.max_series_terms) {
            const SeriesResult s = series_real(alpha, beta, z, pol);
            out.value = (double)s.value;
            out.branch = MlBranch::Series;
            out.est_rel_err = (double)s.est;
            if (!s.converged)
                throw MlAccuracyError(out.est_rel_err, "mittag_leffler: series did not converge");
            return out;
        }
        double ea = 0.0;
        const double alg = asymptotic_algebraic(alpha, beta, z, &ea);
        // dominant exponential of E_{a,b} on the positive axis
        const double expo = (1.0 / alpha) * std::pow(z, (1.0 - beta) / alpha) * std::exp(growth);
        out.value = expo + alg;
        out.branch = MlBranch::Asymptotic;
        out.est_rel_err = std::abs(out.value) > 0 ? ea / std::abs(out.value) : ea;
        return out;
    }
    const double x = -z;
    if (x <= pol.series_cutoff) {
        const SeriesResult s = series_real(alpha, beta, z, pol);
        out.value = (double)s.value;
        out.branch = MlBranch::Series;
        out.est_rel_err = (double)s.est;
        if (!s.converged)
            throw MlAccuracyError(out.est_rel_err, "mittag_leffler: series did not converge");
        return out;
    }
    if (x >= z_asymptotic(alpha, pol)) {
        double ea = 0.0;
        const double alg = asymptotic_algebraic(alpha, beta, z, &ea);
        const double expo = asymptotic_exponential(alpha, beta, x);
        out.value = expo + alg;
        out.branch = MlBranch::Asymptotic;
        out.est_rel_err = std::abs(out.value) > 0 ? ea / std::abs(out.value) : ea;
        return out;
    }
    if (alpha < 1.0) return gap_integral(alpha, beta, z, pol);
    if (alpha == 1.0) {
        // the spectral representation degenerates at alpha = 1 (the pole pair
        // merges onto the real axis); use exact exponential forms instead
        if (beta == 1.0) return {std::exp(z), MlBranch::Gap, 1e-15};
        if (beta == 2.0) return {std::expm1(z) / z, MlBranch::Gap, 1e-15};
        return gap_duplication(alpha, beta, z, pol);
    }
    MlValue dup = gap_duplication(alpha, beta, z, pol);
    if (dup.est_rel_err > std::max(1e-9, pol.target_rel_tol))
        return gap_integral(alpha, beta, z, pol);
    return dup;
}

}  // namespace

void MlEvalPolicy::validate() const {
    if (!(series_cutoff > 0.0) || !(asymptotic_cutoff > 0.0) || series_cutoff >= asymptotic_cutoff)
        throw std::domain_error("MlEvalPolicy: need 0 < series_cutoff < asymptotic_cutoff");
    if (!(target_rel_tol > 1e-15 && target_rel_tol < 1e-3))
        throw std::domain_error("MlEvalPolicy: target_rel_tol outside (1e-15, 1e-3)");
    if (max_series_terms <= 0) throw std::domain_error("MlEvalPolicy: max_series_terms must be positive");
}

const char* ml_branch_name(MlBranch b) {
    switch (b) {
        case MlBranch::Series: return "series";
        case MlBranch::Gap: return "gap";
        case MlBranch::Asymptotic: return "asymptotic";
    }
    return "?";
}

double gamma_fn(double z) {
    if (!(z > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    return std::tgamma(z);
}

double reciprocal_gamma(double z) {
    const RecipGammaLog rg = rgamma_log(z);
    if (rg.sign == 0) return 0.0;
    return rg.sign * (double)std::exp(rg.log_abs);
}

MlValue mittag_leffler_full(double alpha, double beta, double z, const MlEvalPolicy& policy) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("mittag_leffler: alpha outside (0,2]");
    if (!(beta > 0.0)) throw std::domain_error("mittag_leffler: beta must be positive");
    policy.validate();
    return eval(alpha, beta, z, policy);
}

double mittag_leffler(double alpha, double beta, double z, const MlEvalPolicy& policy) {
    return mittag_leffler_full(alpha, beta, z, policy).value;
}

double ml_kernel(double alpha, double t, double lambda) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("ml_kernel: alpha outside (0,2)");
    if (!(t > 0.0)) throw std::domain_error("ml_kernel: t must be positive");
    if (lambda == 0.0) return 0.0;
    return -lambda * std::pow(t, alpha - 1.0) * mittag_leffler(alpha, alpha, -lambda * std::pow(t, alpha));
}

double ml_kernel_unit(double alpha, double z) { return ml_kernel(alpha, z, 1.0); }

double ml_kernel_antiderivative(double alpha, double lambda, double z0) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("ml_kernel_antiderivative: alpha outside (0,2)");
    if (!(lambda > 0.0)) throw std::domain_error("ml_kernel_antiderivative: lambda must be positive");
    if (z0 < 0.0) throw std::domain_error("ml_kernel_antiderivative: z0 must be non-negative");
    if (z0 == 0.0) return 0.0;
    return std::pow(lambda, -1.0 / alpha) * (mittag_leffler(alpha, 1.0, -lambda * std::pow(z0, alpha)) - 1.0);
}

double ml_kernel_moment0(double alpha, double lambda, double s0, double s1) {
    if (!(s0 >= 0.0 && s1 >= s0)) throw std::domain_error("ml_kernel_moment0: need 0 <= s0 <= s1");
    if (lambda == 0.0 || s0 == s1) return 0.0;
    auto ea = [&](double s) {
        return s == 0.0 ? 1.0 : mittag_leffler(alpha, 1.0, -lambda * std::pow(s, alpha));
    };
    return ea(s1) - ea(s0);
}

double ml_kernel_moment1(double alpha, double lambda, double s0, double s1) {
    if (!(s0 >= 0.0 && s1 >= s0)) throw std::domain_error("ml_kernel_moment1: need 0 <= s0 <= s1");
    if (lambda == 0.0 || s0 == s1) return 0.0;
    auto anti = [&](double s) {
        if (s == 0.0) return 0.0;
        const double arg = -lambda * std::pow(s, alpha);
        return s * (mittag_leffler(alpha, 1.0, arg) - mittag_leffler(alpha, 2.0, arg));
    };
    return anti(s1) - anti(s0);
}

}  // namespace fracwear

#ifndef FRACWEAR_LOAD_PROFILE_HPP
#define FRACWEAR_LOAD_PROFILE_HPP

#include <optional>
#include <vector>

namespace fracwear {

// Time-dependent normal load P(t) > 0. The transitional cosine switches
// smoothly from P0 to P1 over [0, t0] and stays constant afterwards; sampled
// profiles interpolate linearly and hold the last value.
struct LoadProfile {
    enum class Kind { Constant, TransitionalCosine, Sampled };
    Kind kind = Kind::Constant;
    double P0 = 0.0;
    double P1 = 0.0;
    double t0 = 0.0;
    std::vector<double> times, values;

    static LoadProfile constant(double P0);
    static LoadProfile transitional_cosine(double P0, double P1, double t0);
    static LoadProfile sampled(std::vector<double> times, std::vector<double> values);
    void validate() const;

    double operator()(double t) const;
    double initial() const { return P0; }
    // time past which P is identically constant, if any
    std::optional<double> constant_after() const;
};

double load_value(const LoadProfile& profile, double t);

}  // namespace fracwear

#endif

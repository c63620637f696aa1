#include "fracwear/load_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwear {

LoadProfile LoadProfile::constant(double P0) {
    LoadProfile p;
    p.kind = Kind::Constant;
    p.P0 = p.P1 = P0;
    p.validate();
    return p;
}

LoadProfile LoadProfile::transitional_cosine(double P0, double P1, double t0) {
    LoadProfile p;
    p.kind = Kind::TransitionalCosine;
    p.P0 = P0;
    p.P1 = P1;
    p.t0 = t0;
    p.validate();
    return p;
}

LoadProfile LoadProfile::sampled(std::vector<double> times, std::vector<double> values) {
    LoadProfile p;
    p.kind = Kind::Sampled;
    p.times = std::move(times);
    p.values = std::move(values);
    if (p.times.empty() || p.times.size() != p.values.size())
        throw std::domain_error("LoadProfile: sampled times/values mismatch");
    if (p.times.front() != 0.0) throw std::domain_error("LoadProfile: samples must start at t = 0");
    for (std::size_t i = 1; i < p.times.size(); ++i)
        if (!(p.times[i] > p.times[i - 1]))
            throw std::domain_error("LoadProfile: sample times must increase");
    p.P0 = p.values.front();
    p.P1 = p.values.back();
    p.t0 = p.times.back();
    p.validate();
    return p;
}

void LoadProfile::validate() const {
    switch (kind) {
        case Kind::Constant:
            if (!(P0 > 0.0)) throw std::domain_error("LoadProfile: load must stay positive");
            return;
        case Kind::TransitionalCosine:
            if (!(P0 > 0.0) || !(P1 > 0.0) || !(t0 > 0.0))
                throw std::domain_error("LoadProfile: cosine switch needs positive P0, P1, t0");
            return;
        case Kind::Sampled:
            for (double v : values)
                if (!(v > 0.0)) throw std::domain_error("LoadProfile: load must stay positive");
            return;
    }
}

double LoadProfile::operator()(double t) const {
    if (t < 0.0) throw std::domain_error("LoadProfile: t must be non-negative");
    switch (kind) {
        case Kind::Constant:
            return P0;
        case Kind::TransitionalCosine:
            if (t >= t0) return P1;
            return 0.5 * (P0 + P1) - 0.5 * (P1 - P0) * std::cos(M_PI * t / t0);
        case Kind::Sampled: {
            if (t >= times.back()) return values.back();
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t j = std::size_t(it - times.begin());
            const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
            return (1.0 - w) * values[j - 1] + w * values[j];
        }
    }
    return P0;
}

std::optional<double> LoadProfile::constant_after() const {
    switch (kind) {
        case Kind::Constant:
            return 0.0;
        case Kind::TransitionalCosine:
            return t0;
        case Kind::Sampled:
            return times.back();
    }
    return std::nullopt;
}

double load_value(const LoadProfile& profile, double t) { return profile(t); }

}  // namespace fracwear

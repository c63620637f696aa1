#include "fracwear/fractional_volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracwear/special_functions.hpp"

namespace fracwear {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Cell representation of an integrand density g on [t_j, t_{j+1}]:
// g(tau) ~ mean + slope (tau - midpoint), with the mean taken from the exact
// increment of the antiderivative when available. Integrated against a kernel
// k(t_i - tau) via its zeroth/first moments in s = t_i - tau.
struct CellDensity {
    double mean;
    double slope;
};

// int_{t_j}^{t_{j+1}} k(t_i - tau) g(tau) dtau with s = t_i - tau and
// mid_s = t_i - midpoint:  (mean + slope mid_s) M0 - slope M1.
double apply_cell(const CellDensity& c, double mid_s, double m0, double m1) {
    return (c.mean + c.slope * mid_s) * m0 - c.slope * m1;
}

// Power-kernel moments over [s1, s0] (s0 > s1 >= 0): k(s) = s^{-c}, c < 1.
double power_moment0(double c, double s1, double s0) {
    return (std::pow(s0, 1.0 - c) - std::pow(s1, 1.0 - c)) / (1.0 - c);
}
double power_moment1(double c, double s1, double s0) {
    return (std::pow(s0, 2.0 - c) - std::pow(s1, 2.0 - c)) / (2.0 - c);
}

// Derivative density of f on cell j: exact increment mean plus sampled slope.
CellDensity deriv_density(const SampledFunction& f, std::size_t j) {
    const double h = f.grid.nodes[j + 1] - f.grid.nodes[j];
    CellDensity c{(f.values[j + 1] - f.values[j]) / h, 0.0};
    if (!f.deriv.empty() && std::isfinite(f.deriv[j]) && std::isfinite(f.deriv[j + 1]))
        c.slope = (f.deriv[j + 1] - f.deriv[j]) / h;
    return c;
}

// Second-derivative density: increments of f' plus sampled f'' slope.
CellDensity deriv2_density(const SampledFunction& f, std::size_t j) {
    const double h = f.grid.nodes[j + 1] - f.grid.nodes[j];
    CellDensity c{(f.deriv[j + 1] - f.deriv[j]) / h, 0.0};
    if (!f.deriv2.empty() && std::isfinite(f.deriv2[j]) && std::isfinite(f.deriv2[j + 1]))
        c.slope = (f.deriv2[j + 1] - f.deriv2[j]) / h;
    return c;
}

// Value density: piecewise-linear interpolation of the samples themselves.
CellDensity value_density(const SampledFunction& f, std::size_t j) {
    const double h = f.grid.nodes[j + 1] - f.grid.nodes[j];
    return {0.5 * (f.values[j] + f.values[j + 1]), (f.values[j + 1] - f.values[j]) / h};
}

// Per-gap moment tables for uniform grids: moments over [s1,s0] with
// s0 = g h, s1 = (g-1) h depend only on the gap g, so each boundary value is
// computed once.
struct MomentTable {
    std::vector<double> m0, m1;  // indexed by gap g >= 1
};

template <typename Anti0, typename Anti1>
MomentTable build_moment_table(std::size_t n, double h, Anti0 a0, Anti1 a1) {
    MomentTable t;
    t.m0.assign(n + 1, 0.0);
    t.m1.assign(n + 1, 0.0);
    double prev0 = a0(0.0), prev1 = a1(0.0);
    for (std::size_t g = 1; g <= n; ++g) {
        const double s = double(g) * h;
        const double c0 = a0(s), c1 = a1(s);
        t.m0[g] = c0 - prev0;
        t.m1[g] = c1 - prev1;
        prev0 = c0;
        prev1 = c1;
    }
    return t;
}

MomentTable ml_moment_table(std::size_t n, double h, double alpha, double lambda) {
    return build_moment_table(
        n, h,
        [&](double s) { return mittag_leffler(alpha, 1.0, -lambda * std::pow(s, alpha)); },
        [&](double s) {
            const double arg = -lambda * std::pow(s, alpha);
            return s * (mittag_leffler(alpha, 1.0, arg) - mittag_leffler(alpha, 2.0, arg));
        });
}

MomentTable power_moment_table(std::size_t n, double h, double c) {
    return build_moment_table(n, h, [&](double s) { return std::pow(s, 1.0 - c) / (1.0 - c); },
                              [&](double s) { return std::pow(s, 2.0 - c) / (2.0 - c); });
}

}  // namespace

TimeGrid TimeGrid::uniform_grid(double t_end, std::size_t n_cells) {
    if (!(t_end > 0.0) || n_cells == 0) throw std::domain_error("TimeGrid: bad uniform grid request");
    TimeGrid g;
    g.nodes.resize(n_cells + 1);
    for (std::size_t i = 0; i <= n_cells; ++i) g.nodes[i] = t_end * double(i) / double(n_cells);
    g.uniform = true;
    return g;
}

double TimeGrid::dt() const {
    if (!uniform || nodes.size() < 2) throw std::logic_error("TimeGrid: dt() needs a uniform grid");
    return nodes[1] - nodes[0];
}

void TimeGrid::validate() const {
    if (nodes.empty()) throw std::domain_error("TimeGrid: empty grid");
    if (nodes.front() != 0.0) throw std::domain_error("TimeGrid: nodes must start at 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw std::domain_error("TimeGrid: nodes must increase strictly");
}

SampledFunction SampledFunction::from_callable(TimeGrid g, const std::function<double(double)>& f) {
    SampledFunction s;
    s.grid = std::move(g);
    s.values.reserve(s.grid.size());
    for (double t : s.grid.nodes) s.values.push_back(f(t));
    return s;
}

SampledFunction SampledFunction::from_callable(TimeGrid g, const std::function<double(double)>& f,
                                               const std::function<double(double)>& fp) {
    SampledFunction s = from_callable(std::move(g), f);
    s.deriv.reserve(s.grid.size());
    for (double t : s.grid.nodes) s.deriv.push_back(fp(t));
    return s;
}

SampledFunction SampledFunction::from_callable(TimeGrid g, const std::function<double(double)>& f,
                                               const std::function<double(double)>& fp,
                                               const std::function<double(double)>& fpp) {
    SampledFunction s = from_callable(std::move(g), f, fp);
    s.deriv2.reserve(s.grid.size());
    for (double t : s.grid.nodes) s.deriv2.push_back(fpp(t));
    return s;
}

void SampledFunction::validate(bool need_deriv, bool need_deriv2) const {
    grid.validate();
    if (values.size() != grid.size()) throw std::domain_error("SampledFunction: values/grid size mismatch");
    if (need_deriv && deriv.size() != grid.size())
        throw std::domain_error("SampledFunction: derivative samples required");
    if (need_deriv2 && deriv2.size() != grid.size())
        throw std::domain_error("SampledFunction: second-derivative samples required");
}


namespace {

// acc_i += sum_j density(j) against kernel moments; moments either tabulated
// (uniform grid) or computed per pair.
template <typename Density, typename M0, typename M1>
void accumulate_convolution(const SampledFunction& f, const MomentTable* table, M0 m0f, M1 m1f,
                            Density dens, std::vector<double>& acc) {
    const auto& t = f.grid.nodes;
    const std::size_t n = f.grid.size();
    for (std::size_t i = 1; i < n; ++i) {
        double a = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            double m0, m1;
            if (table) {
                m0 = table->m0[i - j];
                m1 = table->m1[i - j];
            } else {
                const double s0 = t[i] - t[j], s1 = t[i] - t[j + 1];
                m0 = m0f(s1, s0);
                m1 = m1f(s1, s0);
            }
            a += apply_cell(dens(j), t[i] - 0.5 * (t[j] + t[j + 1]), m0, m1);
        }
        acc[i] = a;
    }
}

}  // namespace

SampledFunction solve_abel_second_kind(double alpha, double lambda, const SampledFunction& f) {
    if (!(alpha > 0.0)) throw std::domain_error("solve_abel_second_kind: alpha must be positive");
    f.validate();
    const std::size_t n = f.grid.size();
    SampledFunction u;
    u.grid = f.grid;
    u.values = f.values;
    if (lambda == 0.0) return u;
    MomentTable table;
    const bool uni = f.grid.uniform;
    if (uni) table = ml_moment_table(n - 1, f.grid.dt(), alpha, lambda);
    std::vector<double> acc(n, 0.0);
    accumulate_convolution(
        f, uni ? &table : nullptr,
        [&](double s1, double s0) { return ml_kernel_moment0(alpha, lambda, s1, s0); },
        [&](double s1, double s0) { return ml_kernel_moment1(alpha, lambda, s1, s0); },
        [&](std::size_t j) { return value_density(f, j); }, acc);
    for (std::size_t i = 1; i < n; ++i) u.values[i] += acc[i];
    return u;
}

SampledFunction solve_abel_first_kind(double alpha, const SampledFunction& f) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("solve_abel_first_kind: alpha outside (0,1)");
    f.validate(true);
    const std::size_t n = f.grid.size();
    const auto& t = f.grid.nodes;
    const double inv = 1.0 / std::tgamma(1.0 - alpha);
    SampledFunction u;
    u.grid = f.grid;
    u.values.assign(n, kNaN);  // the solution is generally unbounded at t = 0
    MomentTable table;
    const bool uni = f.grid.uniform;
    if (uni) table = power_moment_table(n - 1, f.grid.dt(), alpha);
    std::vector<double> acc(n, 0.0);
    accumulate_convolution(
        f, uni ? &table : nullptr,
        [&](double s1, double s0) { return power_moment0(alpha, s1, s0); },
        [&](double s1, double s0) { return power_moment1(alpha, s1, s0); },
        [&](std::size_t j) { return deriv_density(f, j); }, acc);
    for (std::size_t i = 1; i < n; ++i)
        u.values[i] = inv * (f.values[0] / std::pow(t[i], alpha) + acc[i]);
    return u;
}

SampledFunction solve_abel_first_kind_high(double alpha, const SampledFunction& f) {
    if (!(alpha >= 1.0 && alpha < 2.0))
        throw std::domain_error("solve_abel_first_kind_high: alpha outside [1,2)");
    const std::size_t n = f.grid.size();
    const auto& t = f.grid.nodes;
    SampledFunction u;
    u.grid = f.grid;
    u.values.assign(n, kNaN);
    if (alpha == 1.0) {  // degenerate case: u = f'
        f.validate(true);
        u.values = f.deriv;
        return u;
    }
    f.validate(true, true);
    const double pref = std::tgamma(alpha) * std::sin(M_PI * (alpha - 1.0)) / (M_PI * (alpha - 1.0));
    MomentTable table;
    const bool uni = f.grid.uniform;
    if (uni) table = power_moment_table(n - 1, f.grid.dt(), alpha - 1.0);
    std::vector<double> acc(n, 0.0);
    accumulate_convolution(
        f, uni ? &table : nullptr,
        [&](double s1, double s0) { return power_moment0(alpha - 1.0, s1, s0); },
        [&](double s1, double s0) { return power_moment1(alpha - 1.0, s1, s0); },
        [&](std::size_t j) { return deriv2_density(f, j); }, acc);
    for (std::size_t i = 1; i < n; ++i)
        u.values[i] = pref * (-(alpha - 1.0) * f.values[0] / std::pow(t[i], alpha) +
                              f.deriv[0] / std::pow(t[i], alpha - 1.0) + acc[i]);
    return u;
}

SampledFunction solve_ml_second_kind(double alpha, double mu, double lambda, const SampledFunction& f) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("solve_ml_second_kind: alpha outside (0,2)");
    if (!(mu >= 0.0)) throw std::domain_error("solve_ml_second_kind: mu must be non-negative");
    f.validate();
    SampledFunction u;
    u.grid = f.grid;
    u.values = f.values;
    if (lambda == 0.0) return u;
    if (!(mu + lambda > 0.0)) throw std::domain_error("solve_ml_second_kind: mu + lambda must be positive");
    const double lam = mu + lambda, w = lambda / lam;
    const std::size_t n = f.grid.size();
    MomentTable table;
    const bool uni = f.grid.uniform;
    if (uni) table = ml_moment_table(n - 1, f.grid.dt(), alpha, lam);
    std::vector<double> acc(n, 0.0);
    accumulate_convolution(
        f, uni ? &table : nullptr,
        [&](double s1, double s0) { return ml_kernel_moment0(alpha, lam, s1, s0); },
        [&](double s1, double s0) { return ml_kernel_moment1(alpha, lam, s1, s0); },
        [&](std::size_t j) { return value_density(f, j); }, acc);
    for (std::size_t i = 1; i < n; ++i) u.values[i] += w * acc[i];
    return u;
}

SampledFunction solve_ml_first_kind(double alpha, double mu, const SampledFunction& f) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("solve_ml_first_kind: alpha outside (0,2)");
    if (!(mu >= 0.0)) throw std::domain_error("solve_ml_first_kind: mu must be non-negative");
    const std::size_t n = f.grid.size();
    const auto& t = f.grid.nodes;
    SampledFunction u;
    u.grid = f.grid;
    u.values.assign(n, kNaN);
    if (alpha == 1.0) {  // u = mu f + f'
        f.validate(true);
        for (std::size_t i = 0; i < n; ++i) u.values[i] = mu * f.values[i] + f.deriv[i];
        return u;
    }
    if (alpha < 1.0) {
        f.validate(true);
        const double inv = 1.0 / std::tgamma(1.0 - alpha);
        MomentTable table;
        const bool uni = f.grid.uniform;
        if (uni) table = power_moment_table(n - 1, f.grid.dt(), alpha);
        std::vector<double> acc(n, 0.0);
        accumulate_convolution(
            f, uni ? &table : nullptr,
            [&](double s1, double s0) { return power_moment0(alpha, s1, s0); },
            [&](double s1, double s0) { return power_moment1(alpha, s1, s0); },
            [&](std::size_t j) { return deriv_density(f, j); }, acc);
        for (std::size_t i = 1; i < n; ++i)
            u.values[i] = mu * f.values[i] + (inv / std::pow(t[i], alpha) - mu) * f.values[0] +
                          inv * acc[i];
        return u;
    }
    f.validate(true, true);
    const double inv = 1.0 / std::tgamma(2.0 - alpha);
    MomentTable table;
    const bool uni = f.grid.uniform;
    if (uni) table = power_moment_table(n - 1, f.grid.dt(), alpha - 1.0);
    std::vector<double> acc(n, 0.0);
    accumulate_convolution(
        f, uni ? &table : nullptr,
        [&](double s1, double s0) { return power_moment0(alpha - 1.0, s1, s0); },
        [&](double s1, double s0) { return power_moment1(alpha - 1.0, s1, s0); },
        [&](std::size_t j) { return deriv2_density(f, j); }, acc);
    for (std::size_t i = 1; i < n; ++i)
        u.values[i] = mu * f.values[i] - (alpha - 1.0) * inv * f.values[0] / std::pow(t[i], alpha) +
                      inv * f.deriv[0] / std::pow(t[i], alpha - 1.0) + inv * acc[i];
    return u;
}

SampledFunction volterra_oracle(const std::function<double(double)>& kernel,
                                double singularity_exponent, double coefficient,
                                const SampledFunction& f, VolterraKind kind, OracleReport* report) {
    f.validate();
    if (!f.grid.uniform) throw std::domain_error("volterra_oracle: uniform grid required");
    if (!(singularity_exponent > -1.0 && singularity_exponent < 1.0))
        throw std::domain_error("volterra_oracle: singularity exponent outside (-1,1)");
    const std::size_t n = f.grid.size() - 1;
    if (n < 4) throw std::domain_error("volterra_oracle: grid too short");
    const double h = f.grid.dt();

    // kernel cell moments W_m = int_{(m-1)h}^{mh} k(s) ds by quadrature;
    // the first cell carries the integrable singularity.
    std::vector<double> W(n + 1, 0.0);
    {
        boost::math::quadrature::tanh_sinh<double> ts;
        W[1] = ts.integrate(kernel, 0.0, h, 1e-12);
        using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
        for (std::size_t m = 2; m <= n; ++m)
            W[m] = GK::integrate(kernel, double(m - 1) * h, double(m) * h, 10, 1e-13);
    }

    const double eps = 1e-10;
    if (report) {
        report->leading_weight =
            std::abs(coefficient) * std::abs(W[1]) / 2.0 + (kind == VolterraKind::First ? eps : 1.0);
        report->ill_conditioned = report->leading_weight < 1e-13;
        report->regularization = kind == VolterraKind::First
                                     ? "eps*u added (eps=1e-10); u(0) closed by cubic extrapolation"
                                     : "none";
    }

    SampledFunction u;
    u.grid = f.grid;
    u.values.assign(n + 1, 0.0);

    if (kind == VolterraKind::Second) {
        // forward substitution: u_i + c sum_j W_{i-j} (u_j + u_{j+1})/2 = f_i
        u.values[0] = f.values[0];
        for (std::size_t i = 1; i <= n; ++i) {
            double rhs = f.values[i];
            for (std::size_t j = 0; j + 1 < i; ++j)
                rhs -= coefficient * W[i - j] * 0.5 * (u.values[j] + u.values[j + 1]);
            rhs -= coefficient * W[1] * 0.5 * u.values[i - 1];
            u.values[i] = rhs / (1.0 + coefficient * W[1] * 0.5);
        }
        return u;
    }

    // first kind: dense solve with the closure row u0 - 3u1 + 3u2 - u3 = 0
    using Idx = Eigen::Index;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(Idx(n + 1), Idx(n + 1));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(Idx(n + 1));
    for (std::size_t i = 1; i <= n; ++i) {
        b(Idx(i)) = f.values[i];
        for (std::size_t j = 0; j < i; ++j) {
            A(Idx(i), Idx(j)) += 0.5 * coefficient * W[i - j];
            A(Idx(i), Idx(j + 1)) += 0.5 * coefficient * W[i - j];
        }
        A(Idx(i), Idx(i)) += eps;
    }
    A(0, 0) = 1.0;
    A(0, 1) = -3.0;
    A(0, 2) = 3.0;
    A(0, 3) = -1.0;
    Eigen::VectorXd sol = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(b);
    for (std::size_t i = 0; i <= n; ++i) u.values[i] = sol(Idx(i));
    return u;
}

}  // namespace fracwear

#include "fracwear/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fracwear {

namespace {

double xlogx(double u) { return u > 0.0 ? u * std::log(u) : 0.0; }

// Second antiderivative of log|u|; used for the double cell average of the
// log kernel: the convolution of two width-h boxes is the triangular hat, and
// int (h-|s|) g(d+s) ds = G(d+h) - 2G(d) + G(d-h) with G'' = g.
double log_antideriv2(double u) {
    if (u == 0.0) return 0.0;
    return 0.5 * u * u * std::log(std::abs(u)) - 0.75 * u * u;
}

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

}  // namespace

KernelSpec KernelSpec::log_kernel(double a, double C_K) {
    KernelSpec k;
    k.kind = Kind::LogKernel;
    k.a = a;
    k.C_K = C_K;
    k.validate();
    return k;
}

KernelSpec KernelSpec::tabulated_kernel(double a, std::function<double(double)> K) {
    KernelSpec k;
    k.kind = Kind::Tabulated;
    k.a = a;
    k.tabulated = std::move(K);
    k.validate();
    return k;
}

void KernelSpec::validate() const {
    if (!(a > 0.0)) throw std::domain_error("KernelSpec: a must be positive");
    if (kind == Kind::LogKernel) {
        if (!(C_K > std::log(a))) throw std::domain_error("KernelSpec: C_K must exceed log a");
        return;
    }
    if (!tabulated) throw std::domain_error("KernelSpec: tabulated kernel callable missing");
    for (double x : {0.3 * a, 0.71 * a, 1.4 * a}) {
        const double l = tabulated(-x), r = tabulated(x);
        if (std::abs(l - r) > 1e-10 * (1.0 + std::abs(r)))
            throw std::domain_error("KernelSpec: tabulated kernel is not even");
    }
}

double QuadratureGrid::integrate(const Eigen::VectorXd& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(Eigen::Index(i));
    return s;
}

double QuadratureGrid::inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        s += weights[i] * f(Eigen::Index(i)) * g(Eigen::Index(i));
    return s;
}

void QuadratureGrid::validate() const {
    if (nodes.empty() || nodes.size() != weights.size())
        throw std::domain_error("QuadratureGrid: inconsistent sizes");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::domain_error("QuadratureGrid: weights must be positive");
        sum += weights[i];
        if (std::abs(nodes[i] + nodes[nodes.size() - 1 - i]) > 1e-12 * a)
            throw std::domain_error("QuadratureGrid: nodes must be symmetric about 0");
    }
    if (std::abs(sum - 2.0 * a) > 1e-12 * 2.0 * a)
        throw std::domain_error("QuadratureGrid: weights must sum to the interval length");
}

double k1_profile(const KernelSpec& kernel, double x) {
    kernel.validate();
    const double a = kernel.a;
    if (!(std::abs(x) < a)) throw std::domain_error("k1_profile: x must lie strictly inside (-a,a)");
    if (kernel.kind == KernelSpec::Kind::LogKernel)
        return 2.0 * a * kernel.C_K + 2.0 * a - xlogx(a - x) - xlogx(a + x);
    // split at zeta = x where a tabulated kernel may peak
    auto f = [&](double zeta) { return kernel.tabulated(zeta - x); };
    return GK::integrate(f, -a, x, 12, 1e-12) + GK::integrate(f, x, a, 12, 1e-12);
}

double c0_constant(const KernelSpec& kernel) {
    kernel.validate();
    const double a = kernel.a;
    if (kernel.kind == KernelSpec::Kind::LogKernel)
        return -2.0 * a * kernel.C_K - 3.0 * a + 2.0 * a * std::log(2.0 * a);
    auto f = [&](double x) { return k1_profile(kernel, x); };
    return -GK::integrate(f, -a, a, 12, 1e-10) / (2.0 * a);
}

Discretization discretize(const KernelSpec& kernel, int N) {
    kernel.validate();
    if (N < 16) throw std::domain_error("discretize: N must be at least 16");
    const double a = kernel.a;
    const double h = 2.0 * a / N;

    Discretization d;
    d.spec = kernel;
    d.grid.a = a;
    d.grid.nodes.resize(N);
    d.grid.weights.assign(N, h);
    for (int i = 0; i < N; ++i) d.grid.nodes[i] = -a + (i + 0.5) * h;

    // kernel cell averages per node gap (the grid is uniform, so entries
    // depend on |i - j| only)
    std::vector<double> m2(N, 0.0);
    if (kernel.kind == KernelSpec::Kind::LogKernel) {
        for (int g = 0; g < N; ++g) {
            const double dist = g * h;
            m2[g] = kernel.C_K - (log_antideriv2(dist + h) - 2.0 * log_antideriv2(dist) +
                                  log_antideriv2(dist - h)) /
                                     (h * h);
        }
    } else {
        boost::math::quadrature::tanh_sinh<double> ts;
        for (int g = 0; g < N; ++g) {
            const double dist = g * h;
            auto f = [&](double s) { return (h - std::abs(s)) * kernel.tabulated(dist + s); };
            double v;
            if (g == 0)
                v = ts.integrate(f, -h, 0.0, 1e-12) + ts.integrate(f, 0.0, h, 1e-12);
            else
                v = GK::integrate(f, -h, h, 12, 1e-12);
            m2[g] = v / (h * h);
        }
    }

    d.A_K.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) d.A_K(i, j) = h * m2[std::abs(i - j)];

    d.k1_cells = d.A_K.rowwise().sum();
    d.c0 = -d.k1_cells.sum() * h / (2.0 * a);

    d.A_K2 = d.A_K;
    const double scale = h / (2.0 * a);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) d.A_K2(i, j) -= scale * (d.k1_cells(i) + d.k1_cells(j));
    return d;
}

}  // namespace fracwear

#include "fracwear/initial_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracwear {

namespace {

// Gauss-Chebyshev (first kind): int_{-a}^{a} f(x)/sqrt(a^2-x^2) dx
double cheb_t_quadrature(const std::function<double(double)>& f, double a, int m) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double theta = (2.0 * j - 1.0) * M_PI / (2.0 * m);
        s += f(a * std::cos(theta));
    }
    return s * M_PI / m;
}

// coefficients of g(a u) = sum_n c_n U_n(u) from Gauss-Chebyshev-U nodes
std::vector<double> cheb_u_coefficients(const std::function<double(double)>& g, double a, int m) {
    std::vector<double> c(std::size_t(m), 0.0);
    for (int j = 1; j <= m; ++j) {
        const double theta = j * M_PI / (m + 1.0);
        const double w = g(a * std::cos(theta)) * std::sin(theta) * 2.0 / (m + 1.0);
        for (int n = 0; n < m; ++n) c[std::size_t(n)] += w * std::sin((n + 1.0) * theta);
    }
    return c;
}

double cheb_t(int n, double u) { return std::cos(n * std::acos(std::clamp(u, -1.0, 1.0))); }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// decay test for the endpoint weight: p0 (a^2-x^2)^{1/4} must stay within a
// factor 10 of its interior median over the outer 5% of the interval
bool classify_square_integrable(const Eigen::VectorXd& p0, const QuadratureGrid& grid) {
    const double a = grid.a;
    std::vector<double> interior, edge;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        const double v = std::abs(p0(Eigen::Index(i))) * std::pow(a * a - x * x, 0.25);
        if (std::abs(x) >= 0.95 * a)
            edge.push_back(v);
        else
            interior.push_back(v);
    }
    if (edge.empty() || interior.empty()) return true;
    const double med = median_of(interior);
    return *std::max_element(edge.begin(), edge.end()) <= 10.0 * std::max(med, 1e-300);
}

}  // namespace

PunchProfile PunchProfile::flat() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, "flat", true};
}

PunchProfile PunchProfile::quadratic(double coeff) {
    return {[coeff](double x) { return coeff * x * x; },
            [coeff](double x) { return 2.0 * coeff * x; }, "quadratic", true};
}

PunchProfile PunchProfile::constant(double offset) {
    return {[offset](double) { return offset; }, [](double) { return 0.0; }, "constant", true};
}

double pv_weighted_hilbert(const std::function<double(double)>& g, double a, double x, int order) {
    const auto c = cheb_u_coefficients(g, a, order);
    // PV int sqrt(1-t^2) U_n(t)/(t-v) dt = -pi T_{n+1}(v)
    const double v = x / a;
    double s = 0.0;
    for (int n = 0; n < order; ++n) s += c[std::size_t(n)] * cheb_t(n + 1, v);
    return -M_PI * a * s;
}

InitialState initial_pressure_eta_zero(const KernelSpec& kernel, const PunchProfile& punch,
                                       double P0, const QuadratureGrid& grid, int cheb_order) {
    kernel.validate();
    if (kernel.kind != KernelSpec::Kind::LogKernel)
        throw std::domain_error("initial_pressure_eta_zero: closed form needs the log kernel");
    if (kernel.a == 2.0)
        throw std::domain_error("initial_pressure_eta_zero: a = 2 is degenerate (log(a/2) = 0)");
    if (!punch.twice_differentiable)
        throw std::invalid_argument("initial_pressure_eta_zero: punch must be twice differentiable");
    if (!(P0 > 0.0)) throw std::domain_error("initial_pressure_eta_zero: P0 must be positive");
    const double a = kernel.a, CK = kernel.C_K, lg = std::log(a / 2.0);

    const auto cu = cheb_u_coefficients(punch.slope, a, cheb_order);
    auto pv = [&](double x) {
        const double v = x / a;
        double s = 0.0;
        for (int n = 0; n < cheb_order; ++n) s += cu[std::size_t(n)] * cheb_t(n + 1, v);
        return -M_PI * a * s;
    };

    const double I1 = cheb_t_quadrature(punch.shape, a, 2 * cheb_order);
    const double J = cheb_t_quadrature(pv, a, 2 * cheb_order);
    const double delta0 = CK * P0 - P0 * lg + I1 / M_PI + lg * J / (M_PI * M_PI);
    const double bracket_const = (I1 + M_PI * (CK * P0 - delta0)) / lg;

    InitialState st;
    st.P0 = P0;
    st.delta0 = delta0;
    st.p0.resize(Eigen::Index(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        st.p0(Eigen::Index(i)) = (pv(x) + bracket_const) / (M_PI * M_PI * std::sqrt(a * a - x * x));
    }
    // the delta0 relation makes the continuum mass equal P0; reproduce it with
    // the same weighted quadrature the formula is built on
    st.mass = (J + (M_PI * I1 + M_PI * M_PI * (CK * P0 - delta0)) / lg) / (M_PI * M_PI);
    st.square_integrable = classify_square_integrable(st.p0, grid);
    return st;
}

InitialState initial_pressure_eta_pos(const Discretization& disc, double eta,
                                      const PunchProfile& punch, double P0) {
    if (!(eta > 0.0)) throw std::domain_error("initial_pressure_eta_pos: eta must be positive");
    if (!(P0 > 0.0)) throw std::domain_error("initial_pressure_eta_pos: P0 must be positive");
    const Eigen::Index N = disc.A_K.rows();
    const double h = disc.grid.cell_width();

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    Eigen::VectorXd b(N + 1);
    A.topLeftCorner(N, N) = disc.A_K;
    A.topLeftCorner(N, N).diagonal().array() += eta;
    A.topRightCorner(N, 1).setConstant(-1.0);
    A.bottomLeftCorner(1, N).setConstant(h);
    for (Eigen::Index i = 0; i < N; ++i) b(i) = -punch.shape(disc.grid.nodes[std::size_t(i)]);
    b(N) = P0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const Eigen::VectorXd sol = lu.solve(b);
    if (!sol.allFinite() || (A * sol - b).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + P0))
        throw std::runtime_error("initial_pressure_eta_pos: augmented system is numerically singular");

    InitialState st;
    st.p0 = sol.head(N);
    st.delta0 = sol(N);
    st.P0 = P0;
    st.mass = h * st.p0.sum();  // exact by the equilibrium row
    st.square_integrable = classify_square_integrable(st.p0, disc.grid);
    return st;
}

InitialState prescribed_initial_profile(double P0, double a, const QuadratureGrid& grid) {
    if (!(P0 > 0.0)) throw std::domain_error("prescribed_initial_profile: P0 must be positive");
    InitialState st;
    st.P0 = P0;
    st.delta0 = 0.0;  // not fixed by this construction
    st.p0.resize(Eigen::Index(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        st.p0(Eigen::Index(i)) = 2.0 * P0 / (a * a * M_PI) * std::sqrt(a * a - x * x);
    }
    st.mass = P0;  // semicircle area
    st.square_integrable = true;
    return st;
}

CoefficientSet project_initial(const InitialState& state, const SpectralBasis& basis, int M,
                               bool override_square_integrable) {
    if (!state.square_integrable && !override_square_integrable)
        throw std::invalid_argument(
            "project_initial: initial pressure is not square integrable; pass the override to "
            "project anyway");
    if (M < 0 || std::size_t(M) > basis.n_modes())
        throw std::domain_error("project_initial: M exceeds the available modes");
    const double a = basis.a;
    const double h = basis.grid.cell_width();

    Eigen::VectorXd q0 = state.p0.array() - state.P0 / (2.0 * a);
    // remove the residual grid mean so the projection target is exactly zero-mean
    q0.array() -= h * q0.sum() / (2.0 * a);

    CoefficientSet cs;
    cs.M = M;
    cs.d0.resize(std::size_t(M));
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(q0.size());
    for (int k = 0; k < M; ++k) {
        cs.d0[std::size_t(k)] = basis.grid.inner(q0, basis.phi.col(k));
        recon += cs.d0[std::size_t(k)] * basis.phi.col(k);
    }
    if (basis.null_vector) cs.d_perp0 = basis.grid.inner(q0, *basis.null_vector);

    const double nq = std::sqrt(basis.grid.inner(q0, q0));
    const Eigen::VectorXd diff = q0 - recon;
    cs.reconstruction_residual = nq > 0.0 ? std::sqrt(basis.grid.inner(diff, diff)) / nq : 0.0;

    double bessel = 0.0;
    for (double d : cs.d0) bessel += d * d;
    if (bessel > nq * nq * (1.0 + 1e-10))
        throw std::runtime_error("project_initial: Bessel inequality violated");
    return cs;
}

}  // namespace fracwear

#ifndef LATVAR_QUADRATURE_HPP
#define LATVAR_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace latvar {

// Gauss-Legendre rule on [-1, 1]; nodes/weights cached per order.
struct GaussLegendre {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
const GaussLegendre& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
auto integrate_gl(F&& f, double a, double b, int n = 16) {
    const GaussLegendre& gl = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    using R = decltype(f(mid));
    R sum = R{};
    for (int i = 0; i < n; ++i)
        sum += static_cast<R>(gl.weights(i) * f(mid + half * gl.nodes(i)));
    return static_cast<R>(half * sum);
}

// Wynn epsilon extrapolation of a sequence of partial sums.
std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& partial_sums);

// Sum of integrals over consecutive panels [b_k, b_{k+1}], k = 0, 1, ...,
// where the panel integrals (eventually) alternate in sign; the divergent-
// looking tail is resummed with Wynn epsilon acceleration. Throws
// NonConvergence if the accelerated estimates fail to settle within abs_tol.
std::complex<double> accelerated_panel_sum(
    const std::function<std::complex<double>(double)>& f,
    const std::function<double(int)>& breakpoint, double abs_tol,
    int max_panels = 4000, int gl_order = 16);

} // namespace latvar

#endif

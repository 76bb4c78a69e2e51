#ifndef LATVAR_SPECTRAL_HPP
#define LATVAR_SPECTRAL_HPP

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "latvar/geometry.hpp"
#include "latvar/interpolation.hpp"

namespace latvar {

// Fourier transform of the indicator, hat I_D(xi). Real for the centered
// symmetric bodies supported here; returned as complex per the interface.
std::complex<double> fourier_indicator(const Shape& shape, const Eigen::VectorXd& xi);

// Sphere average of |hat I_D(rho u)|^2: closed form for balls, adaptive
// sphere quadrature (relative tolerance 1e-8) otherwise.
double spectral_density(const Shape& shape, double rho);

// Spectral density with an optional tabulated cache for bulk evaluation.
class SpectralDensity {
public:
    enum class Mode { ClosedForm, SphereQuadrature };

    explicit SpectralDensity(Shape shape);

    double operator()(double rho) const;
    Mode mode() const { return mode_; }
    const Shape& shape() const { return shape_; }

    // Precompute a sample table on [0, rho_max]; later evaluations inside the
    // range interpolate instead of re-running the sphere quadrature.
    void tabulate(double rho_max, double step);

private:
    Shape shape_;
    Mode mode_;
    std::optional<RadialProfile> cache_;
};

// 2 pi rho^{1-d/2} int_0^inf r^{d/2} J_{d/2-1}(2 pi rho r) f(r) dr.
// Requires tail_exponent < -d when the profile does not vanish at its end.
double hankel_transform(const RadialProfile& f, double rho, int d);

// Tauberian comparison kernel L(u) and the transform hat K_2.
double kernel_L(double u, int d);
std::complex<double> k2hat_closed(double tau, int d);
std::complex<double> k2hat_numeric(double tau, int d);

// hat K_1(tau) = 1 / (1 + 2 pi i tau); exposed for tests.
std::complex<double> k1hat(double tau);

} // namespace latvar

#endif

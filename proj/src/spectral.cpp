#include "latvar/spectral.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/quadrature.hpp"
#include "latvar/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace latvar {

namespace {

double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    }
    return std::sin(z) / z;
}

double tauberian_cd(int d) {
    return std::pow(pi, -1.5) * std::tgamma(0.5 * (d + 1)) / std::tgamma(0.5 * d);
}

} // namespace

std::complex<double> fourier_indicator(const Shape& shape, const Eigen::VectorXd& xi) {
    const int d = shape.dim();
    if (xi.size() != d) throw InvalidInput("fourier_indicator: dimension mismatch");
    switch (shape.kind()) {
        case ShapeKind::Ball:
            return volume(shape) *
                   bessel_j_normalized(0.5 * d, 2.0 * pi * shape.radius() * xi.norm());
        case ShapeKind::Box: {
            double prod = 1.0;
            for (int i = 0; i < d; ++i) {
                const double a = shape.half_extents()(i);
                prod *= 2.0 * a * sinc(2.0 * pi * a * xi(i));
            }
            return prod;
        }
        case ShapeKind::Ellipsoid: {
            const Eigen::VectorXd sxi = shape.semi_axes().asDiagonal() * xi;
            return volume(shape) * bessel_j_normalized(0.5 * d, 2.0 * pi * sxi.norm());
        }
    }
    throw InvalidInput("fourier_indicator: unknown shape");
}

double spectral_density(const Shape& shape, double rho) {
    if (rho < 0.0) throw InvalidInput("spectral_density: rho must be nonnegative");
    const int d = shape.dim();
    const double vol = volume(shape);
    if (rho == 0.0) return vol * vol;
    if (shape.kind() == ShapeKind::Ball) {
        const double v =
            vol * bessel_j_normalized(0.5 * d, 2.0 * pi * shape.radius() * rho);
        return v * v;
    }
    if (d == 1) {
        Eigen::VectorXd xi(1);
        xi(0) = rho;
        const double v = fourier_indicator(shape, xi).real();
        return v * v;
    }
    // oscillation scale on the sphere grows like rho * diameter
    const int initial = std::min(
        8192, 64 + 8 * static_cast<int>(std::ceil(rho * bounding_radius(shape))));
    return sphere_average(
        d,
        [&](const Eigen::VectorXd& u) {
            const double v = fourier_indicator(shape, rho * u).real();
            return v * v;
        },
        1e-14 * vol * vol, 1e-8, initial);
}

SpectralDensity::SpectralDensity(Shape shape)
    : shape_(std::move(shape)),
      mode_(shape_.kind() == ShapeKind::Ball ? Mode::ClosedForm
                                             : Mode::SphereQuadrature) {}

double SpectralDensity::operator()(double rho) const {
    if (rho < 0.0) throw InvalidInput("SpectralDensity: rho must be nonnegative");
    if (cache_ && rho <= cache_->t_last()) return (*cache_)(rho);
    return spectral_density(shape_, rho);
}

void SpectralDensity::tabulate(double rho_max, double step) {
    if (!(step > 0.0) || !(rho_max > step))
        throw InvalidInput("SpectralDensity::tabulate: need 0 < step < rho_max");
    if (mode_ == Mode::ClosedForm) return;  // closed form is already cheap
    const int n = static_cast<int>(std::ceil(rho_max / step)) + 1;
    Eigen::VectorXd t(n), v(n);
    for (int i = 0; i < n; ++i) {
        t(i) = i * step;
        v(i) = spectral_density(shape_, t(i));
    }
    cache_.emplace(std::move(t), std::move(v),
                   -static_cast<double>(shape_.dim() + 1));
}

double hankel_transform(const RadialProfile& f, double rho, int d) {
    if (d < 1 || d > 3) throw InvalidInput("hankel_transform: d must be 1, 2 or 3");
    if (!(rho > 0.0)) throw InvalidInput("hankel_transform: rho must be positive");
    if (f.back() != 0.0 && f.tail_exponent() >= -static_cast<double>(d))
        throw SlowDecay("hankel_transform: profile tail is not integrable");
    const double nu = 0.5 * d - 1.0;
    const double w = 2.0 * pi * rho;
    auto integrand = [&](double r) {
        return std::pow(r, 0.5 * d) * bessel_j(nu, w * r) * f(r);
    };
    const double t_last = f.t_last();

    // panel breakpoints: Bessel oscillation nodes merged with a uniform grid
    // so panels also resolve the profile itself
    std::vector<double> bp;
    bp.push_back(0.0);
    for (int k = 1;; ++k) {
        const double z = bessel_zero(nu, k) / w;
        if (z >= t_last) break;
        bp.push_back(z);
    }
    // enough uniform panels that each spans only a few samples; long finely
    // sampled profiles (e.g. oscillatory spectral densities) need more than
    // a fixed count
    const int uniform = std::clamp(static_cast<int>(f.abscissae().size() / 3),
                                   64, 16384);
    for (int i = 1; i < uniform; ++i)
        bp.push_back(t_last * i / static_cast<double>(uniform));
    bp.push_back(t_last);
    std::sort(bp.begin(), bp.end());
    long double main = 0.0L;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        if (bp[i + 1] - bp[i] < 1e-14 * t_last) continue;
        main += static_cast<long double>(
            integrate_gl(integrand, bp[i], bp[i + 1], 16));
    }

    double tail = 0.0;
    if (f.back() != 0.0) {
        // power-law extension beyond the last sample. The stretch up to the
        // first Bessel zero is a plain decaying integral; summing it with
        // geometric panels before the accelerated oscillatory sum keeps the
        // extrapolation from settling below the oscillation scale 1/w.
        int k0 = 1;
        while (bessel_zero(nu, k0) / w <= t_last) ++k0;
        const double first = bessel_zero(nu, k0) / w;
        long double pre = 0.0L;
        double a = t_last;
        while (a < first) {
            const double b = std::min(first, a * 1.25);
            pre += static_cast<long double>(integrate_gl(integrand, a, b, 16));
            a = b;
        }
        tail = static_cast<double>(pre) +
               accelerated_panel_sum(
                   [&](double r) -> std::complex<double> { return integrand(r); },
                   [&](int k) {
                       return k == 0 ? first : bessel_zero(nu, k0 + k) / w;
                   },
                   1e-9 * std::max(std::abs(f.front()), 1e-30))
                   .real();
    }
    return 2.0 * pi * std::pow(rho, 1.0 - 0.5 * d) *
           (static_cast<double>(main) + tail);
}

double kernel_L(double u, int d) {
    if (d < 1 || d > 3) throw InvalidInput("kernel_L: d must be 1, 2 or 3");
    if (u < 0.0) throw InvalidInput("kernel_L: u must be nonnegative");
    return tauberian_cd(d) *
           (1.0 - bessel_j_normalized(0.5 * d - 1.0, 2.0 * pi * u));
}

std::complex<double> k1hat(double tau) {
    return 1.0 / std::complex<double>(1.0, 2.0 * pi * tau);
}

std::complex<double> k2hat_closed(double tau, int d) {
    if (d < 1 || d > 3) throw InvalidInput("k2hat_closed: d must be 1, 2 or 3");
    const std::complex<double> i2pt(0.0, 2.0 * pi * tau);
    const std::complex<double> ipt(0.0, pi * tau);
    const std::complex<double> pref =
        std::exp(-(0.5 + i2pt) * std::log(pi)) / (1.0 - i2pt);
    return pref * std::tgamma(0.5 * (d + 1)) * complex_gamma(0.5 + ipt) /
           complex_gamma(0.5 * (d + 1) - ipt);
}

std::complex<double> k2hat_numeric(double tau, int d) {
    if (d < 1 || d > 3) throw InvalidInput("k2hat_numeric: d must be 1, 2 or 3");
    const double nu = 0.5 * d - 1.0;
    const double cd = tauberian_cd(d);
    const std::complex<double> i2pt(0.0, 2.0 * pi * tau);

    // [0, 1]: termwise integration of the normalized Bessel series
    std::complex<double> series = 0.0;
    double coef = 1.0;
    double sign = 1.0;
    for (int k = 1; k <= 80; ++k) {
        coef *= pi * pi / (k * (nu + k));
        series += sign * coef / (2.0 * k - 1.0 + i2pt);
        sign = -sign;
        if (k > 12 && coef < 1e-18) break;
    }

    // [1, inf): oscillatory Bessel integral, panels between J_nu zeros
    const double w = 2.0 * pi;
    int k0 = 1;
    while (bessel_zero(nu, k0) / w <= 1.0) ++k0;
    const std::complex<double> tail = accelerated_panel_sum(
        [&](double u) {
            return std::exp((-2.0 + i2pt) * std::log(u)) *
                   bessel_j_normalized(nu, w * u);
        },
        [&](int k) { return k == 0 ? 1.0 : bessel_zero(nu, k0 + k - 1) / w; },
        1e-10);

    return cd * (series + 1.0 / (1.0 - i2pt) - tail);
}

} // namespace latvar

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/geometry.hpp"
#include "latvar/rng.hpp"
#include "latvar/spectral.hpp"

#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace latvar;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<long>(v.size()));
    int i = 0;
    for (double c : v) x(i++) = c;
    return x;
}

} // namespace

TEST_CASE("fourier indicator") {
    for (const Shape& s : {Shape::ball(3, 1.2), Shape::box(vec({0.5, 0.3})),
                           Shape::ellipsoid(vec({1.0, 2.0}))}) {
        Eigen::VectorXd zero = Eigen::VectorXd::Zero(s.dim());
        CHECK(fourier_indicator(s, zero).real() ==
              doctest::Approx(volume(s)).epsilon(1e-14));
    }
    // interval [-1/2, 1/2]: sinc with zeros at nonzero integers
    const Shape interval = Shape::box(vec({0.5}));
    CHECK(fourier_indicator(interval, vec({0.5})).real() ==
          doctest::Approx(std::sin(0.5 * pi) / (0.5 * pi)).epsilon(1e-14));
    for (double k : {1.0, 2.0, 7.0})
        CHECK(std::abs(fourier_indicator(interval, vec({k}))) < 1e-15);
    // unit ball d=3 against an independent slice-integral quadrature
    const Shape ball = Shape::ball(3, 1.0);
    for (double rho : {0.35, 1.0, 2.6})
        CHECK(fourier_indicator(ball, vec({0.0, 0.0, rho})).real() ==
              doctest::Approx(oracle::ball3_fourier_quadrature(rho)).epsilon(1e-8));
}

TEST_CASE("spectral density") {
    const Shape ball = Shape::ball(2, 1.0);
    for (double rho : {0.3, 1.7})
        CHECK(spectral_density(ball, rho) ==
              doctest::Approx(std::norm(fourier_indicator(ball, vec({rho, 0.0}))))
                  .epsilon(1e-13));
    for (const Shape& s : {Shape::ball(3, 0.8), Shape::box(vec({0.5, 0.5})),
                           Shape::ellipsoid(vec({0.5, 1.5, 1.0}))})
        CHECK(spectral_density(s, 0.0) ==
              doctest::Approx(volume(s) * volume(s)).epsilon(1e-12));

    // unit square at rho = 2 against MC direction sampling
    const Shape square = Shape::box(vec({0.5, 0.5}));
    std::mt19937_64 rng = make_stream(19, 0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double phi = ang(rng);
        const double v =
            std::norm(fourier_indicator(square, vec({2.0 * std::cos(phi),
                                                     2.0 * std::sin(phi)})));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / (n - 1.0));
    CHECK(std::abs(spectral_density(square, 2.0) - mean) < 3.0 * se);

    // nonnegativity on a grid
    for (double rho = 0.0; rho <= 12.0; rho += 0.37)
        CHECK(spectral_density(square, rho) >= 0.0);
}

TEST_CASE("SpectralDensity cache") {
    SpectralDensity dens(Shape::box(vec({0.5, 0.5})));
    CHECK(dens.mode() == SpectralDensity::Mode::SphereQuadrature);
    const double direct = dens(1.3);
    dens.tabulate(4.0, 0.01);
    CHECK(dens(1.3) == doctest::Approx(direct).epsilon(1e-8));
    SpectralDensity ball(Shape::ball(2, 1.0));
    CHECK(ball.mode() == SpectralDensity::Mode::ClosedForm);
}

TEST_CASE("hankel transform") {
    // Gaussian self-transform at rho = 1, d = 2
    {
        const int n = 2400;
        Eigen::VectorXd t(n), v(n);
        for (int i = 0; i < n; ++i) {
            t(i) = 7.0 * i / (n - 1.0);
            v(i) = std::exp(-pi * t(i) * t(i));
        }
        v(n - 1) = 0.0;  // ~1e-67; cut so no power tail is attached
        const RadialProfile f(t, v, -8.0);
        CHECK(std::abs(hankel_transform(f, 1.0, 2) - std::exp(-pi)) < 1e-9);
    }
    // covariogram of the unit interval -> sinc^2
    {
        const int n = 2001;
        Eigen::VectorXd t(n), v(n);
        for (int i = 0; i < n; ++i) {
            t(i) = i / (n - 1.0);
            v(i) = 1.0 - t(i);
        }
        const RadialProfile f(t, v, 0.0);
        for (double rho : {0.4, 1.3}) {
            const double sinc = std::sin(pi * rho) / (pi * rho);
            CHECK(std::abs(hankel_transform(f, rho, 1) - sinc * sinc) < 1e-9);
        }
    }
    // decay guard
    {
        Eigen::VectorXd t(3), v(3);
        t << 0.5, 1.0, 2.0;
        v << 1.0, 0.5, 0.25;
        CHECK_THROWS_AS((void)hankel_transform(RadialProfile(t, v, -1.5), 1.0, 2),
                        SlowDecay);
    }
}

TEST_CASE("hankel of the ball covariogram equals the spectral density") {
    const Shape ball = Shape::ball(2, 1.0);
    const int n = 2001;
    Eigen::VectorXd t(n), v(n);
    for (int i = 0; i < n; ++i) {
        t(i) = 2.0 * i / (n - 1.0);
        v(i) = isotropic_covariogram(ball, t(i));
    }
    const RadialProfile f(t, v, 0.0);
    for (double rho : {0.5, 1.0, 2.2})
        CHECK(hankel_transform(f, rho, 2) ==
              doctest::Approx(spectral_density(ball, rho)).epsilon(1e-6));
}

TEST_CASE("kernel L") {
    for (int d : {1, 2, 3}) CHECK(kernel_L(0.0, d) == doctest::Approx(0.0));
    const double c3 = std::pow(pi, -1.5) * std::tgamma(2.0) / std::tgamma(1.5);
    CHECK(kernel_L(50.0, 3) == doctest::Approx(c3).epsilon(1e-3));
    // d=1 reduces to the cosine form
    for (double u : {0.1, 0.8, 2.3}) {
        const double direct = std::pow(pi, -1.5) / std::tgamma(0.5) *
                              (1.0 - std::cos(2.0 * pi * u));
        CHECK(kernel_L(u, 1) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("K2-hat closed and numeric") {
    for (int d : {1, 2, 3}) {
        CHECK(k2hat_closed(0.0, d).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(k2hat_closed(0.0, d).imag()) < 1e-12);
        CHECK(std::abs(k2hat_numeric(0.0, d) - 1.0) < 1e-6);
        // Hermitian symmetry
        const std::complex<double> p = k2hat_closed(0.7, d);
        const std::complex<double> m = k2hat_closed(-0.7, d);
        CHECK(p.real() == doctest::Approx(m.real()).epsilon(1e-13));
        CHECK(p.imag() == doctest::Approx(-m.imag()).epsilon(1e-13));
    }
    CHECK(std::abs(k2hat_numeric(0.25, 3) - k2hat_closed(0.25, 3)) < 1e-6);
    CHECK(std::abs(k2hat_numeric(0.5, 2) - k2hat_closed(0.5, 2)) < 1e-6);
    // no real root on [-5, 5]
    double min_abs = 1e300;
    for (double tau = -5.0; tau <= 5.0; tau += 0.01)
        min_abs = std::min(min_abs, std::abs(k2hat_closed(tau, 2)));
    CHECK(min_abs > 1e-8);
}

TEST_CASE("Psi Cesaro mean for the ball (standing decay hypothesis)") {
    // running mean of 2 pi^2 kappa_{d-1} rho^{d+1} density / (-gamma'(0))
    // tends to 1; check at rho = 200 within 2%
    for (int d : {2, 3}) {
        const Shape ball = Shape::ball(d, 1.0);
        const double pref =
            2.0 * pi * pi * unit_ball_volume(d - 1) / (-gamma_prime_zero(ball));
        const double step = 0.005;
        double acc = 0.0;
        for (double rho = step; rho <= 200.0; rho += step)
            acc += pref * std::pow(rho, d + 1) * spectral_density(ball, rho) * step;
        CHECK(acc / 200.0 == doctest::Approx(1.0).epsilon(0.02));
    }
}

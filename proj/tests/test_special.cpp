#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/special.hpp"

#include <cmath>
#include <complex>

using namespace latvar;

TEST_CASE("bessel J closed forms and fixed references") {
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel_j(0.5, 1.0) ==
          doctest::Approx(std::sqrt(2.0 / pi) * std::sin(1.0)).epsilon(1e-12));
    CHECK(bessel_j(-0.5, 2.0) ==
          doctest::Approx(std::sqrt(1.0 / pi) * std::cos(2.0)).epsilon(1e-12));
    // fixed high-precision references, one per evaluation regime
    CHECK(bessel_j(0.0, 5.0) == doctest::Approx(-0.17759677131433830).epsilon(1e-12));
    CHECK(bessel_j(0.0, 10.0) == doctest::Approx(-0.24593576445134834).epsilon(1e-12));
    CHECK(bessel_j(0.0, 24.9) == doctest::Approx(0.083245968353015682).epsilon(1e-11));
    CHECK(bessel_j(0.0, 25.1) == doctest::Approx(0.10827567149994929).epsilon(1e-11));
    CHECK(bessel_j(0.0, 300.0) == doctest::Approx(-0.033298554876305668).epsilon(1e-11));
    CHECK(bessel_j(1.0, 1.0) == doctest::Approx(0.44005058574493352).epsilon(1e-12));
    CHECK(bessel_j(1.0, 10.0) == doctest::Approx(0.043472746168861437).epsilon(1e-11));
    CHECK(bessel_j(1.0, 50.0) == doctest::Approx(-0.097511828125175138).epsilon(1e-11));
    CHECK(bessel_j(1.5, 0.3) == doctest::Approx(0.043309881918378323).epsilon(1e-12));
    CHECK(bessel_j(1.5, 10.0) == doctest::Approx(0.19798249275589310).epsilon(1e-12));
    CHECK(bessel_j(1.5, 2.0 * pi) == doctest::Approx(-1.0 / pi).epsilon(1e-13));
}

TEST_CASE("first zero of J_1 by bisection on the implementation") {
    double lo = 3.0, hi = 4.5;
    REQUIRE(bessel_j(1.0, lo) > 0.0);
    REQUIRE(bessel_j(1.0, hi) < 0.0);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bessel_j(1.0, mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(3.8317059702).epsilon(1e-9));
}

TEST_CASE("normalized bessel and McMahon zeros") {
    CHECK(bessel_j_normalized(1.0, 0.0) == doctest::Approx(1.0));
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 1.5})
        for (double z : {0.3, 2.0, 13.0}) {
            const double lhs = bessel_j_normalized(nu, z) * std::pow(0.5 * z, nu) /
                               std::tgamma(nu + 1.0);
            CHECK(lhs == doctest::Approx(bessel_j(nu, z)).epsilon(1e-11));
        }
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 1.5})
        for (int k : {1, 3, 10})
            CHECK(std::abs(bessel_j(nu, bessel_zero(nu, k))) < 2e-3);
}

TEST_CASE("complex gamma") {
    CHECK(complex_gamma({0.5, 0.0}).real() ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK(complex_gamma({1.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(complex_gamma({1.0, 0.0}).imag() == doctest::Approx(0.0));
    // |Gamma(1/2 + i)|^2 = pi / cosh(pi)
    CHECK(std::norm(complex_gamma({0.5, 1.0})) ==
          doctest::Approx(pi / std::cosh(pi)).epsilon(1e-10));
    CHECK(complex_gamma({5.0, 0.0}).real() == doctest::Approx(24.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)complex_gamma({0.0, 0.0}), PoleAt);
    CHECK_THROWS_AS((void)complex_gamma({-3.0, 0.0}), PoleAt);
}

TEST_CASE("upper incomplete gamma, including negative a") {
    CHECK(upper_incomplete_gamma(0.5, 2.0) ==
          doctest::Approx(0.080647117960317691).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(-0.5, 1.0) ==
          doctest::Approx(0.17814771178156069).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(-1.5, 0.25) ==
          doctest::Approx(3.2099912056303212).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(2.5, 7.0) ==
          doctest::Approx(0.020750227257978492).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(1.0, 3.0) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("Carlson symmetric integrals") {
    CHECK(carlson_rf(1.0, 2.0, 4.0) ==
          doctest::Approx(0.68508581663343318).epsilon(1e-12));
    CHECK(carlson_rd(1.0, 2.0, 4.0) ==
          doctest::Approx(0.21838072549338965).epsilon(1e-12));
    CHECK(carlson_rg(1.0, 2.0, 4.0) ==
          doctest::Approx(1.5053442983667505).epsilon(1e-12));
    CHECK(carlson_rf(0.0, 1.0, 1.0) == doctest::Approx(0.5 * pi).epsilon(1e-12));
    CHECK(carlson_rg(1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // circle as a degenerate ellipse: 8 R_G(1, 1, 0) = 2 pi
    CHECK(8.0 * carlson_rg(1.0, 1.0, 0.0) == doctest::Approx(2.0 * pi).epsilon(1e-12));
    // ellipse a=2, b=1 perimeter
    CHECK(8.0 * carlson_rg(4.0, 1.0, 0.0) ==
          doctest::Approx(9.6884482205476762).epsilon(1e-12));
}

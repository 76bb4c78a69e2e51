#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/lattice.hpp"
#include "latvar/rng.hpp"

#include <Eigen/Dense>

#include "oracles.hpp"

#include <cmath>

using namespace latvar;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<long>(v.size()));
    int i = 0;
    for (double c : v) x(i++) = c;
    return x;
}

} // namespace

TEST_CASE("lattice construction and duals") {
    const Lattice z2 = Lattice::integer(2);
    CHECK(z2.intensity() == doctest::Approx(1.0));
    CHECK((z2.dual_generator() - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

    const Lattice l = Lattice::from_generator(diag2(1.0, 2.0));
    CHECK(l.intensity() == doctest::Approx(0.5));
    CHECK(l.dual_generator()(0, 0) == doctest::Approx(1.0));
    CHECK(l.dual_generator()(1, 1) == doctest::Approx(0.5));
    CHECK((l.generator().transpose() * l.dual_generator() -
           Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(l.intensity() * l.determinant() == doctest::Approx(1.0).epsilon(1e-14));

    const Lattice l3 = Lattice::from_generator(2.0 * Eigen::MatrixXd::Identity(3, 3));
    CHECK(l3.intensity() == doctest::Approx(0.125));

    CHECK_THROWS_AS(Lattice::from_generator(Eigen::MatrixXd::Zero(2, 2)),
                    SingularGenerator);
}

TEST_CASE("fundamental cell sampling") {
    const Lattice l = Lattice::from_generator(diag2(1.0, 2.0));
    std::mt19937_64 rng = make_stream(3, 0);
    const int n = 100000;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd x = sample_fundamental_cell(l, rng);
        const Eigen::VectorXd u = l.generator().inverse() * x;
        REQUIRE(u.minCoeff() >= 0.0);
        REQUIRE(u.maxCoeff() < 1.0);
        mean += x;
    }
    mean /= n;
    // CLT: component i has sd = a_i / sqrt(12 n)
    CHECK(std::abs(mean(0) - 0.5) < 3.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(mean(1) - 1.0) < 6.0 / std::sqrt(12.0 * n));
}

TEST_CASE("count_points") {
    const Lattice z2 = Lattice::integer(2);
    const Rotation id2 = Rotation::identity(2);
    CHECK(count_points(z2, Shape::ball(2, 1.0), 1.5, id2, vec({0.0, 0.0})) == 9);
    const Lattice z3 = Lattice::integer(3);
    CHECK(count_points(z3, Shape::box(vec({0.5, 0.5, 0.5})), 1.0,
                       Rotation::identity(3),
                       vec({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)})) == 1);
    CHECK(count_points(z2, Shape::ball(2, 1.0), 1e-6, id2,
                       vec({0.5, 0.5})) == 0);
    // boundary contact with the closed convention: cube centered on a point
    CHECK(count_points(z2, Shape::box(vec({0.5, 0.5})), 1.0, id2,
                       vec({0.5, 0.5})) == 4);
}

TEST_CASE("count_points invariant under unimodular relabeling") {
    Eigen::MatrixXd u(2, 2);
    u << 1.0, 1.0, 0.0, 1.0;  // det 1
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 0.25, 0.0, 1.0;
    const Lattice l1 = Lattice::from_generator(a);
    const Lattice l2 = Lattice::from_generator(a * u);
    std::mt19937_64 rng = make_stream(5, 0);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd x = sample_fundamental_cell(l1, rng);
        const Rotation m = random_rotation(2, rng);
        for (double r : {0.7, 1.9}) {
            CHECK(count_points(l1, Shape::ball(2, 1.0), r, m, x) ==
                  count_points(l2, Shape::ball(2, 1.0), r, m, x));
        }
    }
}

TEST_CASE("dual point enumeration") {
    const Lattice z1 = Lattice::integer(1);
    const auto p1 = dual_points_in_ball(z1, 2.5);
    REQUIRE(p1.size() == 4);  // +-1, +-2
    CHECK(std::abs(p1[0](0)) == doctest::Approx(1.0));
    CHECK(std::abs(p1[2](0)) == doctest::Approx(2.0));

    const auto p2 = dual_points_in_ball(Lattice::integer(2), 1.0);
    CHECK(p2.size() == 4);

    const auto p3 = dual_points_in_ball(Lattice::from_generator(diag2(1.0, 2.0)), 0.6);
    REQUIRE(p3.size() == 2);
    CHECK(p3[0].norm() == doctest::Approx(0.5));

    // closed under negation
    for (const auto& xi : p2) {
        bool found = false;
        for (const auto& eta : p2)
            if ((xi + eta).norm() < 1e-14) found = true;
        CHECK(found);
    }
}

TEST_CASE("epstein sums") {
    const LatticeSum z1 = epstein_sum(Lattice::integer(1), 2.0);
    CHECK(z1.value == doctest::Approx(pi * pi / 3.0).epsilon(1e-13));
    CHECK(z1.tail_bound < 1e-12);

    const LatticeSum z2 = epstein_sum(Lattice::integer(2), 3.0);
    CHECK(z2.value ==
          doctest::Approx(4.0 * oracle::zeta(1.5) * oracle::dirichlet_beta(1.5))
              .epsilon(1e-10));

    // homogeneity under scaling of the generator
    const LatticeSum base = epstein_sum(Lattice::integer(2), 3.0);
    const LatticeSum scaled =
        epstein_sum(Lattice::from_generator(2.0 * Eigen::MatrixXd::Identity(2, 2)), 3.0);
    CHECK(scaled.value == doctest::Approx(8.0 * base.value).epsilon(1e-12));

    CHECK_THROWS_AS((void)epstein_sum(Lattice::integer(2), 2.0), DivergentExponent);
}

TEST_CASE("epstein shell summation cross-check") {
    struct Case {
        Lattice lat;
        double s, tol;
    };
    const Case cases[] = {
        {Lattice::integer(1), 2.0, 1e-6},
        {Lattice::integer(2), 3.0, 1e-2},
        {Lattice::integer(3), 4.0, 3e-1},
        {Lattice::from_generator(diag2(1.0, 2.0)), 3.0, 2e-2},
    };
    for (const auto& c : cases) {
        const LatticeSum fast = epstein_sum(c.lat, c.s);
        const LatticeSum shell = epstein_sum_shells(c.lat, c.s, c.tol);
        CHECK(std::abs(fast.value - shell.value) <=
              shell.tail_bound + fast.tail_bound);
    }
    CHECK_THROWS_AS((void)epstein_sum_shells(Lattice::integer(3), 4.0, 1e-9),
                    TailBoundFailure);
}

TEST_CASE("lattice constant") {
    CHECK(lattice_constant(Lattice::integer(1)) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(lattice_constant(Lattice::integer(2)) ==
          doctest::Approx(oracle::zeta(1.5) * oracle::dirichlet_beta(1.5) /
                          std::pow(pi, 3))
              .epsilon(1e-10));
    // homogeneity: c Z^d scales by c^{d+1}
    const double c2 = lattice_constant(
        Lattice::from_generator(2.0 * Eigen::MatrixXd::Identity(2, 2)));
    CHECK(c2 == doctest::Approx(8.0 * lattice_constant(Lattice::integer(2)))
                    .epsilon(1e-12));
}

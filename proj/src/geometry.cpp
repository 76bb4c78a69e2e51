#include "latvar/geometry.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/quadrature.hpp"
#include "latvar/special.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace latvar {

Shape::Shape(ShapeKind kind, int dim, Eigen::VectorXd params)
    : kind_(kind), dim_(dim), params_(std::move(params)) {
    if (dim_ < 1 || dim_ > 3) throw InvalidInput("shape dimension must be 1, 2 or 3");
    if ((params_.array() <= 0.0).any())
        throw InvalidInput("shape size parameters must be strictly positive");
}

Shape Shape::ball(int dim, double radius) {
    return Shape(ShapeKind::Ball, dim, Eigen::VectorXd::Constant(1, radius));
}

Shape Shape::box(const Eigen::VectorXd& half_extents) {
    return Shape(ShapeKind::Box, static_cast<int>(half_extents.size()), half_extents);
}

Shape Shape::ellipsoid(const Eigen::VectorXd& semi_axes) {
    return Shape(ShapeKind::Ellipsoid, static_cast<int>(semi_axes.size()), semi_axes);
}

Rotation::Rotation(Eigen::MatrixXd m) : m_(std::move(m)) {
    const int d = static_cast<int>(m_.rows());
    if (m_.cols() != d) throw InvalidInput("rotation matrix must be square");
    const double ortho = (m_.transpose() * m_ - Eigen::MatrixXd::Identity(d, d))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-12) throw InvalidInput("rotation matrix is not orthogonal");
    if (std::abs(m_.determinant() - 1.0) > 1e-12)
        throw InvalidInput("rotation matrix must have determinant +1");
}

Rotation Rotation::identity(int dim) {
    return Rotation(Eigen::MatrixXd::Identity(dim, dim));
}

double volume(const Shape& shape) {
    const int d = shape.dim();
    switch (shape.kind()) {
        case ShapeKind::Ball:
            return unit_ball_volume(d) * std::pow(shape.radius(), d);
        case ShapeKind::Box:
            return (2.0 * shape.half_extents().array()).prod();
        case ShapeKind::Ellipsoid:
            return unit_ball_volume(d) * shape.semi_axes().prod();
    }
    return 0.0;
}

double surface_measure(const Shape& shape) {
    const int d = shape.dim();
    switch (shape.kind()) {
        case ShapeKind::Ball:
            return d * unit_ball_volume(d) * std::pow(shape.radius(), d - 1);
        case ShapeKind::Box: {
            const auto& a = shape.half_extents();
            if (d == 1) return 2.0;
            if (d == 2) return 4.0 * (a(0) + a(1));
            return 8.0 * (a(0) * a(1) + a(0) * a(2) + a(1) * a(2));
        }
        case ShapeKind::Ellipsoid: {
            const auto& s = shape.semi_axes();
            if (d == 1) return 2.0;
            if (d == 2) return 8.0 * carlson_rg(s(0) * s(0), s(1) * s(1), 0.0);
            const double a = s(0), b = s(1), c = s(2);
            return 4.0 * pi * carlson_rg(a * a * b * b, a * a * c * c, b * b * c * c);
        }
    }
    return 0.0;
}

double bounding_radius(const Shape& shape) {
    switch (shape.kind()) {
        case ShapeKind::Ball:
            return shape.radius();
        case ShapeKind::Box:
            return shape.half_extents().norm();
        case ShapeKind::Ellipsoid:
            return shape.semi_axes().maxCoeff();
    }
    return 0.0;
}

namespace {

// Overlap volume of two unit balls at distance t (d in {1,2,3}).
double unit_ball_cov(int d, double t) {
    if (t >= 2.0) return 0.0;
    if (d == 1) return 2.0 - t;
    if (d == 2) return 2.0 * std::acos(0.5 * t) - 0.5 * t * std::sqrt(4.0 - t * t);
    return (4.0 * pi / 3.0) * (1.0 - 0.75 * t + t * t * t / 16.0);
}

} // namespace

double covariogram(const Shape& shape, const Eigen::VectorXd& x) {
    const int d = shape.dim();
    if (x.size() != d) throw InvalidInput("covariogram: dimension mismatch");
    switch (shape.kind()) {
        case ShapeKind::Ball: {
            const double r = shape.radius();
            return std::pow(r, d) * unit_ball_cov(d, x.norm() / r);
        }
        case ShapeKind::Box: {
            const Eigen::ArrayXd g =
                (2.0 * shape.half_extents().array() - x.array().abs()).max(0.0);
            return g.prod();
        }
        case ShapeKind::Ellipsoid: {
            const auto& s = shape.semi_axes();
            const double t = (x.array() / s.array()).matrix().norm();
            return s.prod() * unit_ball_cov(d, t);
        }
    }
    return 0.0;
}

double sphere_average(int dim, const std::function<double(const Eigen::VectorXd&)>& f,
                      double abs_tol, double rel_tol, int initial_nodes) {
    if (dim == 1) {
        Eigen::VectorXd u(1);
        u(0) = 1.0;
        const double a = f(u);
        u(0) = -1.0;
        return 0.5 * (a + f(u));
    }
    double prev = 0.0;
    bool have_prev = false;
    for (int n = initial_nodes; n <= 16384; n *= 2) {
        double est = 0.0;
        if (dim == 2) {
            Eigen::VectorXd u(2);
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double th = 2.0 * pi * i / n;
                u(0) = std::cos(th);
                u(1) = std::sin(th);
                sum += f(u);
            }
            est = sum / n;
        } else {
            // Gauss-Legendre in cos(theta), periodic trapezoid in phi.
            const GaussLegendre& gl = gauss_legendre(n);
            const int nphi = 2 * n;
            Eigen::VectorXd u(3);
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double mu = gl.nodes(i);
                const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                double row = 0.0;
                for (int j = 0; j < nphi; ++j) {
                    const double phi = 2.0 * pi * j / nphi;
                    u(0) = s * std::cos(phi);
                    u(1) = s * std::sin(phi);
                    u(2) = mu;
                    row += f(u);
                }
                sum += gl.weights(i) * row / nphi;
            }
            est = 0.5 * sum;
        }
        if (have_prev &&
            std::abs(est - prev) < std::max(abs_tol, rel_tol * std::abs(est)))
            return est;
        prev = est;
        have_prev = true;
    }
    return prev;
}

double unit_square_isotropic_covariogram(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= std::sqrt(2.0)) return 0.0;
    if (t <= 1.0) return 1.0 - 4.0 * t / pi + t * t / pi;
    const double rt = std::sqrt(t * t - 1.0);
    return (2.0 / pi) *
           (0.5 * pi - 2.0 * std::acos(1.0 / t) - 1.0 + 2.0 * rt - 0.5 * t * t);
}

namespace {

// Antiderivative assembly for the unit-cube branches (t > 1); see the
// accompanying tests for numerical validation against sphere quadrature.
double cube_branch_integral(double t, double lo, double hi, bool hi_at_mustar) {
    const double t2 = t * t;
    auto sq = [&](double m) {
        return std::sqrt(std::max(0.0, t2 * (1.0 - m * m) - 1.0));
    };
    auto ac = [&](double m) {
        const double s = std::sqrt(std::max(0.0, 1.0 - m * m));
        return std::acos(std::min(1.0, 1.0 / (t * s)));
    };
    auto T1 = [&](double m) { return m - 0.5 * t * m * m; };
    auto T2 = [&](double m) {
        return m - m * m * m / 3.0 - t * (0.5 * m * m - 0.25 * m * m * m * m);
    };
    auto T3 = [&](double m) {
        const double arg = std::min(1.0, m * t / std::sqrt(t2 - 1.0));
        return (m * t * sq(m) + (t2 - 1.0) * std::asin(arg)) / (2.0 * t);
    };
    auto T3b = [&](double m) { return (t2 * (m * m - 1.0) + 1.0) * sq(m) / (3.0 * t2); };
    auto T4 = [&](double m) {
        const double x = t2 - 1.0 - t2 * m * m;
        const double at = x <= 0.0 ? 0.5 * pi : std::atan(m / std::sqrt(x));
        const double as = std::asin(std::min(1.0, t * m / std::sqrt(t2 - 1.0)));
        return m * ac(m) - as / t + at;
    };
    auto T5 = [&](double m) { return -0.5 * ((1.0 - m * m) * ac(m) - sq(m) / t2); };
    // At m = mu* = sqrt(1 - 1/t^2) the radicals vanish identically; the
    // rounded arguments would otherwise contribute sqrt(eps) ~ 1e-8 noise,
    // which the large-r variance cancellation amplifies. Use exact limits.
    const double t3_hi = hi_at_mustar ? (t2 - 1.0) * 0.25 * pi / t : T3(hi);
    const double t3b_hi = hi_at_mustar ? 0.0 : T3b(hi);
    const double t4_hi = hi_at_mustar ? 0.5 * pi - 0.5 * pi / t : T4(hi);
    const double t5_hi = hi_at_mustar ? 0.0 : T5(hi);
    double r = (0.5 * pi - 1.0) * (T1(hi) - T1(lo));
    r += -2.0 * ((t4_hi - T4(lo)) - t * (t5_hi - T5(lo)));
    r += 2.0 * ((t3_hi - T3(lo)) - t * (t3b_hi - T3b(lo)));
    r += -0.5 * t2 * (T2(hi) - T2(lo));
    return r;
}

double cube_full_integral(double t, double lo, double hi) {
    auto T1 = [&](double m) { return m - 0.5 * t * m * m; };
    auto T2 = [&](double m) {
        return m - m * m * m / 3.0 - t * (0.5 * m * m - 0.25 * m * m * m * m);
    };
    auto T6 = [&](double m) {
        return 0.5 * m * std::sqrt(std::max(0.0, 1.0 - m * m)) + 0.5 * std::asin(m);
    };
    auto T6b = [&](double m) { return -std::pow(1.0 - m * m, 1.5) / 3.0; };
    return 0.5 * pi * (T1(hi) - T1(lo)) -
           2.0 * t * ((T6(hi) - T6(lo)) - t * (T6b(hi) - T6b(lo))) +
           0.5 * t * t * (T2(hi) - T2(lo));
}

} // namespace

double unit_cube_isotropic_covariogram(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= std::sqrt(3.0)) return 0.0;
    if (t <= 1.0)
        return 1.0 - 1.5 * t + (2.0 / pi) * t * t - t * t * t / (4.0 * pi);
    const double mustar = std::sqrt(1.0 - 1.0 / (t * t));
    double val;
    if (t <= std::sqrt(2.0)) {
        val = cube_branch_integral(t, 0.0, mustar, true) +
              cube_full_integral(t, mustar, 1.0 / t);
    } else {
        const double mu2 = std::sqrt(1.0 - 2.0 / (t * t));
        val = cube_branch_integral(t, mu2, 1.0 / t, false);
    }
    return (2.0 / pi) * val;
}

double isotropic_covariogram(const Shape& shape, double t) {
    const int d = shape.dim();
    if (t < 0.0) throw InvalidInput("isotropic_covariogram: t must be nonnegative");
    if (t >= 2.0 * bounding_radius(shape)) return 0.0;
    switch (shape.kind()) {
        case ShapeKind::Ball: {
            const double r = shape.radius();
            return std::pow(r, d) * unit_ball_cov(d, t / r);
        }
        case ShapeKind::Box: {
            const auto& a = shape.half_extents();
            if (d == 1) return std::max(0.0, 2.0 * a(0) - t);
            const bool equal = (a.array() == a(0)).all();
            if (equal) {
                const double side = 2.0 * a(0);
                const double u = t / side;
                const double unit = d == 2 ? unit_square_isotropic_covariogram(u)
                                           : unit_cube_isotropic_covariogram(u);
                return std::pow(side, d) * unit;
            }
            break;
        }
        case ShapeKind::Ellipsoid:
            if (d == 1) return std::max(0.0, 2.0 * shape.semi_axes()(0) - t);
            break;
    }
    const double tol = 1e-9 * volume(shape);
    return sphere_average(
        d, [&](const Eigen::VectorXd& u) { return covariogram(shape, t * u); }, tol,
        0.0);
}

double gamma_prime_zero(const Shape& shape) {
    const int d = shape.dim();
    return -(unit_ball_volume(d - 1) / (d * unit_ball_volume(d))) *
           surface_measure(shape);
}

bool contains(const Shape& shape, const Eigen::VectorXd& point) {
    const int d = shape.dim();
    if (point.size() != d) throw InvalidInput("contains: dimension mismatch");
    switch (shape.kind()) {
        case ShapeKind::Ball:
            return point.norm() <= shape.radius();
        case ShapeKind::Box:
            return (point.array().abs() <= shape.half_extents().array()).all();
        case ShapeKind::Ellipsoid:
            return (point.array() / shape.semi_axes().array()).matrix().norm() <= 1.0;
    }
    return false;
}

Rotation random_rotation(int dim, std::mt19937_64& rng) {
    if (dim == 1) return Rotation::identity(1);
    if (dim == 2) {
        std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
        const double th = unif(rng);
        Eigen::Matrix2d m;
        m << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        return Rotation(m);
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
    Eigen::Matrix3d q = qr.householderQ();
    Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix signs so R has positive diagonal (makes Q Haar on O(3))
    for (int j = 0; j < 3; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    if (q.determinant() < 0.0) q.col(2) = -q.col(2);
    return Rotation(q);
}

} // namespace latvar

#ifndef LATVAR_GEOMETRY_HPP
#define LATVAR_GEOMETRY_HPP

#include <functional>
#include <random>

#include <Eigen/Core>

namespace latvar {

enum class ShapeKind { Ball, Box, Ellipsoid };

// Centered body in R^d, d in {1,2,3}. Placement (dilation, rotation, shift)
// is applied by callers. Boundary convention: closed sets.
class Shape {
public:
    static Shape ball(int dim, double radius);
    static Shape box(const Eigen::VectorXd& half_extents);
    static Shape ellipsoid(const Eigen::VectorXd& semi_axes);

    ShapeKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double radius() const { return params_(0); }
    const Eigen::VectorXd& half_extents() const { return params_; }
    const Eigen::VectorXd& semi_axes() const { return params_; }

private:
    Shape(ShapeKind kind, int dim, Eigen::VectorXd params);
    ShapeKind kind_;
    int dim_;
    Eigen::VectorXd params_;
};

// Proper rotation; matrix() is orthogonal with determinant +1.
class Rotation {
public:
    explicit Rotation(Eigen::MatrixXd m);
    static Rotation identity(int dim);
    const Eigen::MatrixXd& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    Eigen::MatrixXd m_;
};

double volume(const Shape& shape);
double surface_measure(const Shape& shape);
double bounding_radius(const Shape& shape);

// gamma_D(x) = lambda^d(D cap (D + x)), closed form for all shapes.
double covariogram(const Shape& shape, const Eigen::VectorXd& x);

// Sphere average of gamma_D(t u); closed form for balls and for boxes with
// equal half-extents, adaptive sphere quadrature otherwise
// (absolute tolerance 1e-9 * volume).
double isotropic_covariogram(const Shape& shape, double t);

// Right derivative of the isotropic covariogram at 0:
// -(kappa_{d-1} / (d kappa_d)) * H^{d-1}(boundary D).
double gamma_prime_zero(const Shape& shape);

// Membership with the closed-set convention.
bool contains(const Shape& shape, const Eigen::VectorXd& point);

// Haar-distributed rotation.
Rotation random_rotation(int dim, std::mt19937_64& rng);

// Adaptive sphere average of a scalar field over S^{d-1}; node count doubles
// until successive estimates differ by less than max(abs_tol, rel_tol*|value|).
double sphere_average(int dim, const std::function<double(const Eigen::VectorXd&)>& f,
                      double abs_tol, double rel_tol, int initial_nodes = 64);

// Isotropic covariogram of the unit cube/square (closed form, all branches).
double unit_cube_isotropic_covariogram(double t);
double unit_square_isotropic_covariogram(double t);

} // namespace latvar

#endif

#include "latvar/lattice.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace latvar {

Lattice::Lattice(Eigen::MatrixXd a) : a_(std::move(a)) {
    const double det = a_.determinant();
    if (std::abs(det) <= 1e-12) throw SingularGenerator();
    det_ = std::abs(det);
    b_ = a_.inverse().transpose();
}

Lattice Lattice::from_generator(const Eigen::MatrixXd& generator) {
    if (generator.rows() != generator.cols() || generator.rows() < 1 ||
        generator.rows() > 3)
        throw InvalidInput("lattice generator must be square, d in {1,2,3}");
    return Lattice(generator);
}

Lattice Lattice::integer(int dim) {
    return Lattice(Eigen::MatrixXd::Identity(dim, dim));
}

Eigen::VectorXd sample_fundamental_cell(const Lattice& lat, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd u(lat.dim());
    for (int i = 0; i < lat.dim(); ++i) u(i) = unif(rng);
    return lat.generator() * u;
}

void for_each_lattice_point_in_ball(
    const Eigen::MatrixXd& g, const Eigen::VectorXd& center, double radius,
    const std::function<void(const Eigen::VectorXd&)>& visit) {
    const int d = static_cast<int>(g.rows());
    const Eigen::MatrixXd ginv = g.inverse();
    const Eigen::VectorXd c = ginv * center;
    Eigen::VectorXi lo(d), hi(d);
    double box_count = 1.0;
    for (int i = 0; i < d; ++i) {
        const double row_norm = ginv.row(i).norm();
        lo(i) = static_cast<int>(std::ceil(c(i) - radius * row_norm - 1e-12));
        hi(i) = static_cast<int>(std::floor(c(i) + radius * row_norm + 1e-12));
        box_count *= std::max(0.0, static_cast<double>(hi(i)) - lo(i) + 1.0);
    }
    if (box_count > 1e9)
        throw OverflowGuard("lattice enumeration bounding box exceeds 1e9 points");
    const double r2 = radius * radius * (1.0 + 1e-12) + 1e-12;
    Eigen::VectorXd n(d), y(d);
    if (d == 1) {
        for (int i0 = lo(0); i0 <= hi(0); ++i0) {
            n(0) = i0;
            y = g * n - center;
            if (y.squaredNorm() <= r2) visit(n);
        }
    } else if (d == 2) {
        for (int i0 = lo(0); i0 <= hi(0); ++i0)
            for (int i1 = lo(1); i1 <= hi(1); ++i1) {
                n(0) = i0;
                n(1) = i1;
                y = g * n - center;
                if (y.squaredNorm() <= r2) visit(n);
            }
    } else {
        for (int i0 = lo(0); i0 <= hi(0); ++i0)
            for (int i1 = lo(1); i1 <= hi(1); ++i1)
                for (int i2 = lo(2); i2 <= hi(2); ++i2) {
                    n(0) = i0;
                    n(1) = i1;
                    n(2) = i2;
                    y = g * n - center;
                    if (y.squaredNorm() <= r2) visit(n);
                }
    }
}

std::int64_t count_points(const Lattice& lat, const Shape& shape, double r,
                          const Rotation& m, const Eigen::VectorXd& x) {
    if (r <= 0.0) throw InvalidInput("count_points: dilation must be positive");
    const int d = lat.dim();
    if (shape.dim() != d || m.dim() != d || x.size() != d)
        throw InvalidInput("count_points: dimension mismatch");
    const double rb = r * bounding_radius(shape);
    const Eigen::MatrixXd mt = m.matrix().transpose();
    std::int64_t count = 0;
    for_each_lattice_point_in_ball(
        lat.generator(), x, rb, [&](const Eigen::VectorXd& n) {
            const Eigen::VectorXd p = mt * ((lat.generator() * n - x) / r);
            if (contains(shape, p)) ++count;
        });
    return count;
}

std::vector<Eigen::VectorXd> dual_points_in_ball(const Lattice& lat, double R) {
    if (R <= 0.0) throw InvalidInput("dual_points_in_ball: R must be positive");
    const int d = lat.dim();
    std::vector<Eigen::VectorXd> pts;
    for_each_lattice_point_in_ball(
        lat.dual_generator(), Eigen::VectorXd::Zero(d), R,
        [&](const Eigen::VectorXd& n) {
            if (n.isZero(0.0)) return;
            pts.push_back(lat.dual_generator() * n);
        });
    std::sort(pts.begin(), pts.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                  const double na = a.squaredNorm(), nb = b.squaredNorm();
                  if (na != nb) return na < nb;
                  return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                                      b.data(), b.data() + b.size());
              });
    return pts;
}

LatticeSum epstein_sum(const Lattice& lat, double s, double tol) {
    const int d = lat.dim();
    if (s <= d) throw DivergentExponent("epstein_sum: s must exceed the dimension");
    // Normalize the dual lattice to unit covolume; split the Mellin integral
    // at 1 so both theta half-sums converge like exp(-pi |v|^2).
    const double vol = 1.0 / lat.determinant();               // covolume of T*
    const double scale = std::pow(vol, 1.0 / d);              // lambda = (det B)^{1/d}
    const Eigen::MatrixXd bn = lat.dual_generator() / scale;  // unit covolume
    const Eigen::MatrixXd an = bn.inverse().transpose();      // its dual

    const double cut = 14.0;  // enumerate |v|^2 <= cut; exp(-pi*14) ~ 8e-20
    const double radius = std::sqrt(cut);
    long double direct = 0.0L, dual = 0.0L;
    for_each_lattice_point_in_ball(
        bn, Eigen::VectorXd::Zero(d), radius, [&](const Eigen::VectorXd& n) {
            if (n.isZero(0.0)) return;
            const double q = pi * (bn * n).squaredNorm();
            direct += static_cast<long double>(std::pow(q, -0.5 * s) *
                                               upper_incomplete_gamma(0.5 * s, q));
        });
    for_each_lattice_point_in_ball(
        an, Eigen::VectorXd::Zero(d), radius, [&](const Eigen::VectorXd& n) {
            if (n.isZero(0.0)) return;
            const double q = pi * (an * n).squaredNorm();
            dual += static_cast<long double>(std::pow(q, -0.5 * (d - s)) *
                                             upper_incomplete_gamma(0.5 * (d - s), q));
        });
    const long double bracket =
        direct + dual + 2.0L / (s - d) - 2.0L / s;
    const double z_unit = static_cast<double>(
        std::pow(pi, 0.5 * s) / std::tgamma(0.5 * s) * bracket);
    LatticeSum out;
    out.value = std::pow(vol, -s / d) * z_unit;
    out.truncation_radius = radius * scale;
    out.tail_bound = std::max(1e-15 * std::abs(out.value),
                              8.0 * d * unit_ball_volume(d) * std::pow(cut, 0.5 * d) *
                                  std::exp(-pi * cut) * std::pow(vol, -s / d));
    if (out.tail_bound >= tol && tol > 0.0)
        throw TailBoundFailure("epstein_sum: requested tolerance below theta tail");
    return out;
}

LatticeSum epstein_sum_shells(const Lattice& lat, double s, double tol) {
    const int d = lat.dim();
    if (s <= d) throw DivergentExponent("epstein_sum: s must exceed the dimension");
    if (tol <= 0.0) throw InvalidInput("epstein_sum_shells: tol must be positive");
    // integral-comparison tail (inflated by 2):
    // sum_{|xi|>R} |xi|^{-s} <= 2 * detA * d kappa_d * R^{d-s} / (s-d)
    const double density = lat.determinant();  // dual points per unit volume
    const double c = 2.0 * density * d * unit_ball_volume(d) / (s - d);
    const double radius = std::pow(c / tol, 1.0 / (s - d));
    // refuse absurd enumerations before they start
    const double expected = density * unit_ball_volume(d) * std::pow(radius, d);
    if (expected > 5e8)
        throw TailBoundFailure("epstein_sum_shells: tolerance requires too large a radius");
    long double sum = 0.0L;
    for_each_lattice_point_in_ball(
        lat.dual_generator(), Eigen::VectorXd::Zero(d), radius,
        [&](const Eigen::VectorXd& n) {
            if (n.isZero(0.0)) return;
            const double norm = (lat.dual_generator() * n).norm();
            sum += static_cast<long double>(std::pow(norm, -s));
        });
    LatticeSum out;
    out.value = static_cast<double>(sum);
    out.truncation_radius = radius;
    out.tail_bound = c * std::pow(radius, d - s);
    return out;
}

double lattice_constant(const Lattice& lat) {
    const int d = lat.dim();
    const LatticeSum z = epstein_sum(lat, d + 1.0);
    return z.value / (2.0 * pi * pi * d * unit_ball_volume(d));
}

} // namespace latvar

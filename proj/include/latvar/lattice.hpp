#ifndef LATVAR_LATTICE_HPP
#define LATVAR_LATTICE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "latvar/geometry.hpp"

namespace latvar {

// Point lattice T(A) = A Z^d with fundamental cell A [0,1)^d.
// The dual generator is the character-theoretic dual B = A^{-T}.
class Lattice {
public:
    static Lattice from_generator(const Eigen::MatrixXd& generator);
    static Lattice integer(int dim);  // Z^d

    const Eigen::MatrixXd& generator() const { return a_; }
    const Eigen::MatrixXd& dual_generator() const { return b_; }
    double determinant() const { return det_; }
    double intensity() const { return 1.0 / det_; }
    int dim() const { return static_cast<int>(a_.rows()); }

private:
    explicit Lattice(Eigen::MatrixXd a);
    Eigen::MatrixXd a_;
    Eigen::MatrixXd b_;
    double det_ = 0.0;
};

struct LatticeSum {
    double value = 0.0;
    double truncation_radius = 0.0;
    double tail_bound = 0.0;
};

// Uniform sample from the fundamental cell A [0,1)^d.
Eigen::VectorXd sample_fundamental_cell(const Lattice& lat, std::mt19937_64& rng);

// Number of lattice points inside r M D + x (closed-set membership).
// Throws OverflowGuard if the candidate bounding box exceeds 1e9 points.
std::int64_t count_points(const Lattice& lat, const Shape& shape, double r,
                          const Rotation& m, const Eigen::VectorXd& x);

// All nonzero dual points with |xi| <= R, sorted by norm then lexicographically.
std::vector<Eigen::VectorXd> dual_points_in_ball(const Lattice& lat, double R);

// Epstein-type sum over the dual lattice: sum_{0 != n} |B n|^{-s}, s > d.
// Theta-function (incomplete-gamma) splitting; exponentially convergent.
LatticeSum epstein_sum(const Lattice& lat, double s, double tol = 1e-12);

// Direct shell summation with integral-comparison tail bound (cross-check
// fallback; slow for tight tolerances in d >= 2).
LatticeSum epstein_sum_shells(const Lattice& lat, double s, double tol);

// C_T = (1 / (2 pi^2 d kappa_d)) * sum_{0 != n} |A^{-1} n|^{-d-1}.
double lattice_constant(const Lattice& lat);

// Lexicographic enumeration of integer points n with G n in ball(center, R);
// visit(n, G n) is called in a fixed deterministic order.
void for_each_lattice_point_in_ball(
    const Eigen::MatrixXd& g, const Eigen::VectorXd& center, double radius,
    const std::function<void(const Eigen::VectorXd&)>& visit);

} // namespace latvar

#endif

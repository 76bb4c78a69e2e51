#ifndef LATVAR_VARIANCE_HPP
#define LATVAR_VARIANCE_HPP

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "latvar/geometry.hpp"
#include "latvar/interpolation.hpp"
#include "latvar/lattice.hpp"

namespace latvar {

struct VarianceEstimate {
    double value = 0.0;
    std::string route;         // "spectral", "monte_carlo", "asymptotic"
    double uncertainty = 0.0;  // truncation tail bound or MC standard error
    double meta = 0.0;         // truncation radius or sample count
    double mean = 0.0;         // monte_carlo only: sample mean of the counts
    double mean_se = 0.0;      // monte_carlo only: standard error of that mean
};

struct PhiProfile {
    Eigen::VectorXd radii;
    Eigen::VectorXd phi;
    Eigen::VectorXd running_mean;  // (1/r) int_0^r Phi, trapezoid on the grid
};

// E N = intensity * r^d * volume.
double mean_count(const Lattice& lat, const Shape& shape, double r);

// Var N for the placed body r M D. Summed in real space over the finitely
// many lattice translates meeting the body (the frequency sum folded back by
// Poisson summation), so the truncation error is zero and `tol` is only a
// guard; uncertainty reports the (null) tail bound.
VarianceEstimate variance_spectral(const Lattice& lat, const Shape& shape,
                                   double r, const Rotation& m, double tol = 1e-9);

// Literal dual-space sum truncated at |xi| <= R with an O(|xi|^{-d-1})
// envelope tail bound; R grows until the bound drops below tol. Slowly
// convergent; kept as a cross-check route.
VarianceEstimate variance_spectral_truncated(const Lattice& lat, const Shape& shape,
                                             double r, const Rotation& m, double tol);

// Rotation-averaged variance, same real-space folding with the isotropic
// covariogram; scalar multiples of Z^d use a cached norm histogram.
VarianceEstimate variance_isotropic(const Lattice& lat, const Shape& shape,
                                    double r, double tol = 1e-9);

// Sample mean of (N - E N)^2 over x ~ uniform(cell) and, if isotropic,
// M ~ Haar. Parallel over fixed worker streams split from `seed`; the
// reduction order is deterministic, so results are reproducible.
VarianceEstimate variance_mc(const Lattice& lat, const Shape& shape, double r,
                             bool isotropic, int n, std::uint64_t seed);

// Psi(t) = 2 pi^2 kappa_{d-1} t^{d+1} spectral_density(t) / (-gamma'(0+)).
RadialProfile psi_profile(const Shape& shape, const Eigen::VectorXd& t_grid);

// Phi(r) = variance_isotropic / (C_T * surface * r^{d-1}) on the grid, with
// the running Cesaro mean; also cross-checks the Psi-sum identity on a
// truncated dual subsample.
PhiProfile phi_profile(const Lattice& lat, const Shape& shape,
                       const Eigen::VectorXd& r_grid, double tol = 1e-9);

// C_T * H^{d-1}(boundary) * r^{d-1}.
VarianceEstimate asymptote(const Lattice& lat, const Shape& shape, double r);

} // namespace latvar

#endif

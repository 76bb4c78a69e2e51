#ifndef LATVAR_CONSTANTS_HPP
#define LATVAR_CONSTANTS_HPP

#include <cmath>

namespace latvar {

inline constexpr double pi = 3.14159265358979323846;

// Volume of the unit ball in R^d: pi^{d/2} / Gamma(d/2 + 1).
// kappa_0 = 1 by convention.
inline double unit_ball_volume(int d) {
    return std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Surface of the unit sphere S^{d-1}: d * kappa_d.
inline double unit_sphere_area(int d) {
    return d * unit_ball_volume(d);
}

} // namespace latvar

#endif

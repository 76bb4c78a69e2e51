#include "latvar/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latvar {

RadialProfile::RadialProfile(Eigen::VectorXd abscissae, Eigen::VectorXd values,
                             double tail_exponent)
    : t_(std::move(abscissae)), v_(std::move(values)), tail_exponent_(tail_exponent) {
    const Eigen::Index n = t_.size();
    if (n < 2 || v_.size() != n)
        throw std::invalid_argument("RadialProfile: need >= 2 matching samples");
    if (t_(0) < 0.0)
        throw std::invalid_argument("RadialProfile: abscissae must be nonnegative");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(t_(i) > t_(i - 1)))
            throw std::invalid_argument("RadialProfile: abscissae must be strictly increasing");

    // Fritsch-Carlson monotone cubic slopes.
    slope_.resize(n);
    Eigen::VectorXd h(n - 1), delta(n - 1);
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        h(i) = t_(i + 1) - t_(i);
        delta(i) = (v_(i + 1) - v_(i)) / h(i);
    }
    slope_(0) = delta(0);
    slope_(n - 1) = delta(n - 2);
    for (Eigen::Index i = 1; i < n - 1; ++i) {
        if (delta(i - 1) * delta(i) <= 0.0) {
            slope_(i) = 0.0;
        } else {
            // weighted harmonic mean
            const double w1 = 2.0 * h(i) + h(i - 1);
            const double w2 = h(i) + 2.0 * h(i - 1);
            slope_(i) = (w1 + w2) / (w1 / delta(i - 1) + w2 / delta(i));
        }
    }
    // limiter on the intervals
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        if (delta(i) == 0.0) {
            slope_(i) = 0.0;
            slope_(i + 1) = 0.0;
            continue;
        }
        const double a = slope_(i) / delta(i);
        const double b = slope_(i + 1) / delta(i);
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            slope_(i) = tau * a * delta(i);
            slope_(i + 1) = tau * b * delta(i);
        }
    }
}

double RadialProfile::operator()(double t) const {
    const Eigen::Index n = t_.size();
    if (t <= t_(0)) return v_(0);
    if (t > t_(n - 1)) {
        const double vl = v_(n - 1);
        if (vl == 0.0) return 0.0;
        return vl * std::pow(t / t_(n - 1), tail_exponent_);
    }
    const double* begin = t_.data();
    const double* it = std::upper_bound(begin, begin + n, t);
    Eigen::Index i = static_cast<Eigen::Index>(it - begin) - 1;
    if (i == n - 1) return v_(n - 1);
    const double h = t_(i + 1) - t_(i);
    const double s = (t - t_(i)) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * v_(i) + h10 * h * slope_(i) + h01 * v_(i + 1) + h11 * h * slope_(i + 1);
}

} // namespace latvar

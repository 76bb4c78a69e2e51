#ifndef LATVAR_INTERPOLATION_HPP
#define LATVAR_INTERPOLATION_HPP

#include <Eigen/Core>

namespace latvar {

// Sampled nonnegative radial function with monotone-cubic interpolation
// inside the sample range and a power-law extension beyond the last sample:
//   f(t) = v_last * (t / t_last)^tail_exponent   for t > t_last.
// Evaluation at a sample abscissa reproduces the sample exactly.
class RadialProfile {
public:
    RadialProfile() = default;

    // abscissae strictly increasing, nonnegative.
    RadialProfile(Eigen::VectorXd abscissae, Eigen::VectorXd values,
                  double tail_exponent);

    double operator()(double t) const;

    const Eigen::VectorXd& abscissae() const { return t_; }
    const Eigen::VectorXd& values() const { return v_; }
    double tail_exponent() const { return tail_exponent_; }
    double front() const { return v_(0); }
    double back() const { return v_(v_.size() - 1); }
    double t_last() const { return t_(t_.size() - 1); }

private:
    Eigen::VectorXd t_;
    Eigen::VectorXd v_;
    Eigen::VectorXd slope_;      // Fritsch-Carlson limited endpoint slopes
    double tail_exponent_ = 0.0;
};

} // namespace latvar

#endif

#include "latvar/variance.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"
#include "latvar/rng.hpp"
#include "latvar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <mutex>
#include <vector>

namespace latvar {

namespace {

constexpr int kMcStreams = 8;

// r_d(m) = #{n in Z^d : |n|^2 = m}, with sqrt(m) precomputed. Shared cache,
// rebuilt with headroom when a larger range is first requested.
struct NormHistogram {
    int max_m = -1;
    std::vector<double> count;
    std::vector<double> root;
};

std::shared_ptr<const NormHistogram> norm_histogram(int d, int need_m) {
    static std::mutex mu;
    static std::shared_ptr<const NormHistogram> cache[4];
    std::lock_guard<std::mutex> lock(mu);
    if (cache[d] && cache[d]->max_m >= need_m) return cache[d];
    const int m_max = std::max(need_m, cache[d] ? 2 * cache[d]->max_m : 0);
    const int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(m_max))));
    auto h = std::make_shared<NormHistogram>();
    h->max_m = m_max;
    h->count.assign(m_max + 1, 0.0);
    if (d == 1) {
        for (int i = -l; i <= l; ++i) h->count[i * i] += 1.0;
    } else if (d == 2) {
        for (int i = -l; i <= l; ++i)
            for (int j = -l; j <= l; ++j) {
                const int m = i * i + j * j;
                if (m <= m_max) h->count[m] += 1.0;
            }
    } else {
        std::vector<double> r2(m_max + 1, 0.0);
        for (int i = -l; i <= l; ++i)
            for (int j = -l; j <= l; ++j) {
                const int m = i * i + j * j;
                if (m <= m_max) r2[m] += 1.0;
            }
        for (int i = -l; i <= l; ++i) {
            const int off = i * i;
            for (int m2 = 0; m2 + off <= m_max; ++m2)
                if (r2[m2] != 0.0) h->count[m2 + off] += r2[m2];
        }
    }
    h->root.resize(m_max + 1);
    for (int m = 0; m <= m_max; ++m) h->root[m] = std::sqrt(static_cast<double>(m));
    cache[d] = h;
    return cache[d];
}

// s > 0 with generator == s * I, or 0 if the lattice is not of that form.
double scalar_multiplier(const Lattice& lat) {
    const Eigen::MatrixXd& a = lat.generator();
    const double s = a(0, 0);
    if (s <= 0.0) return 0.0;
    const int d = lat.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (a(i, j) != (i == j ? s : 0.0)) return 0.0;
    return s;
}

void check_inputs(const Lattice& lat, const Shape& shape, double r) {
    if (!(r > 0.0)) throw InvalidInput("dilation must be positive");
    if (lat.dim() != shape.dim()) throw InvalidInput("lattice/shape dimension mismatch");
}

} // namespace

double mean_count(const Lattice& lat, const Shape& shape, double r) {
    check_inputs(lat, shape, r);
    return lat.intensity() * std::pow(r, lat.dim()) * volume(shape);
}

VarianceEstimate variance_spectral(const Lattice& lat, const Shape& shape,
                                   double r, const Rotation& m, double tol) {
    check_inputs(lat, shape, r);
    if (m.dim() != lat.dim()) throw InvalidInput("rotation dimension mismatch");
    (void)tol;  // the folded sum has finite support; no truncation error
    const int d = lat.dim();
    const double alpha = lat.intensity();
    const double rd = std::pow(r, d);
    const double support = 2.0 * r * bounding_radius(shape) * (1.0 + 1e-9);
    const Eigen::MatrixXd mt = m.matrix().transpose();
    long double sum = 0.0L;
    for_each_lattice_point_in_ball(
        lat.generator(), Eigen::VectorXd::Zero(d), support,
        [&](const Eigen::VectorXd& n) {
            const Eigen::VectorXd x = mt * (lat.generator() * n) / r;
            sum += static_cast<long double>(covariogram(shape, x));
        });
    const long double mean = static_cast<long double>(alpha * rd * volume(shape));
    const double value = static_cast<double>(
        static_cast<long double>(alpha) * rd * sum - mean * mean);
    VarianceEstimate out;
    out.value = std::max(0.0, value);
    out.route = "spectral";
    out.uncertainty = 0.0;
    out.meta = support;
    return out;
}

VarianceEstimate variance_isotropic(const Lattice& lat, const Shape& shape,
                                    double r, double tol) {
    check_inputs(lat, shape, r);
    (void)tol;
    const int d = lat.dim();
    const double alpha = lat.intensity();
    const double rd = std::pow(r, d);
    const double support = 2.0 * r * bounding_radius(shape) * (1.0 + 1e-9);
    long double sum = 0.0L;
    const double s = scalar_multiplier(lat);
    if (s > 0.0) {
        const int m_max = static_cast<int>(support * support / (s * s));
        const auto h = norm_histogram(d, m_max);
        for (int m2 = 0; m2 <= m_max; ++m2) {
            const double c = h->count[m2];
            if (c == 0.0) continue;
            sum += static_cast<long double>(
                c * isotropic_covariogram(shape, s * h->root[m2] / r));
        }
    } else {
        for_each_lattice_point_in_ball(
            lat.generator(), Eigen::VectorXd::Zero(d), support,
            [&](const Eigen::VectorXd& n) {
                const double t = (lat.generator() * n).norm() / r;
                sum += static_cast<long double>(isotropic_covariogram(shape, t));
            });
    }
    const long double mean = static_cast<long double>(alpha * rd * volume(shape));
    const double value = static_cast<double>(
        static_cast<long double>(alpha) * rd * sum - mean * mean);
    VarianceEstimate out;
    out.value = std::max(0.0, value);
    out.route = "spectral";
    out.uncertainty = 0.0;
    out.meta = support;
    return out;
}

VarianceEstimate variance_spectral_truncated(const Lattice& lat, const Shape& shape,
                                             double r, const Rotation& m, double tol) {
    check_inputs(lat, shape, r);
    if (m.dim() != lat.dim()) throw InvalidInput("rotation dimension mismatch");
    if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
    const int d = lat.dim();
    const double alpha = lat.intensity();
    const double kd = unit_ball_volume(d);
    const double density = lat.determinant();  // dual points per unit volume
    const double pref = alpha * alpha * std::pow(r, 2 * d);
    const Eigen::MatrixXd mt = m.matrix().transpose();
    double radius = std::max(2.0, std::pow(1000.0 / (density * kd), 1.0 / d));
    for (;;) {
        if (density * kd * std::pow(radius, d) > 2e7)
            throw TailBoundFailure(
                "variance_spectral_truncated: tolerance requires too large a radius");
        long double sum = 0.0L;
        double envelope = 0.0;
        for_each_lattice_point_in_ball(
            lat.dual_generator(), Eigen::VectorXd::Zero(d), radius,
            [&](const Eigen::VectorXd& n) {
                if (n.isZero(0.0)) return;
                const Eigen::VectorXd xi = lat.dual_generator() * n;
                const double term =
                    pref * std::norm(fourier_indicator(shape, r * (mt * xi)));
                sum += static_cast<long double>(term);
                envelope = std::max(envelope, std::pow(xi.norm(), d + 1) * term);
            });
        const double tail = envelope * 2.0 * density * d * kd / radius;
        if (tail <= tol) {
            VarianceEstimate out;
            out.value = static_cast<double>(sum);
            out.route = "spectral";
            out.uncertainty = tail;
            out.meta = radius;
            return out;
        }
        radius *= 1.6;
    }
}

VarianceEstimate variance_mc(const Lattice& lat, const Shape& shape, double r,
                             bool isotropic, int n, std::uint64_t seed) {
    check_inputs(lat, shape, r);
    if (n < 100) throw InvalidInput("variance_mc: need at least 100 samples");
    const int d = lat.dim();
    const double mu = mean_count(lat, shape, r);
    struct Acc {
        long double sc = 0.0L, sc2 = 0.0L, sq = 0.0L, sq2 = 0.0L;
    };
    const Rotation ident = Rotation::identity(d);
    auto worker = [&](int stream, int count) {
        Acc acc;
        std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(stream));
        for (int i = 0; i < count; ++i) {
            const Eigen::VectorXd x = sample_fundamental_cell(lat, rng);
            const Rotation rot = isotropic ? random_rotation(d, rng) : ident;
            const double c =
                static_cast<double>(count_points(lat, shape, r, rot, x));
            const double dev = c - mu;
            acc.sc += c;
            acc.sc2 += static_cast<long double>(c) * c;
            const double sq = dev * dev;
            acc.sq += sq;
            acc.sq2 += static_cast<long double>(sq) * sq;
        }
        return acc;
    };
    std::vector<std::future<Acc>> futures;
    const int base = n / kMcStreams, rem = n % kMcStreams;
    for (int s = 0; s < kMcStreams; ++s)
        futures.push_back(std::async(std::launch::async, worker, s,
                                     base + (s < rem ? 1 : 0)));
    Acc total;
    for (auto& f : futures) {  // reduce in stream order
        const Acc a = f.get();
        total.sc += a.sc;
        total.sc2 += a.sc2;
        total.sq += a.sq;
        total.sq2 += a.sq2;
    }
    const double nn = static_cast<double>(n);
    VarianceEstimate out;
    out.value = static_cast<double>(total.sq) / nn;
    out.route = "monte_carlo";
    out.uncertainty = std::sqrt(std::max(
        0.0, (static_cast<double>(total.sq2) / nn - out.value * out.value) / (nn - 1.0)));
    out.meta = nn;
    out.mean = static_cast<double>(total.sc) / nn;
    out.mean_se = std::sqrt(std::max(
        0.0,
        (static_cast<double>(total.sc2) / nn - out.mean * out.mean) / (nn - 1.0)));
    return out;
}

RadialProfile psi_profile(const Shape& shape, const Eigen::VectorXd& t_grid) {
    if (t_grid.size() < 1) throw InvalidInput("psi_profile: empty grid");
    for (int i = 0; i < t_grid.size(); ++i)
        if (!(t_grid(i) > 0.0) || (i > 0 && t_grid(i) <= t_grid(i - 1)))
            throw InvalidInput("psi_profile: grid must be increasing and positive");
    const int d = shape.dim();
    const double g0 = -gamma_prime_zero(shape);
    const double pref = 2.0 * pi * pi * unit_ball_volume(d - 1) / g0;
    Eigen::VectorXd v(t_grid.size());
    for (int i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid(i);
        v(i) = pref * std::pow(t, d + 1) * spectral_density(shape, t);
    }
    return RadialProfile(t_grid, v, 0.0);
}

PhiProfile phi_profile(const Lattice& lat, const Shape& shape,
                       const Eigen::VectorXd& r_grid, double tol) {
    if (r_grid.size() < 1) throw InvalidInput("phi_profile: empty grid");
    for (int i = 0; i < r_grid.size(); ++i)
        if (!(r_grid(i) > 0.0) || (i > 0 && r_grid(i) <= r_grid(i - 1)))
            throw InvalidInput("phi_profile: grid must be increasing and positive");
    const int d = lat.dim();
    if (shape.dim() != d) throw InvalidInput("lattice/shape dimension mismatch");
    const double ct = lattice_constant(lat);
    const double surf = surface_measure(shape);
    const int n = static_cast<int>(r_grid.size());

    PhiProfile out;
    out.radii = r_grid;
    out.phi.resize(n);
    out.running_mean.resize(n);

    auto eval = [&](int i) {
        const double r = r_grid(i);
        out.phi(i) = variance_isotropic(lat, shape, r, tol).value /
                     (ct * surf * std::pow(r, d - 1));
    };
    eval(n - 1);  // largest radius first so the shared histogram is built once
    const int workers = std::min(kMcStreams, std::max(1, n - 1));
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&, w]() {
            for (int i = w; i < n - 1; i += workers) eval(i);
        }));
    for (auto& f : futures) f.get();

    double cum = out.phi(0) * r_grid(0);  // Phi extended constantly on (0, r_1]
    out.running_mean(0) = out.phi(0);
    for (int i = 1; i < n; ++i) {
        cum += 0.5 * (out.phi(i - 1) + out.phi(i)) * (r_grid(i) - r_grid(i - 1));
        out.running_mean(i) = cum / r_grid(i);
    }

    // Psi-sum identity on a shared truncated dual set: both forms reduce to
    // the same sum of densities, so disagreement flags broken plumbing.
    const double alpha2 = lat.intensity() * lat.intensity();
    const double kd = unit_ball_volume(d);
    const double g0 = -gamma_prime_zero(shape);
    double radius = std::pow(40.0 / (lat.determinant() * kd), 1.0 / d);
    std::vector<Eigen::VectorXd> duals;
    for (int tries = 0; tries < 60; ++tries) {
        duals = dual_points_in_ball(lat, radius);
        if (duals.size() >= 40) break;
        radius *= 1.5;
    }
    double z = 0.0;
    for (const auto& xi : duals) z += std::pow(xi.norm(), -(d + 1.0));
    const double psi_pref = 2.0 * pi * pi * unit_ball_volume(d - 1) / g0;
    for (int i = 0; i < std::min(n, 2); ++i) {
        const double r = r_grid(i);
        double psi_sum = 0.0, dens_sum = 0.0;
        for (const auto& xi : duals) {
            const double rho = r * xi.norm();
            const double dens = spectral_density(shape, rho);
            dens_sum += dens;
            psi_sum += std::pow(xi.norm(), -(d + 1.0)) * psi_pref *
                       std::pow(rho, d + 1) * dens;
        }
        const double lhs = alpha2 * psi_sum / z;
        const double rhs = alpha2 * std::pow(r, 2 * d) * dens_sum /
                           ((z / (2.0 * pi * pi * d * kd)) * surf *
                            std::pow(r, d - 1));
        if (std::abs(lhs - rhs) > 1e-6 * std::max(1.0, std::abs(rhs)))
            throw NonConvergence("phi_profile: Psi-sum identity check failed");
    }
    return out;
}

VarianceEstimate asymptote(const Lattice& lat, const Shape& shape, double r) {
    check_inputs(lat, shape, r);
    VarianceEstimate out;
    out.value = lattice_constant(lat) * surface_measure(shape) *
                std::pow(r, lat.dim() - 1);
    out.route = "asymptotic";
    return out;
}

} // namespace latvar

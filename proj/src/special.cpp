#include "latvar/special.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace latvar {

namespace {

// --- J0 / J1 ---------------------------------------------------------------

double j01_series(int n, double x) {
    // J_n(x) = (x/2)^n sum_k (-1)^k (x^2/4)^k / (k! (k+n)!)
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int j = 1; j <= n; ++j) term *= 0.5 * x / j;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// Miller backward recurrence, normalized by J0 + 2*sum J_{2k} = 1.
void j01_miller(double x, double& j0, double& j1) {
    int start = static_cast<int>(x) + 42;
    if (start % 2) ++start;
    double jp = 0.0, jc = std::numeric_limits<double>::min() * 1e40;
    double even_sum = 0.0, s0 = 0.0, s1 = 0.0;
    for (int n = start; n >= 1; --n) {
        double jm = (2.0 * n / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (n - 1 == 0) s0 = jc;
        if (n - 1 == 1) s1 = jc;
        if ((n - 1) % 2 == 0 && n - 1 > 0) even_sum += jc;
        // rescale to avoid overflow
        if (std::abs(jc) > 1e100) {
            jc *= 1e-100;
            jp *= 1e-100;
            even_sum *= 1e-100;
            s0 *= 1e-100;
            s1 *= 1e-100;
        }
    }
    const double norm = s0 + 2.0 * even_sum;
    j0 = s0 / norm;
    j1 = s1 / norm;
}

double j01_asymptotic(int n, double x) {
    const double mu = 4.0 * n * n;
    const double omega = x - (0.5 * n + 0.25) * pi;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    int k = 1;
    double prev = std::numeric_limits<double>::max();
    while (k < 40) {
        const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        term *= f;
        const double mag = std::abs(term);
        if (mag > prev || mag < 1e-18) break;
        prev = mag;
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        ++k;
    }
    return std::sqrt(2.0 / (pi * x)) * (std::cos(omega) * p - std::sin(omega) * q);
}

double j01(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x <= 9.0) return j01_series(n, x);
    if (x < 25.0) {
        double j0, j1;
        j01_miller(x, j0, j1);
        return n == 0 ? j0 : j1;
    }
    return j01_asymptotic(n, x);
}

// sin(x)/x - cos(x), series for small x to avoid cancellation.
double sinc_minus_cos(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        // x^2/3 - x^4/30 + x^6/840 - x^8/45360 + x^10/3991680
        return x2 * (1.0 / 3.0 +
               x2 * (-1.0 / 30.0 +
               x2 * (1.0 / 840.0 +
               x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0)))));
    }
    return std::sin(x) / x - std::cos(x);
}

} // namespace

double bessel_j(double nu, double x) {
    if (x < 0.0) throw std::invalid_argument("bessel_j: x must be nonnegative");
    if (x > 1e6) throw std::invalid_argument("bessel_j: x out of supported range");
    if (nu == 0.0) return j01(0, x);
    if (nu == 1.0) return j01(1, x);
    if (nu == -0.5) {
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        return std::sqrt(2.0 / (pi * x)) * std::cos(x);
    }
    if (nu == 0.5) {
        if (x == 0.0) return 0.0;
        return std::sqrt(2.0 / (pi * x)) * std::sin(x);
    }
    if (nu == 1.5) {
        if (x == 0.0) return 0.0;
        return std::sqrt(2.0 / (pi * x)) * sinc_minus_cos(x);
    }
    throw std::invalid_argument("bessel_j: unsupported order");
}

double bessel_j_normalized(double nu, double z) {
    if (z < 0.0) z = -z;
    if (z < 0.5) {
        // sum_k (-1)^k (z^2/4)^k / (k! (nu+1)_k)
        const double q = 0.25 * z * z;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= -q / (k * (nu + k));
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return std::tgamma(nu + 1.0) * std::pow(0.5 * z, -nu) * bessel_j(nu, z);
}

double bessel_zero(double nu, int k) {
    if (k < 1) throw std::invalid_argument("bessel_zero: k >= 1 required");
    const double mu = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * pi;
    const double b8 = 8.0 * beta;
    double z = beta - (mu - 1.0) / b8
             - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
    return z;
}

std::complex<double> complex_gamma(std::complex<double> z) {
    if (std::abs(z.imag()) < 1e-12) {
        const double r = z.real();
        if (r <= 0.5 + 1e-12) {
            const double nearest = std::round(r);
            if (nearest <= 0.0 && std::abs(r - nearest) < 1e-12)
                throw PoleAt("complex_gamma: pole at nonpositive integer");
        }
    }
    // Lanczos, g = 7, 9 coefficients.
    static const double p[9] = {
        0.99999999999980993,   676.5203681218851,    -1259.1392167224028,
        771.32342877765313,    -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection formula
        return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

namespace {

double upper_gamma_cf(double a, double x) {
    // continued fraction (modified Lentz), valid for x > 0
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

double lower_gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * sum;
}

} // namespace

double upper_incomplete_gamma(double a, double x) {
    if (x <= 0.0) throw std::invalid_argument("upper_incomplete_gamma: x > 0 required");
    if (a > 0.0) {
        if (x < a + 1.0) return std::tgamma(a) - lower_gamma_series(a, x);
        return upper_gamma_cf(a, x);
    }
    // raise a into (0, 1] and step back down:
    // Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a
    const int m = static_cast<int>(std::ceil(-a)) + 1;
    double g = upper_incomplete_gamma(a + m, x);
    for (int j = m - 1; j >= 0; --j) {
        const double aj = a + j;
        g = (g - std::pow(x, aj) * std::exp(-x)) / aj;
    }
    return g;
}

double carlson_rf(double x, double y, double z) {
    const double tol = 1e-14;
    double dx, dy, dz;
    do {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        const double mu = (x + y + z) / 3.0;
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
    } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > tol);
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    const double mu = (x + y + z) / 3.0;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
    const double tol = 1e-14;
    double sum = 0.0, fac = 1.0;
    double dx, dy, dz, mu;
    do {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mu = (x + y + 3.0 * z) / 5.0;
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
    } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > tol);
    const double ea = dx * dy;
    const double eb = dz * dz;
    const double ec = ea - eb;
    const double ed = ea - 6.0 * eb;
    const double ee = ed + 2.0 * ec;
    return 3.0 * sum +
           fac * (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                  dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
               (mu * std::sqrt(mu));
}

double carlson_rg(double x, double y, double z) {
    // order so that z is the largest (formula needs z != 0 and R_D finite)
    if (x > z) std::swap(x, z);
    if (y > z) std::swap(y, z);
    if (z == 0.0) return 0.0;
    if (x == 0.0 && y == 0.0) return 0.5 * std::sqrt(z);
    const double rf = carlson_rf(x, y, z);
    const double rd = carlson_rd(x, y, z);
    return 0.5 * (z * rf - (x - z) * (y - z) * rd / 3.0 + std::sqrt(x * y / z));
}

} // namespace latvar

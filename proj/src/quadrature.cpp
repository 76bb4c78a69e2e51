#include "latvar/quadrature.hpp"

#include "latvar/constants.hpp"
#include "latvar/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace latvar {

namespace {

GaussLegendre compute_gl(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    // Newton iteration from Chebyshev initial guesses.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes(i) = -x;
        gl.nodes(n - 1 - i) = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights(i) = w;
        gl.weights(n - 1 - i) = w;
    }
    return gl;
}

} // namespace

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& s) {
    const std::size_t n = s.size();
    if (n == 0) return {};
    std::vector<std::complex<double>> cur(s), prev(n + 1, std::complex<double>{});
    std::complex<double> best = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<std::complex<double>> next(n - k);
        for (std::size_t j = 0; j < n - k; ++j) {
            const std::complex<double> diff = cur[j + 1] - cur[j];
            if (std::abs(diff) < 1e-300) {
                next[j] = cur[j + 1];
            } else {
                next[j] = prev[j + 1] + 1.0 / diff;
            }
        }
        prev = cur;
        cur = next;
        if (k % 2 == 0 && !cur.empty()) best = cur.back();
    }
    return best;
}

std::complex<double> accelerated_panel_sum(
    const std::function<std::complex<double>(double)>& f,
    const std::function<double(int)>& breakpoint, double abs_tol, int max_panels,
    int gl_order) {
    std::vector<std::complex<double>> partial;
    std::complex<double> sum{};
    std::complex<double> last_est{};
    bool have_last = false;
    for (int k = 0; k < max_panels; ++k) {
        const double a = breakpoint(k);
        const double b = breakpoint(k + 1);
        sum += integrate_gl(f, a, b, gl_order);
        partial.push_back(sum);
        if (partial.size() >= 8 && partial.size() % 2 == 0) {
            // accelerate on the most recent window
            const std::size_t w = std::min<std::size_t>(partial.size(), 24);
            std::vector<std::complex<double>> tailwin(partial.end() - w, partial.end());
            const std::complex<double> est = wynn_epsilon(tailwin);
            if (have_last && std::abs(est - last_est) < abs_tol) return est;
            last_est = est;
            have_last = true;
        }
    }
    throw NonConvergence("accelerated_panel_sum: oscillatory tail did not converge");
}

} // namespace latvar

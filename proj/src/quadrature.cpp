#include "biphoton/quadrature.hpp"

#include "biphoton/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace biphoton {

namespace {

GLRule compute_gl(int n) {
    GLRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    // Newton on P_n with the asymptotic Chebyshev-like seed; converges in a
    // handful of iterations for any practical order
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                // one clean-up step for the last bits
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / pp;
                break;
            }
        }
        const std::size_t a = static_cast<std::size_t>(i);
        const std::size_t b = static_cast<std::size_t>(n - 1 - i);
        r.x[a] = -x;
        r.x[b] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[a] = w;
        r.w[b] = w;
    }
    if (n % 2 == 1) r.x[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

} // namespace

const GLRule& gauss_legendre(int n) {
    if (n < 1) throw config_error("gauss-legendre order must be at least 1");
    static std::map<int, GLRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

void panel_nodes(double s0, double s1, double decay, double phase_rate, int n,
                 PanelNodes& out) {
    const double width = s1 - s0;
    if (!(width > 0.0)) {
        out.s.clear();
        out.w.clear();
        return;
    }
    double h = width;
    if (decay > 0.0) h = std::min(h, 0.5 / decay);
    if (phase_rate > 0.0) h = std::min(h, 0.5 * M_PI / phase_rate);
    const int m = std::max(1, static_cast<int>(std::ceil(width / h)));

    const GLRule& rule = gauss_legendre(n);
    out.s.resize(static_cast<std::size_t>(m) * rule.x.size());
    out.w.resize(out.s.size());
    std::size_t idx = 0;
    for (int p = 0; p < m; ++p) {
        // edges exactly as linspace(s0, s1, m+1) would place them
        const double e0 = s0 + width * p / m;
        const double e1 = s0 + width * (p + 1) / m;
        const double mid = 0.5 * (e0 + e1), half = 0.5 * (e1 - e0);
        for (std::size_t j = 0; j < rule.x.size(); ++j, ++idx) {
            out.s[idx] = mid + half * rule.x[j];
            out.w[idx] = half * rule.w[j];
        }
    }
}

} // namespace biphoton

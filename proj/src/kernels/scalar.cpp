#include "biphoton/kernels.hpp"

#include <cmath>

// ---- scalar reference kernels ----
//
// Ground truth for the equivalence tests: straightforward libm loops plus the
// shared resynchronized phase recurrence.  Keep these boring.

namespace biphoton::kernels::detail {
namespace {

void s_vexp(const double* x, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::exp(x[i]);
}

void s_vsincos(const double* x, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

constexpr std::size_t resync_interval = 256;

std::complex<double> s_phase_weighted_sum(const double* re, const double* im,
                                          std::size_t n, double phi0, double step) {
    double acc_re = 0.0, acc_im = 0.0;
    // rotate by exp(-i step) each element, restart from libm every block so
    // the recurrence error never accumulates past ~resync_interval ulps
    const double cs = std::cos(step), sn = std::sin(-step);
    for (std::size_t base = 0; base < n; base += resync_interval) {
        const std::size_t end = std::min(n, base + resync_interval);
        double ang = phi0 + static_cast<double>(base) * step;
        double pr = std::cos(ang), pi = -std::sin(ang);
        for (std::size_t k = base; k < end; ++k) {
            acc_re += re[k] * pr - im[k] * pi;
            acc_im += re[k] * pi + im[k] * pr;
            const double npr = pr * cs - pi * sn;
            pi = pr * sn + pi * cs;
            pr = npr;
        }
    }
    return {acc_re, acc_im};
}

std::complex<double> s_weighted_cexp_sum(const double* g, const double* phi,
                                         const double* w, std::size_t n) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double m = w[k] * std::exp(g[k]);
        acc_re += m * std::cos(phi[k]);
        acc_im += m * std::sin(phi[k]);
    }
    return {acc_re, acc_im};
}

double sinc(double x) {
    if (std::fabs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

std::complex<double> s_sinc_weighted_cexp_sum(const double* x, const double* g,
                                              const double* phi, const double* w,
                                              std::size_t n) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double m = w[k] * std::exp(g[k]) * sinc(x[k]);
        acc_re += m * std::cos(phi[k]);
        acc_im += m * std::sin(phi[k]);
    }
    return {acc_re, acc_im};
}

} // namespace

const kernel_table& scalar_table() {
    static const kernel_table t{s_vexp, s_vsincos, s_phase_weighted_sum,
                                s_weighted_cexp_sum, s_sinc_weighted_cexp_sum};
    return t;
}

} // namespace biphoton::kernels::detail

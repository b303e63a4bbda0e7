#include "biphoton/kernels.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)

#include "avx2_math.hpp"

// ---- AVX2+FMA kernels ----
//
// Four-lane versions of the scalar loops.  Reduction order is fixed: four
// partial accumulators combined once at the end, remainder elements appended
// through the scalar path afterwards.  That order never depends on data, so
// results are reproducible.

namespace biphoton::kernels::detail {
namespace {

using avx2math::exp4;
using avx2math::sincos4;

double reduce_add(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void a_vexp(const double* x, double* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) dst[i] = std::exp(x[i]);
}

void a_vsincos(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sv, cv;
        sincos4(_mm256_loadu_pd(x + i), &sv, &cv);
        _mm256_storeu_pd(s + i, sv);
        _mm256_storeu_pd(c + i, cv);
    }
    for (; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

constexpr std::size_t resync_interval = 256; // must be a multiple of 4

std::complex<double> a_phase_weighted_sum(const double* re, const double* im,
                                          std::size_t n, double phi0, double step) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    // lane j carries phase phi0 + (k+j) step and advances by 4*step
    const double c4 = std::cos(4.0 * step), s4 = std::sin(-4.0 * step);
    const __m256d mc = _mm256_set1_pd(c4), ms = _mm256_set1_pd(s4);

    std::size_t base = 0;
    const std::size_t nvec = n / 4 * 4;
    for (; base < nvec; base += resync_interval) {
        const std::size_t end = std::min(nvec, base + resync_interval);
        double a0 = phi0 + static_cast<double>(base) * step;
        double lr[4], li[4];
        for (int j = 0; j < 4; ++j) {
            lr[j] = std::cos(a0 + j * step);
            li[j] = -std::sin(a0 + j * step);
        }
        __m256d pr = _mm256_loadu_pd(lr), pi = _mm256_loadu_pd(li);
        for (std::size_t k = base; k < end; k += 4) {
            const __m256d gr = _mm256_loadu_pd(re + k);
            const __m256d gi = _mm256_loadu_pd(im + k);
            acc_re = _mm256_add_pd(acc_re,
                                   _mm256_fmsub_pd(gr, pr, _mm256_mul_pd(gi, pi)));
            acc_im = _mm256_add_pd(acc_im,
                                   _mm256_fmadd_pd(gr, pi, _mm256_mul_pd(gi, pr)));
            const __m256d npr = _mm256_fmsub_pd(pr, mc, _mm256_mul_pd(pi, ms));
            pi = _mm256_fmadd_pd(pr, ms, _mm256_mul_pd(pi, mc));
            pr = npr;
        }
    }

    double out_re = reduce_add(acc_re), out_im = reduce_add(acc_im);
    for (std::size_t k = nvec; k < n; ++k) {
        const double ang = phi0 + static_cast<double>(k) * step;
        const double pr = std::cos(ang), pi = -std::sin(ang);
        out_re += re[k] * pr - im[k] * pi;
        out_im += re[k] * pi + im[k] * pr;
    }
    return {out_re, out_im};
}

std::complex<double> a_weighted_cexp_sum(const double* g, const double* phi,
                                         const double* w, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(w + i),
                                        exp4(_mm256_loadu_pd(g + i)));
        __m256d sv, cv;
        sincos4(_mm256_loadu_pd(phi + i), &sv, &cv);
        acc_re = _mm256_fmadd_pd(m, cv, acc_re);
        acc_im = _mm256_fmadd_pd(m, sv, acc_im);
    }
    double out_re = reduce_add(acc_re), out_im = reduce_add(acc_im);
    for (; i < n; ++i) {
        const double m = w[i] * std::exp(g[i]);
        out_re += m * std::cos(phi[i]);
        out_im += m * std::sin(phi[i]);
    }
    return {out_re, out_im};
}

std::complex<double> a_sinc_weighted_cexp_sum(const double* x, const double* g,
                                              const double* phi, const double* w,
                                              std::size_t n) {
    const __m256d tiny = _mm256_set1_pd(1e-6);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        __m256d sx, cx;
        sincos4(xv, &sx, &cx);
        const __m256d absx = _mm256_andnot_pd(_mm256_set1_pd(-0.0), xv);
        const __m256d small = _mm256_cmp_pd(absx, tiny, _CMP_LT_OQ);
        // sin(x)/x, with the x->0 limit series where division would lose bits
        const __m256d safe_x = _mm256_blendv_pd(xv, one, small);
        const __m256d ratio = _mm256_div_pd(sx, safe_x);
        const __m256d series =
            _mm256_fnmadd_pd(_mm256_mul_pd(xv, xv), sixth, one);
        const __m256d sincv = _mm256_blendv_pd(ratio, series, small);

        const __m256d m = _mm256_mul_pd(
            sincv, _mm256_mul_pd(_mm256_loadu_pd(w + i),
                                 exp4(_mm256_loadu_pd(g + i))));
        __m256d sp, cp;
        sincos4(_mm256_loadu_pd(phi + i), &sp, &cp);
        acc_re = _mm256_fmadd_pd(m, cp, acc_re);
        acc_im = _mm256_fmadd_pd(m, sp, acc_im);
    }
    double out_re = reduce_add(acc_re), out_im = reduce_add(acc_im);
    for (; i < n; ++i) {
        const double ax = std::fabs(x[i]);
        const double sc = ax < 1e-6 ? 1.0 - x[i] * x[i] / 6.0 : std::sin(x[i]) / x[i];
        const double m = w[i] * std::exp(g[i]) * sc;
        out_re += m * std::cos(phi[i]);
        out_im += m * std::sin(phi[i]);
    }
    return {out_re, out_im};
}

} // namespace

const kernel_table& avx2_table() {
    static const kernel_table t{a_vexp, a_vsincos, a_phase_weighted_sum,
                                a_weighted_cexp_sum, a_sinc_weighted_cexp_sum};
    return t;
}

} // namespace biphoton::kernels::detail

#else // no AVX2 at compile time: table must still link, but is never selected

#include "biphoton/errors.hpp"

namespace biphoton::kernels::detail {
const kernel_table& avx2_table() {
    throw biphoton::config_error("avx2 kernels not compiled into this binary");
}
} // namespace biphoton::kernels::detail

#endif

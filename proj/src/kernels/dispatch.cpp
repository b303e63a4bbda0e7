#include "biphoton/kernels.hpp"

#include "biphoton/errors.hpp"

#include <atomic>

// ---- runtime backend selection ----
//
// Resolved once from CPUID on first use; set_backend lets tests pin either
// implementation.  The table pointer is the only mutable state.

namespace biphoton::kernels {

bool avx2_supported() {
#if defined(__AVX2__) && defined(__FMA__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

std::atomic<const detail::kernel_table*> g_table{nullptr};
std::atomic<backend> g_backend{backend::scalar};

const detail::kernel_table* resolve() {
    const detail::kernel_table* t = g_table.load(std::memory_order_acquire);
    if (t) return t;
    if (avx2_supported()) {
        g_backend.store(backend::avx2, std::memory_order_relaxed);
        t = &detail::avx2_table();
    } else {
        g_backend.store(backend::scalar, std::memory_order_relaxed);
        t = &detail::scalar_table();
    }
    g_table.store(t, std::memory_order_release);
    return t;
}

} // namespace

backend active_backend() {
    resolve();
    return g_backend.load(std::memory_order_relaxed);
}

void set_backend(backend b) {
    if (b == backend::avx2 && !avx2_supported())
        throw config_error("avx2 backend requested but this CPU does not support avx2+fma");
    g_backend.store(b, std::memory_order_relaxed);
    g_table.store(b == backend::avx2 ? &detail::avx2_table() : &detail::scalar_table(),
                  std::memory_order_release);
}

std::string backend_name(backend b) {
    return b == backend::avx2 ? "avx2" : "scalar";
}

void vexp(const double* x, double* dst, std::size_t n) {
    resolve()->vexp(x, dst, n);
}

void vsincos(const double* x, double* s, double* c, std::size_t n) {
    resolve()->vsincos(x, s, c, n);
}

std::complex<double> phase_weighted_sum(const double* re, const double* im,
                                        std::size_t n, double phi0, double step) {
    return resolve()->phase_weighted_sum(re, im, n, phi0, step);
}

std::complex<double> weighted_cexp_sum(const double* g, const double* phi,
                                       const double* w, std::size_t n) {
    return resolve()->weighted_cexp_sum(g, phi, w, n);
}

std::complex<double> sinc_weighted_cexp_sum(const double* x, const double* g,
                                            const double* phi, const double* w,
                                            std::size_t n) {
    return resolve()->sinc_weighted_cexp_sum(x, g, phi, w, n);
}

} // namespace biphoton::kernels

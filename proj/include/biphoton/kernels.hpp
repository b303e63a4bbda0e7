#pragma once

#include <complex>
#include <cstddef>
#include <string>

// ---- vectorized inner loops ----
//
// Every hot loop in the project funnels through the five primitives below.
// Each has a scalar reference implementation (plain libm loops, the ground
// truth) and an AVX2+FMA implementation; the active one is chosen at runtime
// from CPUID, with an override hook so tests can force either backend and
// assert equivalence.
//
// Design notes:
//  * phase_weighted_sum evaluates sum_k g_k exp(-i(phi0 + k step)) with a
//    stride recurrence (complex multiply per element) resynchronized from libm
//    every 256 elements, so phase drift stays below ~3e-14 while avoiding
//    large-argument trig reduction entirely.  Discrete transforms and the
//    interference-map reductions are both this shape.
//  * weighted_cexp_sum and sinc_weighted_cexp_sum are the quadrature row
//    shapes: sum_k w_k exp(g_k) exp(i phi_k), optionally times sinc(x_k).
//    Phase arguments there stay below a few hundred radians, well inside the
//    Cody-Waite reduction range of the vector sincos.
//  * Accumulation order is fixed per backend (serial for scalar, four fixed
//    partial lanes for AVX2), so results are bit-reproducible run to run on a
//    given machine.

namespace biphoton::kernels {

enum class backend { scalar, avx2 };

// backend selected for this process (CPUID-resolved on first use)
backend active_backend();

// force a backend; throws config_error if unsupported on this CPU
void set_backend(backend b);

bool avx2_supported();

std::string backend_name(backend b);

// dst[i] = exp(x[i])
void vexp(const double* x, double* dst, std::size_t n);

// s[i] = sin(x[i]), c[i] = cos(x[i]); valid for |x| up to ~1e6 rad
void vsincos(const double* x, double* s, double* c, std::size_t n);

// sum_k (re[k] + i im[k]) * exp(-i (phi0 + k*step))
std::complex<double> phase_weighted_sum(const double* re, const double* im,
                                        std::size_t n, double phi0, double step);

// sum_k w[k] * exp(g[k]) * exp(i phi[k])
std::complex<double> weighted_cexp_sum(const double* g, const double* phi,
                                       const double* w, std::size_t n);

// sum_k w[k] * exp(g[k]) * sinc(x[k]) * exp(i phi[k]),  sinc(x) = sin(x)/x
std::complex<double> sinc_weighted_cexp_sum(const double* x, const double* g,
                                            const double* phi, const double* w,
                                            std::size_t n);

// ---- per-backend entry points (exposed for equivalence tests) ----
namespace detail {

struct kernel_table {
    void (*vexp)(const double*, double*, std::size_t);
    void (*vsincos)(const double*, double*, double*, std::size_t);
    std::complex<double> (*phase_weighted_sum)(const double*, const double*,
                                               std::size_t, double, double);
    std::complex<double> (*weighted_cexp_sum)(const double*, const double*,
                                              const double*, std::size_t);
    std::complex<double> (*sinc_weighted_cexp_sum)(const double*, const double*,
                                                   const double*, const double*,
                                                   std::size_t);
};

const kernel_table& scalar_table();
const kernel_table& avx2_table(); // valid only if avx2_supported()

} // namespace detail

} // namespace biphoton::kernels

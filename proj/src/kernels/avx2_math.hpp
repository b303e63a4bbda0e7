#pragma once

#include <immintrin.h>

// ---- 4-lane double-precision exp and sincos ----
//
// Self-contained AVX2+FMA transcendentals, accurate to ~2 ulp over the ranges
// the kernels actually use:
//   exp    : full double range (clamped to +-745 to avoid inf/denormal traps)
//   sincos : |x| below ~2^20 rad (argument reduction is 3-term Cody-Waite with
//            the pi/2 split, which holds ~1e-17 relative up to that range; the
//            largest phase any caller produces is a few thousand rad)
//
// Polynomials are plain Taylor series carried far enough that the truncation
// term is below 1 ulp at the reduction-interval edge:
//   exp  : degree 13 on |r| <= ln2/2       (0.3466^13/13! ~ 2e-16 relative)
//   sin  : odd terms through x^17 on |y| <= pi/4   (~5e-17)
//   cos  : even terms through x^16 on |y| <= pi/4

namespace biphoton::kernels::avx2math {

inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    // clamp to the normal range: 2^k scaling via the exponent field cannot
    // represent subnormal results, so the low side floors at exp(-708)~3e-308
    x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(709.0));

    const __m256d kf = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    // r = x - k*ln2, split for accuracy
    __m256d r = _mm256_fnmadd_pd(kf, ln2_hi, x);
    r = _mm256_fnmadd_pd(kf, ln2_lo, r);

    // Horner, exp(r) = 1 + r(1 + r/2(1 + ...)), coefficients 1/n!
    const double inv_fact[] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
        1.0 / 362880.0, 1.0 / 40320.0, 1.0 / 5040.0, 1.0 / 720.0,
        1.0 / 120.0, 1.0 / 24.0, 1.0 / 6.0, 0.5, 1.0, 1.0};
    __m256d p = _mm256_set1_pd(inv_fact[0]);
    for (int i = 1; i < 14; ++i)
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[i]));

    // scale by 2^k via exponent-field arithmetic
    const __m128i ki = _mm256_cvtpd_epi32(kf);
    const __m256i ki64 = _mm256_cvtepi32_epi64(ki);
    const __m256i biased = _mm256_add_epi64(ki64, _mm256_set1_epi64x(1023));
    const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
    return _mm256_mul_pd(p, scale);
}

inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
    const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
    // pi/2 in three non-overlapping pieces (Cody-Waite)
    const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e0);
    const __m256d pio2_2 = _mm256_set1_pd(6.07710050650619224932e-11);
    const __m256d pio2_3 = _mm256_set1_pd(2.04712396620334634618e-21);

    const __m256d qf = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d y = _mm256_fnmadd_pd(qf, pio2_1, x);
    y = _mm256_fnmadd_pd(qf, pio2_2, y);
    y = _mm256_fnmadd_pd(qf, pio2_3, y);

    const __m256d y2 = _mm256_mul_pd(y, y);

    // sin(y) = y * S(y^2), odd Taylor through y^17
    const double sc[] = {
        2.81145725434552076320e-15,  // 1/17!
        -7.64716373181981647590e-13, // -1/15!
        1.60590438368216145994e-10,  // 1/13!
        -2.50521083854417187751e-8,  // -1/11!
        2.75573192239858906526e-6,   // 1/9!
        -1.98412698412698412698e-4,  // -1/7!
        8.33333333333333333333e-3,   // 1/5!
        -1.66666666666666666667e-1}; // -1/3!
    __m256d sp = _mm256_set1_pd(sc[0]);
    for (int i = 1; i < 8; ++i)
        sp = _mm256_fmadd_pd(sp, y2, _mm256_set1_pd(sc[i]));
    const __m256d siny =
        _mm256_fmadd_pd(_mm256_mul_pd(sp, y2), y, y);

    // cos(y) = C(y^2), even Taylor through y^16
    const double cc[] = {
        -1.14707455977297247139e-11, // -1/14! (y^16 term folded below)
        2.08767569878680989792e-9,   // 1/12!  -- see note
        -2.75573192239858906526e-7,  // -1/10!
        2.48015873015873015873e-5,   // 1/8!
        -1.38888888888888888889e-3,  // -1/6!
        4.16666666666666666667e-2};  // 1/4!
    // note: start one order higher for symmetry with sin
    const __m256d c16 = _mm256_set1_pd(4.77947733238738529744e-14); // 1/16!
    __m256d cp = _mm256_fmadd_pd(c16, y2, _mm256_set1_pd(cc[0]));
    for (int i = 1; i < 6; ++i)
        cp = _mm256_fmadd_pd(cp, y2, _mm256_set1_pd(cc[i]));
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d cosy = _mm256_fmadd_pd(cp, y2, _mm256_set1_pd(-0.0)); // cp*y2
    cosy = _mm256_fnmadd_pd(half, y2, _mm256_fmadd_pd(cosy, y2, one));

    // quadrant swap: q mod 4 selects (sin,cos) -> (cos,-sin) -> (-sin,-cos) -> ...
    const __m128i qi = _mm256_cvtpd_epi32(qf);
    const __m256i q64 = _mm256_cvtepi32_epi64(qi);
    const __m256i bit0 = _mm256_and_si256(q64, _mm256_set1_epi64x(1));
    const __m256i bit1 = _mm256_and_si256(_mm256_srli_epi64(q64, 1), _mm256_set1_epi64x(1));
    const __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
    const __m256d neg = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(1)));

    __m256d s = _mm256_blendv_pd(siny, cosy, swap);
    __m256d c = _mm256_blendv_pd(cosy, siny, swap);
    // sign of sin flips when q mod 4 in {2,3}; sign of cos flips when the
    // swapped-in value came from {1,2}
    const __m256d sgn = _mm256_set1_pd(-0.0);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg, sgn));
    const __m256d cflip = _mm256_xor_pd(swap, neg); // XOR of the two bits
    c = _mm256_xor_pd(c, _mm256_and_pd(cflip, sgn));

    *s_out = s;
    *c_out = c;
}

} // namespace biphoton::kernels::avx2math

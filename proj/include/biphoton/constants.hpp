#pragma once

#include <cmath>

// ---- frozen reference dataset ----
//
// Scalars for collinear type-II ppKTP pumped cw at 405.5 nm (pump y-polarized,
// signal y / idler z at 811 nm, crystal held near 54 C).  Derived once from
// published fits and frozen here so that the linearized dispersion mode, the
// closed-form model and the tests all agree to the last digit:
//
//   refractive indices   Fan et al., Appl. Opt. 26, 2390 (1987)
//   thermo-optic + expansion  Emanueli & Arie, Appl. Opt. 42, 6661 (2003)
//
// tools/dispersion_oracle.py re-derives every number below from those fits;
// run it if you suspect a transcription error.  The exact-sellmeier dispersion
// mode evaluates the fits directly and is tested to reproduce these scalars.

namespace biphoton::constants {

inline constexpr double c_light = 299792458.0; // m/s

// decay constant of the exponential surrogate for |sinc|, exp(-0.455|x|)
inline constexpr double sinc_decay = 0.455;

} // namespace biphoton::constants

namespace biphoton::ktp {

// pump carrier
inline constexpr double lambda_pump = 405.5e-9;         // m
inline constexpr double omega_pump = 4.6452566395e15;   // rad/s, 2 pi c / lambda_pump

// reference temperature and crystal length of the frozen dataset
inline constexpr double T0_celsius = 54.0;
inline constexpr double crystal_length = 15e-3;         // m

// refractive indices at the carrier wavelengths, T0
inline constexpr double n0_pump = 1.8411315555;   // y, 405.5 nm
inline constexpr double n0_signal = 1.7568097924; // y, 811 nm
inline constexpr double n0_idler = 1.8450586511;  // z, 811 nm

// group slownesses dk/domega at 811 nm, T0
inline constexpr double slowness_signal = 6.0210137779e-9; // s/m (y)
inline constexpr double slowness_idler = 6.3719884245e-9;  // s/m (z)

// group-slowness walk-off F = slowness_idler - slowness_signal.  Positive by
// construction here (idler is the slow z ray), so no relabeling is needed for
// the frozen dataset.
inline constexpr double walkoff_F = 3.5097464658e-10; // s/m

// thermal detuning of the collinear mismatch, d(Delta k_z)/dT at degeneracy
inline constexpr double thermal_detuning_b = 208.56711566; // rad/(m K)

// first-order quasi-phase-matching period at T0 (human-readable default;
// calibrate to machine precision before exact-mode phase matching)
inline constexpr double poling_period = 10.087734e-6; // m

// pump wavenumber in the crystal, omega_pump * n0_pump / c
inline constexpr double k0_pump = 2.8528164583e7; // rad/m

// thermal expansion of the poling region (Emanueli & Arie):
// Lambda(T)/Lambda(25C) = 1 + a1 (T-25) + a2 (T-25)^2.
// The single-coefficient crystal config uses the tangent slope at T0:
// a = a1 + 2 a2 (T0 - 25).
inline constexpr double expansion_a1 = 6.7e-6;
inline constexpr double expansion_a2 = 11e-9;
inline constexpr double thermal_poling_coefficient =
    expansion_a1 + 2.0 * expansion_a2 * (T0_celsius - 25.0);

// ---- derived closed-form scalars ----
// alpha = (L F / 2)(0.455 + i) governs the positive-frequency tail of the
// closed-form spectrum; w_opt is the detection waist that symmetrizes it.
inline constexpr double re_alpha = 0.455 * crystal_length * walkoff_F / 2.0; // s
inline constexpr double im_alpha = crystal_length * walkoff_F / 2.0;         // s
inline constexpr double w_opt_sq = 2.0 * 0.455 * crystal_length / k0_pump;   // m^2
inline const double w_opt = std::sqrt(w_opt_sq);                              // m

// frequency shift per kelvin of the spectral envelope, b / F
inline constexpr double b_over_F = thermal_detuning_b / walkoff_F; // rad/(s K)

// default spectral grid: 2048 points spanning 12 decay lengths of the
// positive-frequency tail on each side of degeneracy
inline constexpr int default_grid_points = 2048;
inline constexpr double default_grid_half_span = 12.0 / re_alpha; // rad/s

// default beam geometry (pump waist 7.6 um, detection waist 30 um)
inline constexpr double default_pump_waist = 7.6e-6; // m
inline constexpr double default_detection_waist = 30e-6; // m

} // namespace biphoton::ktp

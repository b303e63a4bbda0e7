#pragma once

#include "biphoton/dispersion.hpp"
#include "biphoton/spectrum.hpp"

#include <complex>
#include <vector>

// ---- closed-form spectral model ----
//
// For a cw pump, thin transverse phase and the exponential surrogate for the
// longitudinal sinc, the projected joint spectrum integrates in closed form.
// With alpha = (L F / 2)(0.455 + i) and the symmetrizing waist
// w_opt^2 = 2 * 0.455 * L / k0p:
//
//   Phi(Omega >= 0) = A exp(-alpha Omega)
//   Phi(Omega <  0) = A [ exp(-alpha Omega) exp(g+ Omega)
//                         - R exp(conj(alpha) Omega) (exp(g- Omega) - 1) ]
//
//   g+-   = (w_d^2 +- w_opt^2) F k0p / 4
//   R     = (w_d^2 + w_opt^2) / (w_d^2 - w_opt^2)
//   A     = 4 w_p w_d^2 / ( sqrt(2 pi) (2 w_p^2 + w_d^2 - i w_opt^2 / 0.455)
//                                       (w_d^2 + w_opt^2) )
//
// Both negative-branch exponents share the same leading rate
// kappa = w_d^2 F k0p / 4 - i Im(alpha), so near w_d = w_opt the difference
// R [exp(g- Omega) - 1] suffers catastrophic cancellation (R diverges).  The
// implementation switches to the equivalent series form
//
//   Phi(Omega < 0) = A exp(kappa Omega)
//                    [ 1 - (w_d^2 + w_opt^2)(F k0p / 4) Omega phi1(delta Omega) ]
//
// with delta = conj(alpha) - kappa = (F k0p / 4)(w_opt^2 - w_d^2) and
// phi1(z) = expm1(z)/z, which is exact for all w_d and regular at w_d = w_opt.
// The branch at Omega = 0 is owned by the non-negative side; both forms give
// exactly A there.
//
// Temperature moves the whole envelope along the detuning axis:
//   Phi_T(Omega) = Phi(Omega + (b/F)(T - T0)).

namespace biphoton {

struct ToyModelConstants {
    std::complex<double> A = 0.0;     // prefactor, s / m... (dimensionful)
    std::complex<double> alpha = 0.0; // s
    double w_opt = 0.0;               // m
    double F = 0.0;                   // s/m
    double k0p = 0.0;                 // rad/m
    double L = 0.0;                   // m
    double w_p = 0.0;                 // m
    double w_d = 0.0;                 // m
};

// assemble the constants from the beam geometry and dispersion scalars
ToyModelConstants toy_constants(const PumpConfig& pump, const DetectionConfig& det,
                                const CrystalConfig& crystal,
                                const DispersionModel& model);

// single-point evaluation at detuning Omega (rad/s), reference temperature
std::complex<double> toy_value(const ToyModelConstants& k, double Omega);

// force the series path regardless of |w_d - w_opt| (used by the
// branch-equivalence tests; production code switches automatically)
std::complex<double> toy_value_series(const ToyModelConstants& k, double Omega);

// sampled spectrum at temperature T.  b_over_F (rad/(s K)) converts the
// temperature offset into the detuning shift; pass the model's b / F.
SpectralWavefunction toy_spectrum(const ToyModelConstants& k,
                                  const std::vector<double>& omega_grid,
                                  double T, double T0, double b_over_F);

// convenience: reference temperature, no shift
SpectralWavefunction toy_spectrum(const ToyModelConstants& k,
                                  const std::vector<double>& omega_grid);

} // namespace biphoton

#pragma once

#include "biphoton/dispersion.hpp"
#include "biphoton/spectrum.hpp"

#include <complex>
#include <vector>

// ---- projection of the pair amplitude onto detection modes ----
//
// The joint spectral amplitude after projecting signal and idler onto
// Gaussian detection modes of waist w_d is a transverse-momentum integral of
//
//   E_p(p + q) . K(dk_z L / 2) e^{-i dk_z L / 2}
//     . e^{-w_d^2 (|p|^2 + |q|^2) / 4} . e^{i L (|p|^2 + |q|^2) / (2 k0p)}
//
// (pump envelope, longitudinal kernel with its matching phase, detection
// projection, exit-face curvature phase).  Two integrand variants:
//
//   approximated  the longitudinal |sinc| is replaced by exp(-0.455 |x|) and
//                 the mismatch by its paraxial closed form.  In the rotated
//                 coordinates u = p + q, v = p - q the integral factorizes
//                 into two radial (s = r^2) integrals: a detuning-independent
//                 pump-sector piece and a per-detuning kernel piece whose
//                 only kink sits where the mismatch changes sign.
//   exact         the true sin(x)/x kernel and the mismatch supplied by the
//                 dispersion model (closed form for linearized, full index
//                 differences for exact_sellmeier).  Reduced either to a 3-d
//                 (|p|^2, |q|^2, relative angle) quadrature using rotational
//                 symmetry, or brute-force 4-d for the reduction crosscheck.
//                 Evanescent corners of the domain contribute nothing and are
//                 clipped to zero weight.
//
// Overall scale follows the prefactor w_p w_d^2 / (2 pi)^(3/2); all quoted
// comparisons are between unit-norm spectra, so the scale convention never
// enters results.

namespace biphoton {

enum class QuadScheme { tensor_gauss, adaptive };
enum class QuadReduction { full_4d, azimuthal_3d };
enum class IntegrandKind { exact, approximated };

struct QuadratureSpec {
    QuadScheme scheme = QuadScheme::tensor_gauss;
    // Gauss-Legendre order per panel (approximated) or per axis (exact)
    int nodes_per_axis = 16;
    // transverse momentum cutoff, rad/m; 0 selects 8 * max(1/w_d, 1/w_p).
    // An explicit value below 6 * max(1/w_d, 1/w_p) is rejected: the
    // integrand has not decayed enough there for the truncation to be safe.
    double k_max = 0.0;
    QuadReduction reduction = QuadReduction::azimuthal_3d;
    // adaptive scheme: double the order until the peak-relative sup change
    // of the spectrum drops below tol, at most max_refinements doublings
    double adaptive_tol = 1e-4;
    int max_refinements = 5;
    // exact mode only: swap the true sin(x)/x for the exponential surrogate,
    // isolating geometry effects from the kernel-shape difference
    bool surrogate_longitudinal = false;
};

// sensible starting orders per integrand kind
QuadratureSpec default_quadrature(IntegrandKind kind);

// throws config_error on bad order / cutoff / tolerances
void validate(const QuadratureSpec& q, const PumpConfig& pump,
              const DetectionConfig& det);

// exponential surrogate for the longitudinal kernel magnitude
double sinc_approx(double x);

// sin(x)/x with the series limit near zero
double sinc_exact(double x);

// Gaussian detection projection, e^{-w_d^2 |q|^2 / 4}, peak 1
double detection_mode(const vec2& q, double w_d);

// Gaussian pump envelope, e^{-w_p^2 |u|^2 / 4}, peak 1
double pump_envelope(const vec2& u, double w_p);

// pump envelope times longitudinal kernel and its phase at one phase-space
// point: E_p(p+q) sinc(dk_z L/2) e^{-i dk_z L/2}.  No detection projection
// and no exit-face phase; those belong to the projection integrand.
std::complex<double> mode_function(const DispersionModel& m, const CrystalConfig& c,
                                   const PumpConfig& pump, double Omega,
                                   const MomentumPair& k, double T);

// project onto the detection modes over a uniform detuning grid at crystal
// temperature T.  Returns the dimensionful (unnormalized) spectrum.
SpectralWavefunction project_spectrum(const std::vector<double>& omega_grid, double T,
                                      const PumpConfig& pump, const DetectionConfig& det,
                                      const CrystalConfig& crystal,
                                      const DispersionModel& model,
                                      const QuadratureSpec& quad, IntegrandKind kind);

} // namespace biphoton

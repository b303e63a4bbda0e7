#pragma once

#include <complex>
#include <string>
#include <vector>

// ---- spectral wavefunction container ----
//
// A joint spectral amplitude sampled on a uniform detuning grid Omega
// (rad/s, relative to degeneracy omega_p/2).  Signal rides at omega_p/2 +
// Omega, idler at omega_p/2 - Omega, so one axis describes the pair.

namespace biphoton {

struct SpectrumMeta {
    double w_p = 0.0;       // pump waist, m
    double w_d = 0.0;       // detection waist, m
    std::string model;      // "toy", "numeric-approx" or "numeric-exact"
    bool compensated = false; // walk-off compensation phase applied
};

struct SpectralWavefunction {
    std::vector<double> omega_grid;            // rad/s, uniform, increasing
    std::vector<std::complex<double>> values;  // dimensionful amplitude
    double T = 0.0;                            // crystal temperature, Celsius
    SpectrumMeta meta;

    std::size_t size() const { return omega_grid.size(); }
};

// centered uniform grid of n points with the given half span:
// Omega_k = (k - n/2) * (2 * half_span / n)
std::vector<double> uniform_grid(int n, double half_span);

// grid spacing; config_error if the grid is not uniform and increasing
double grid_spacing(const std::vector<double>& omega_grid);

// rescale so that sum |Phi_k|^2 dOmega = 1.  Pure real scale factor; the
// global phase is left untouched.  zero_norm_error if the norm vanishes.
void normalize(SpectralWavefunction& s);

// L2 norm under the same Riemann measure, sqrt(sum |Phi_k|^2 dOmega)
double l2_norm(const SpectralWavefunction& s);

} // namespace biphoton

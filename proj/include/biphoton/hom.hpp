#pragma once

#include "biphoton/analysis.hpp"
#include "biphoton/spectrum.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// ---- two-photon interference maps ----
//
// Feeding the pair into the two faces of a balanced beamsplitter with a
// relative delay tau, the coincidence rate against delay and crystal
// temperature is
//
//   C(tau, T) = 1/2 [ 1 - Re sum_k g_k e^{-2 i Omega_k tau} / sum_k |Phi_T[k]|^2 ]
//   g_k       = Phi_T[k] conj(Phi_T[mirror(k)])
//
// where mirror(k) = N - k pairs each detuning with its negative on the
// centered even grid (bin 0, the unpaired edge bin, is skipped).  Perfectly
// exchange-symmetric spectra interfere to C = 0 at tau = 0; the spectral
// asymmetry of this source keeps the dip finite, and temperature walks the
// envelope through degeneracy.
//
// The group-velocity walk-off displaces the two-photon envelope by L F / 2;
// providers normally apply the compensating phase e^{+i Omega L F / 2} so the
// dip sits near tau = 0 (hardware does the same with a birefringent
// pre-compensator).
//
// Scanning T also scans which detuning sits at degeneracy, so the map is a
// windowed cosine transform of the spectrum.  recover_spectral_intensity
// inverts that: a Tukey-windowed tau integral of the interference kernel
// K = 1 - 2C evaluated on the temperature-mapped detuning grid
// Omega0(T) = -(b/F)(T - T0).

namespace biphoton {

struct HomMapMeta {
    double w_p = 0.0;
    double w_d = 0.0;
    std::string model;
    bool compensated = false;
    double T0 = 0.0; // reference temperature of the temperature axis, Celsius
};

struct HomMap {
    std::vector<double> tau_grid;         // s
    std::vector<double> temperature_grid; // Celsius
    std::vector<double> C;                // row-major [tau][temperature]
    HomMapMeta meta;

    double at(std::size_t i_tau, std::size_t j_T) const {
        return C[i_tau * temperature_grid.size() + j_T];
    }
};

using SpectrumProvider = std::function<SpectralWavefunction(double T)>;

// provider evaluating the chosen model at temperature T on the given grid,
// optionally applying walk-off compensation
SpectrumProvider make_spectrum_provider(SpectrumModel model, const PumpConfig& pump,
                                        const DetectionConfig& det,
                                        const CrystalConfig& crystal,
                                        const DispersionModel& disp,
                                        const QuadratureSpec& quad,
                                        const std::vector<double>& omega_grid,
                                        bool compensate);

// coincidence map over a delay and temperature grid; zero_norm_error if the
// provider returns an empty spectrum at some temperature
HomMap hom_map(const SpectrumProvider& provider, const std::vector<double>& tau_grid,
               const std::vector<double>& temperature_grid, const HomMapMeta& meta);

// single-temperature dip C(tau) for one spectrum
std::vector<double> hom_dip(const SpectralWavefunction& s,
                            const std::vector<double>& tau_grid);

// dip visibility, 1 - 2 min C
double visibility(const std::vector<double>& dip);

// paper-style scan grids: tau from -3.05 ps in 0.12/scale ps steps to +3.07 ps,
// temperature 45 to 60 C in 0.2 C steps
std::vector<double> default_tau_grid(int scale = 1);
std::vector<double> default_temperature_grid();

struct RecoveredIntensity {
    std::vector<double> omega;     // Omega0(T) grid, rad/s
    std::vector<double> intensity; // un-normalized recovered |Phi|^2
    std::vector<std::string> warnings;
};

// invert the map into a spectral intensity on the temperature-mapped grid.
// b_over_F (rad/(s K)) must be positive (config_error otherwise); the tau
// sampling must satisfy 2 max|Omega0| dtau < pi (nyquist_error otherwise);
// a coverage warning is recorded when the temperature span ends within 3
// recovered rms widths of the envelope.
RecoveredIntensity recover_spectral_intensity(const HomMap& map, double b_over_F);

// deterministic noise injection for robustness studies: adds amplitude *
// uniform(-1, 1) to every cell (clamped back to [0, 1]), seeded LCG
void perturb_map(HomMap& map, double amplitude, std::uint64_t seed);

} // namespace biphoton

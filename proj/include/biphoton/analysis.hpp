#pragma once

#include "biphoton/dispersion.hpp"
#include "biphoton/projection.hpp"
#include "biphoton/spectrum.hpp"

#include <complex>
#include <string>
#include <vector>

// ---- temporal transforms and width metrics ----
//
// The temporal wavefunction is the centered unitary discrete transform
//
//   Phi_t[j] = (dOmega / sqrt(2 pi)) sum_k Phi[k] exp(-i Omega_k t_j)
//
// on t_j = (j - N/2) dt with dt = 2 pi / (N dOmega), so Parseval holds
// exactly: sum |Phi_t|^2 dt = sum |Phi|^2 dOmega.  A symmetric spectrum
// peaks at t = 0.
//
// Width metrics are intensity-weighted second moments.  The wavelength width
// uses the exact map lambda(Omega) = 2 pi c / (omega_p/2 + Omega) rather than
// a first-order Jacobian, so the (small) curvature of the map is kept.

namespace biphoton {

struct TemporalWavefunction {
    std::vector<double> time_grid; // s, uniform, centered
    std::vector<std::complex<double>> values;
};

TemporalWavefunction to_temporal(const SpectralWavefunction& s);

// inverse transform back onto the spectral grid that produced t
SpectralWavefunction from_temporal(const TemporalWavefunction& t,
                                   const std::vector<double>& omega_grid);

// rms width of |Phi(t)|^2 about its mean time
double temporal_width(const TemporalWavefunction& t);

struct WidthReport {
    double mean_lambda = 0.0;     // m
    double delta_lambda = 0.0;    // m, rms
    double delta_t = 0.0;         // s, rms
    double delta_omega_rms = 0.0; // rad/s, rms (diagnostic)
    double w_p = 0.0;             // m
    double w_d = 0.0;             // m
    std::string model;
    std::vector<std::string> warnings;
};

// spectral and temporal widths of one spectrum.  Adds a tail-truncation
// warning when the outermost 1% of bins on either side still hold more than
// 1e-4 of the intensity: second moments are then grid-span-limited.
WidthReport width_report(const SpectralWavefunction& s, const PumpConfig& pump);

// signed intensity asymmetry, sum_{Omega<0} - sum_{Omega>0} of |Phi|^2 dOmega
// for a unit-normalized copy
double intensity_asymmetry(const SpectralWavefunction& s);

// Omega -> -Omega by mirror indexing k <-> N-k (bin 0 is its own mirror on an
// even centered grid); the grid is unchanged
SpectralWavefunction mirror_reversed(const SpectralWavefunction& s);

// multiply by exp(+i Omega L F / 2): re-centers the pair arrival-time
// envelope that the crystal walk-off displaced
void compensate_walkoff(SpectralWavefunction& s, double L, double F);

// ---- waist sweeps ----

enum class SpectrumModel { toy, numeric_approx, numeric_exact };

SpectrumModel parse_model(const std::string& name); // config_error on unknown
std::string model_name(SpectrumModel m);

struct SweepRequest {
    std::vector<double> w_d_list; // m
    std::vector<double> w_p_list; // m
    SpectrumModel model = SpectrumModel::toy;
    std::vector<double> omega_grid;
    double T = 0.0; // evaluated at this crystal temperature
    bool compensate = true;
};

// one report per (w_p, w_d) pair, ordered by w_p then w_d.  A point that
// fails records the error text in its warnings and the sweep continues.
std::vector<WidthReport> sweep_widths(const SweepRequest& req, const PumpConfig& pump,
                                      const DetectionConfig& det,
                                      const CrystalConfig& crystal,
                                      const DispersionModel& model,
                                      const QuadratureSpec& quad);

} // namespace biphoton

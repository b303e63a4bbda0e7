#include "biphoton/hom.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/projection.hpp"
#include "biphoton/toymodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace biphoton {

namespace {

// mirror-correlation weights g_k = Phi[k] conj(Phi[N-k]) (bin 0 skipped) and
// the normalization sum |Phi|^2, shared by hom_map and hom_dip
struct DipKernel {
    std::vector<double> g_re, g_im;
    double norm = 0.0;
    double om0 = 0.0, dom = 0.0;
};

DipKernel build_dip_kernel(const SpectralWavefunction& s) {
    const std::size_t n = s.size();
    if (n < 2) throw zero_norm_error("hom: spectrum needs at least two samples");
    DipKernel k;
    k.om0 = s.omega_grid.front();
    k.dom = grid_spacing(s.omega_grid);
    k.g_re.assign(n, 0.0);
    k.g_im.assign(n, 0.0);
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(s.values[i]);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw zero_norm_error("hom: spectrum has zero or non-finite norm");
    k.norm = nrm;
    for (std::size_t i = 1; i < n; ++i) {
        const std::complex<double> g = s.values[i] * std::conj(s.values[n - i]);
        k.g_re[i] = g.real();
        k.g_im[i] = g.imag();
    }
    return k;
}

double dip_value(const DipKernel& k, double tau) {
    // sum_k g_k e^{-2 i Omega_k tau}; Omega_k = om0 + k dom
    const std::complex<double> s = kernels::phase_weighted_sum(
        k.g_re.data(), k.g_im.data(), k.g_re.size(), 2.0 * tau * k.om0,
        2.0 * tau * k.dom);
    double c = 0.5 * (1.0 - s.real() / k.norm);
    // Cauchy-Schwarz bounds |sum g| by the norm, so C lies in [0, 1] up to
    // rounding; snap sub-epsilon excursions back to the boundary
    if (c < 0.0 && c > -1e-12) c = 0.0;
    if (c > 1.0 && c < 1.0 + 1e-12) c = 1.0;
    return c;
}

// Tukey window on the tau span: flat over the central 80 percent, cosine
// squared taper to zero over the outer 20
std::vector<double> tukey_weights(const std::vector<double>& tau_grid) {
    const std::size_t n = tau_grid.size();
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    const double tc = 0.5 * (tau_grid.front() + tau_grid.back());
    const double h = 0.5 * (tau_grid.back() - tau_grid.front());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::abs(tau_grid[i] - tc);
        if (x <= 0.8 * h) continue;
        const double c = std::cos(0.5 * M_PI * (x - 0.8 * h) / (0.2 * h));
        w[i] = c * c;
    }
    return w;
}

} // namespace

SpectrumProvider make_spectrum_provider(SpectrumModel model, const PumpConfig& pump,
                                        const DetectionConfig& det,
                                        const CrystalConfig& crystal,
                                        const DispersionModel& disp,
                                        const QuadratureSpec& quad,
                                        const std::vector<double>& omega_grid,
                                        bool compensate) {
    const double L = crystal.length;
    const double F = disp.walkoff_F();
    if (model == SpectrumModel::toy) {
        const ToyModelConstants k = toy_constants(pump, det, crystal, disp);
        const double T0 = crystal.T0;
        const double b_over_F = disp.thermal_detuning_b / F;
        return [=](double T) {
            SpectralWavefunction s = toy_spectrum(k, omega_grid, T, T0, b_over_F);
            if (compensate) compensate_walkoff(s, L, F);
            return s;
        };
    }
    const IntegrandKind kind = model == SpectrumModel::numeric_exact
                                   ? IntegrandKind::exact
                                   : IntegrandKind::approximated;
    return [=](double T) {
        SpectralWavefunction s =
            project_spectrum(omega_grid, T, pump, det, crystal, disp, quad, kind);
        if (compensate) compensate_walkoff(s, L, F);
        return s;
    };
}

HomMap hom_map(const SpectrumProvider& provider, const std::vector<double>& tau_grid,
               const std::vector<double>& temperature_grid, const HomMapMeta& meta) {
    if (tau_grid.empty() || temperature_grid.empty())
        throw config_error("hom_map: empty delay or temperature grid");
    HomMap map;
    map.tau_grid = tau_grid;
    map.temperature_grid = temperature_grid;
    map.meta = meta;
    map.C.assign(tau_grid.size() * temperature_grid.size(), 0.0);
    for (std::size_t j = 0; j < temperature_grid.size(); ++j) {
        const SpectralWavefunction s = provider(temperature_grid[j]);
        const DipKernel k = build_dip_kernel(s);
        for (std::size_t i = 0; i < tau_grid.size(); ++i)
            map.C[i * temperature_grid.size() + j] = dip_value(k, tau_grid[i]);
    }
    return map;
}

std::vector<double> hom_dip(const SpectralWavefunction& s,
                            const std::vector<double>& tau_grid) {
    const DipKernel k = build_dip_kernel(s);
    std::vector<double> c(tau_grid.size());
    for (std::size_t i = 0; i < tau_grid.size(); ++i) c[i] = dip_value(k, tau_grid[i]);
    return c;
}

double visibility(const std::vector<double>& dip) {
    if (dip.empty()) throw config_error("visibility: empty dip");
    return 1.0 - 2.0 * *std::min_element(dip.begin(), dip.end());
}

std::vector<double> default_tau_grid(int scale) {
    if (scale < 1) throw config_error("default_tau_grid: scale must be >= 1");
    const double step = 0.12e-12 / scale;
    const int n = static_cast<int>(std::lround(6.10e-12 / step)) + 1;
    std::vector<double> tau(n);
    for (int i = 0; i < n; ++i) tau[i] = -3.05e-12 + i * step;
    return tau;
}

std::vector<double> default_temperature_grid() {
    std::vector<double> T(76);
    for (int i = 0; i < 76; ++i) T[i] = 45.0 + 0.2 * i;
    return T;
}

RecoveredIntensity recover_spectral_intensity(const HomMap& map, double b_over_F) {
    if (!(b_over_F > 0.0))
        throw config_error("recover_spectral_intensity: calibration b/F must be "
                           "positive (thermal detuning rate over walk-off)");
    if (map.tau_grid.size() < 2)
        throw config_error("recover_spectral_intensity: need at least two delays");
    const double dtau = grid_spacing(map.tau_grid);
    const double T0 = map.meta.T0;

    RecoveredIntensity out;
    out.omega.resize(map.temperature_grid.size());
    for (std::size_t j = 0; j < map.temperature_grid.size(); ++j)
        out.omega[j] = -b_over_F * (map.temperature_grid[j] - T0);

    // the kernel oscillates as e^{-2 i Omega0 tau}; sampling it at spacing
    // dtau resolves the phase only while 2 |Omega0| dtau stays below pi
    double om_max = 0.0;
    for (double om : out.omega) om_max = std::max(om_max, std::abs(om));
    if (2.0 * om_max * dtau >= M_PI)
        throw nyquist_error("recover_spectral_intensity: delay step too coarse "
                            "for the temperature span (2 max|Omega0| dtau >= pi)");

    // windowed DC extraction: I(T) = sum_tau W K dtau / pi with K = 1 - 2C
    const std::vector<double> w = tukey_weights(map.tau_grid);
    out.intensity.assign(map.temperature_grid.size(), 0.0);
    for (std::size_t j = 0; j < map.temperature_grid.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < map.tau_grid.size(); ++i)
            acc += w[i] * (1.0 - 2.0 * map.at(i, j));
        out.intensity[j] = acc * dtau / M_PI;
    }

    // coverage check: the temperature span should extend well past the
    // recovered envelope, or the edges clip real intensity
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < out.omega.size(); ++j) {
        const double wi = std::max(out.intensity[j], 0.0);
        m0 += wi;
        m1 += wi * out.omega[j];
        m2 += wi * out.omega[j] * out.omega[j];
    }
    if (m0 > 0.0) {
        const double mean = m1 / m0;
        const double var = std::max(m2 / m0 - mean * mean, 0.0);
        const double sigma = std::sqrt(var);
        const double edge = std::min(std::abs(out.omega.front() - mean),
                                     std::abs(out.omega.back() - mean));
        if (edge < 3.0 * sigma)
            out.warnings.push_back(
                "coverage: temperature span ends within 3 rms widths of the "
                "recovered envelope; edge intensity may be clipped");
    } else {
        out.warnings.push_back("coverage: recovered intensity is non-positive "
                               "everywhere; span check skipped");
    }
    return out;
}

void perturb_map(HomMap& map, double amplitude, std::uint64_t seed) {
    if (!(amplitude >= 0.0))
        throw config_error("perturb_map: amplitude must be non-negative");
    std::uint64_t x = seed;
    auto next_uniform = [&x]() {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(x >> 11) * 0x1p-53;
    };
    next_uniform(); // warm-up so seed 0 does not map to a near-zero draw
    for (double& c : map.C) {
        c += amplitude * (2.0 * next_uniform() - 1.0);
        c = std::clamp(c, 0.0, 1.0);
    }
}

} // namespace biphoton

#include "biphoton/analysis.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/toymodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biphoton {

namespace {

void split_complex(const std::vector<std::complex<double>>& v, std::vector<double>& re,
                   std::vector<double>& im) {
    re.resize(v.size());
    im.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
}

} // namespace

TemporalWavefunction to_temporal(const SpectralWavefunction& s) {
    const double dOm = grid_spacing(s.omega_grid);
    const std::size_t n = s.size();
    const double dt = 2.0 * M_PI / (static_cast<double>(n) * dOm);
    const double om0 = s.omega_grid.front();

    TemporalWavefunction t;
    t.time_grid.resize(n);
    t.values.resize(n);
    const auto half = static_cast<double>(n / 2);
    for (std::size_t j = 0; j < n; ++j)
        t.time_grid[j] = (static_cast<double>(j) - half) * dt;

    std::vector<double> re, im;
    split_complex(s.values, re, im);
    const double scale = dOm / std::sqrt(2.0 * M_PI);
    for (std::size_t j = 0; j < n; ++j) {
        // sum_k Phi_k exp(-i Omega_k t_j): arithmetic phase in k
        const double tj = t.time_grid[j];
        const auto acc =
            kernels::phase_weighted_sum(re.data(), im.data(), n, om0 * tj, dOm * tj);
        t.values[j] = scale * acc;
    }
    return t;
}

SpectralWavefunction from_temporal(const TemporalWavefunction& t,
                                   const std::vector<double>& omega_grid) {
    grid_spacing(omega_grid); // uniform + increasing, or throws
    const std::size_t n = t.values.size();
    if (omega_grid.size() != n)
        throw config_error("inverse transform needs a grid of matching length");
    const double dt = t.time_grid.size() > 1 ? t.time_grid[1] - t.time_grid[0] : 0.0;
    if (!(dt > 0.0)) throw config_error("temporal grid must be increasing");

    std::vector<double> re, im;
    split_complex(t.values, re, im);
    // conjugate trick: sum g_j exp(+i Omega t_j) = conj(sum conj(g_j) exp(-i ...))
    for (auto& v : im) v = -v;

    SpectralWavefunction s;
    s.omega_grid = omega_grid;
    s.values.resize(n);
    const double t0 = t.time_grid.front();
    const double scale = dt / std::sqrt(2.0 * M_PI);
    for (std::size_t k = 0; k < n; ++k) {
        const double om = omega_grid[k];
        const auto acc =
            kernels::phase_weighted_sum(re.data(), im.data(), n, om * t0, om * dt);
        s.values[k] = scale * std::conj(acc);
    }
    return s;
}

double temporal_width(const TemporalWavefunction& t) {
    const std::size_t n = t.values.size();
    if (n < 2) throw config_error("temporal grid too short for a width");
    double norm = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double p = std::norm(t.values[j]);
        norm += p;
        mean += t.time_grid[j] * p;
    }
    if (!(norm > 0.0)) throw zero_norm_error("temporal intensity vanishes");
    mean /= norm;
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = t.time_grid[j] - mean;
        var += d * d * std::norm(t.values[j]);
    }
    return std::sqrt(var / norm);
}

WidthReport width_report(const SpectralWavefunction& s, const PumpConfig& pump) {
    grid_spacing(s.omega_grid); // validates uniformity
    const std::size_t n = s.size();
    const double omega_p = 2.0 * M_PI * constants::c_light / pump.center_wavelength;

    WidthReport r;
    r.w_p = s.meta.w_p;
    r.w_d = s.meta.w_d;
    r.model = s.meta.model;

    double norm = 0.0;
    for (const auto& v : s.values) norm += std::norm(v);
    if (!(norm > 0.0)) throw zero_norm_error("spectrum has zero intensity");

    // tail occupancy: outermost 1% of bins on each side
    const std::size_t edge = std::max<std::size_t>(1, n / 100);
    double tail = 0.0;
    for (std::size_t k = 0; k < edge; ++k)
        tail += std::norm(s.values[k]) + std::norm(s.values[n - 1 - k]);
    if (tail / norm > 1e-4)
        r.warnings.push_back(
            "tail-truncation: outermost grid bins still carry " +
            std::to_string(tail / norm) +
            " of the intensity; widths are limited by the grid span");

    double mlam = 0.0, mom = 0.0;
    std::vector<double> lam(n);
    for (std::size_t k = 0; k < n; ++k) {
        lam[k] = 2.0 * M_PI * constants::c_light / (0.5 * omega_p + s.omega_grid[k]);
        const double p = std::norm(s.values[k]) / norm;
        mlam += lam[k] * p;
        mom += s.omega_grid[k] * p;
    }
    double vlam = 0.0, vom = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(s.values[k]) / norm;
        vlam += (lam[k] - mlam) * (lam[k] - mlam) * p;
        vom += (s.omega_grid[k] - mom) * (s.omega_grid[k] - mom) * p;
    }
    r.mean_lambda = mlam;
    r.delta_lambda = std::sqrt(vlam);
    r.delta_omega_rms = std::sqrt(vom);

    r.delta_t = temporal_width(to_temporal(s));
    return r;
}

double intensity_asymmetry(const SpectralWavefunction& s) {
    double neg = 0.0, pos = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double p = std::norm(s.values[k]);
        if (s.omega_grid[k] < 0.0) neg += p;
        else if (s.omega_grid[k] > 0.0) pos += p;
    }
    const double tot = neg + pos;
    if (!(tot > 0.0)) throw zero_norm_error("spectrum has zero intensity");
    return (neg - pos) / tot;
}

SpectralWavefunction mirror_reversed(const SpectralWavefunction& s) {
    SpectralWavefunction m = s;
    const std::size_t n = s.size();
    for (std::size_t k = 0; k < n; ++k) m.values[k] = s.values[(n - k) % n];
    return m;
}

void compensate_walkoff(SpectralWavefunction& s, double L, double F) {
    const double rate = 0.5 * L * F;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double ph = rate * s.omega_grid[k];
        s.values[k] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    s.meta.compensated = true;
}

// ---- sweeps ----

SpectrumModel parse_model(const std::string& name) {
    if (name == "toy") return SpectrumModel::toy;
    if (name == "numeric-approx") return SpectrumModel::numeric_approx;
    if (name == "numeric-exact") return SpectrumModel::numeric_exact;
    throw config_error("unknown model '" + name +
                       "'; expected toy, numeric-approx or numeric-exact");
}

std::string model_name(SpectrumModel m) {
    switch (m) {
    case SpectrumModel::toy: return "toy";
    case SpectrumModel::numeric_approx: return "numeric-approx";
    default: return "numeric-exact";
    }
}

std::vector<WidthReport> sweep_widths(const SweepRequest& req, const PumpConfig& pump,
                                      const DetectionConfig& det,
                                      const CrystalConfig& crystal,
                                      const DispersionModel& model,
                                      const QuadratureSpec& quad) {
    if (req.w_d_list.empty() || req.w_p_list.empty())
        throw config_error("sweep needs at least one detection waist and one pump waist");
    grid_spacing(req.omega_grid);

    std::vector<WidthReport> out;
    out.reserve(req.w_d_list.size() * req.w_p_list.size());
    for (double wp : req.w_p_list) {
        for (double wd : req.w_d_list) {
            PumpConfig p = pump;
            p.waist = wp;
            DetectionConfig d = det;
            d.waist = wd;
            WidthReport r;
            r.w_p = wp;
            r.w_d = wd;
            r.model = model_name(req.model);
            try {
                SpectralWavefunction s;
                if (req.model == SpectrumModel::toy) {
                    const auto k = toy_constants(p, d, crystal, model);
                    s = toy_spectrum(k, req.omega_grid, req.T, crystal.T0,
                                     model.thermal_detuning_b / k.F);
                } else {
                    const auto kind = req.model == SpectrumModel::numeric_approx
                                          ? IntegrandKind::approximated
                                          : IntegrandKind::exact;
                    s = project_spectrum(req.omega_grid, req.T, p, d, crystal, model,
                                         quad, kind);
                }
                if (req.compensate)
                    compensate_walkoff(s, crystal.length, std::fabs(model.walkoff_F()));
                WidthReport w = width_report(s, p);
                w.w_p = wp;
                w.w_d = wd;
                w.model = r.model;
                out.push_back(std::move(w));
                continue;
            } catch (const std::exception& e) {
                r.mean_lambda = r.delta_lambda = r.delta_t = r.delta_omega_rms =
                    std::numeric_limits<double>::quiet_NaN();
                r.warnings.push_back(std::string("error: ") + e.what());
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace biphoton

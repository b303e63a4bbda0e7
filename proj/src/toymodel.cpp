#include "biphoton/toymodel.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"

#include <cmath>

namespace biphoton {

namespace {

constexpr double surrogate = constants::sinc_decay; // 0.455

// relative |w_d^2 - w_opt^2| below which the direct branch loses digits
constexpr double series_switch = 1e-6;

std::complex<double> phi1(std::complex<double> z) {
    // (e^z - 1)/z, regular at 0
    if (std::abs(z) < 1e-8) return 1.0 + z / 2.0 + z * z / 6.0;
    const std::complex<double> rot(std::cos(z.imag()), std::sin(z.imag()));
    // e^z - 1 = expm1(x) e^{iy} + (e^{iy} - 1); both addends stay small near
    // the origin, so no cancellation
    return (std::expm1(z.real()) * rot + (rot - 1.0)) / z;
}

} // namespace

ToyModelConstants toy_constants(const PumpConfig& pump, const DetectionConfig& det,
                                const CrystalConfig& crystal,
                                const DispersionModel& model) {
    validate(pump);
    validate(det);
    validate(crystal);
    validate(model);

    ToyModelConstants k;
    k.L = crystal.length;
    k.w_p = pump.waist;
    k.w_d = det.waist;
    const double omega_p = 2.0 * M_PI * constants::c_light / pump.center_wavelength;
    k.k0p = omega_p * model.n0_pump / constants::c_light;

    double F = model.walkoff_F();
    if (F == 0.0)
        throw config_error("group slownesses are equal; the spectral envelope "
                           "degenerates and the closed form does not apply");
    // if the idler were the fast ray, relabel the pair internally so F > 0;
    // the spectrum is the same up to the Omega -> -Omega relabeling symmetry
    if (F < 0.0) F = -F;
    k.F = F;

    const double w_opt_sq = 2.0 * surrogate * k.L / k.k0p;
    k.w_opt = std::sqrt(w_opt_sq);

    k.alpha = 0.5 * k.L * F * std::complex<double>(surrogate, 1.0);

    const double wd2 = k.w_d * k.w_d;
    const std::complex<double> d1(2.0 * k.w_p * k.w_p + wd2, -w_opt_sq / surrogate);
    const double d2 = wd2 + w_opt_sq;
    k.A = 4.0 * k.w_p * wd2 / (std::sqrt(2.0 * M_PI) * d1 * d2);
    return k;
}

namespace {

std::complex<double> cexp(std::complex<double> z) { return std::exp(z); }

std::complex<double> eval_series(const ToyModelConstants& k, double Omega) {
    const double wd2 = k.w_d * k.w_d, wo2 = k.w_opt * k.w_opt;
    const double rate = k.F * k.k0p / 4.0;
    const std::complex<double> kappa(wd2 * rate, -k.alpha.imag());
    const std::complex<double> delta = std::conj(k.alpha) - kappa; // rate*(wo2-wd2)
    return k.A * cexp(kappa * Omega) *
           (1.0 - (wd2 + wo2) * rate * Omega * phi1(delta * Omega));
}

} // namespace

std::complex<double> toy_value_series(const ToyModelConstants& k, double Omega) {
    if (Omega >= 0.0) return k.A * cexp(-k.alpha * Omega);
    return eval_series(k, Omega);
}

std::complex<double> toy_value(const ToyModelConstants& k, double Omega) {
    if (Omega >= 0.0) return k.A * cexp(-k.alpha * Omega);

    const double wd2 = k.w_d * k.w_d, wo2 = k.w_opt * k.w_opt;
    if (std::fabs(wd2 - wo2) < series_switch * wo2) return eval_series(k, Omega);

    const double rate = k.F * k.k0p / 4.0;
    const double gp = (wd2 + wo2) * rate;
    const double gm = (wd2 - wo2) * rate;
    const double R = (wd2 + wo2) / (wd2 - wo2);
    return k.A * (cexp(-k.alpha * Omega) * std::exp(gp * Omega) -
                  R * cexp(std::conj(k.alpha) * Omega) * std::expm1(gm * Omega));
}

SpectralWavefunction toy_spectrum(const ToyModelConstants& k,
                                  const std::vector<double>& omega_grid,
                                  double T, double T0, double b_over_F) {
    grid_spacing(omega_grid); // validates uniformity
    SpectralWavefunction s;
    s.omega_grid = omega_grid;
    s.values.resize(omega_grid.size());
    s.T = T;
    s.meta.w_p = k.w_p;
    s.meta.w_d = k.w_d;
    s.meta.model = "toy";
    const double shift = b_over_F * (T - T0);
    for (std::size_t i = 0; i < omega_grid.size(); ++i)
        s.values[i] = toy_value(k, omega_grid[i] + shift);
    return s;
}

SpectralWavefunction toy_spectrum(const ToyModelConstants& k,
                                  const std::vector<double>& omega_grid) {
    return toy_spectrum(k, omega_grid, ktp::T0_celsius, ktp::T0_celsius, 0.0);
}

// ---- grid and normalization utilities ----

std::vector<double> uniform_grid(int n, double half_span) {
    if (n < 2) throw config_error("grid needs at least two points");
    if (!(half_span > 0.0)) throw config_error("grid half span must be positive");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double d = 2.0 * half_span / n;
    for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = (k - n / 2) * d;
    return g;
}

double grid_spacing(const std::vector<double>& omega_grid) {
    if (omega_grid.size() < 2) throw config_error("grid needs at least two points");
    const double d = omega_grid[1] - omega_grid[0];
    if (!(d > 0.0)) throw config_error("omega grid must be strictly increasing");
    const double span = omega_grid.back() - omega_grid.front();
    for (std::size_t i = 1; i < omega_grid.size(); ++i) {
        const double step = omega_grid[i] - omega_grid[i - 1];
        if (std::fabs(step - d) > 1e-9 * std::fabs(span))
            throw config_error("omega grid is not uniform");
    }
    return d;
}

double l2_norm(const SpectralWavefunction& s) {
    const double d = grid_spacing(s.omega_grid);
    double acc = 0.0;
    for (const auto& v : s.values) acc += std::norm(v);
    return std::sqrt(acc * d);
}

void normalize(SpectralWavefunction& s) {
    if (s.values.size() != s.omega_grid.size())
        throw config_error("spectrum value count does not match its grid");
    const double nrm = l2_norm(s);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw zero_norm_error("spectrum has zero (or non-finite) norm; nothing to normalize");
    const double scale = 1.0 / nrm;
    for (auto& v : s.values) v *= scale;
}

} // namespace biphoton

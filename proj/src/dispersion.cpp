#include "biphoton/dispersion.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"

#include <cmath>
#include <string>

namespace biphoton {

namespace {

constexpr double c_light = constants::c_light;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// ---- Sellmeier fits, lambda in micrometers ----
// Fan et al., Appl. Opt. 26, 2390 (1987), KTP principal axes y and z
double ny_sq(double lam) {
    return 2.19229 + 0.83547 / (1.0 - 0.04970 / (lam * lam)) - 0.01621 * lam * lam;
}
double nz_sq(double lam) {
    return 2.25411 + 1.06543 / (1.0 - 0.05486 / (lam * lam)) - 0.02140 * lam * lam;
}

// thermo-optic polynomials, Emanueli & Arie, Appl. Opt. 42, 6661 (2003);
// dn/dT = n1 + 2 n2 (T - 25 C), lambda in micrometers
double n1_y(double l) { return (6.2897 + 6.3061 / l - 6.0629 / (l * l) + 2.6486 / (l * l * l)) * 1e-6; }
double n2_y(double l) { return (-0.14445 + 2.2244 / l - 3.5770 / (l * l) + 1.3470 / (l * l * l)) * 1e-8; }
double n1_z(double l) { return (9.9587 + 9.9228 / l - 8.9603 / (l * l) + 4.1010 / (l * l * l)) * 1e-6; }
double n2_z(double l) { return (-1.1882 + 10.459 / l - 9.8136 / (l * l) + 3.1481 / (l * l * l)) * 1e-8; }

void check_lambda_range(double lambda_m) {
    if (!(lambda_m > 0.3e-6 && lambda_m < 1.5e-6))
        throw config_error("wavelength " + fmt(lambda_m) +
                           " m outside the fitted sellmeier range (0.3..1.5 um)");
}

} // namespace

double index_y(double lambda, double T) {
    check_lambda_range(lambda);
    const double l = lambda * 1e6;
    const double dT = T - 25.0;
    return std::sqrt(ny_sq(l)) + n1_y(l) * dT + n2_y(l) * dT * dT;
}

double index_z(double lambda, double T) {
    check_lambda_range(lambda);
    const double l = lambda * 1e6;
    const double dT = T - 25.0;
    return std::sqrt(nz_sq(l)) + n1_z(l) * dT + n2_z(l) * dT * dT;
}

// ---- frozen-dataset factories ----

CrystalConfig default_crystal() {
    CrystalConfig c;
    c.length = ktp::crystal_length;
    c.poling_period_at_T0 = ktp::poling_period;
    c.T0 = ktp::T0_celsius;
    c.thermal_poling_coefficient = ktp::thermal_poling_coefficient;
    return c;
}

PumpConfig default_pump() {
    return PumpConfig{ktp::lambda_pump, ktp::default_pump_waist};
}

DetectionConfig default_detection() {
    return DetectionConfig{ktp::default_detection_waist};
}

DispersionModel default_dispersion(DispersionMode mode) {
    DispersionModel m;
    m.n0_pump = ktp::n0_pump;
    m.n0_signal = ktp::n0_signal;
    m.n0_idler = ktp::n0_idler;
    m.group_slowness_signal = ktp::slowness_signal;
    m.group_slowness_idler = ktp::slowness_idler;
    m.thermal_detuning_b = ktp::thermal_detuning_b;
    m.mode = mode;
    return m;
}

// ---- validation ----

void validate(const CrystalConfig& c) {
    if (!(c.length > 0.0)) throw config_error("crystal length must be positive");
    if (!(c.poling_period_at_T0 > 0.0))
        throw config_error("poling period must be positive");
    if (!(c.T0 > -273.15)) throw config_error("reference temperature below absolute zero");
    // the period must stay open across the supported oven range
    for (double T : {40.0, 65.0})
        if (!(c.poling_period(T) > 0.0))
            throw config_error("poling period closes at " + fmt(T) +
                               " C; thermal coefficient is unphysical");
}

void validate(const PumpConfig& p) {
    if (!(p.center_wavelength > 0.0)) throw config_error("pump wavelength must be positive");
    if (!(p.waist > 0.0)) throw config_error("pump waist must be positive");
}

void validate(const DetectionConfig& d) {
    if (!(d.waist > 0.0)) throw config_error("detection waist must be positive");
}

void validate(const DispersionModel& m) {
    if (!(m.n0_pump > 1.0 && m.n0_signal > 1.0 && m.n0_idler > 1.0))
        throw config_error("refractive indices must exceed 1");
    if (!(m.group_slowness_signal > 0.0 && m.group_slowness_idler > 0.0))
        throw config_error("group slownesses must be positive");
}

// ---- wavenumber and mismatch ----

double branch_omega(Branch br, double omega_p, double Omega) {
    switch (br) {
    case Branch::pump: return omega_p;
    case Branch::signal: return 0.5 * omega_p + Omega;
    default: return 0.5 * omega_p - Omega;
    }
}

namespace {

// longitudinal wavenumber magnitude (no transverse part yet)
double k_total(const DispersionModel& m, const PumpConfig& pump, Branch br,
               double Omega, double T) {
    const double omega_p = 2.0 * M_PI * c_light / pump.center_wavelength;
    const double omega = branch_omega(br, omega_p, Omega);
    if (!(omega > 0.0))
        throw config_error("detuning pushes a branch to non-positive frequency");

    if (m.mode == DispersionMode::exact_sellmeier) {
        const double lambda = 2.0 * M_PI * c_light / omega;
        const double n = (br == Branch::idler) ? index_z(lambda, T) : index_y(lambda, T);
        return omega * n / c_light;
    }

    // linearized: carrier wavenumber plus group-slowness slope; the pump is cw
    // and fixed at its carrier.  Temperature dependence lives entirely in the
    // thermal detuning term of the mismatch, not here.
    switch (br) {
    case Branch::pump: return omega_p * m.n0_pump / c_light;
    case Branch::signal:
        return 0.5 * omega_p * m.n0_signal / c_light + m.group_slowness_signal * Omega;
    default:
        return 0.5 * omega_p * m.n0_idler / c_light - m.group_slowness_idler * Omega;
    }
}

} // namespace

double wavenumber(const DispersionModel& m, const PumpConfig& pump, Branch br,
                  double Omega, const vec2& transverse, double T) {
    const double k = k_total(m, pump, br, Omega, T);
    const double radicand = k * k - norm_sq(transverse);
    if (!(radicand > 0.0))
        throw evanescent_error("transverse momentum " + fmt(std::sqrt(norm_sq(transverse))) +
                               " rad/m exceeds the total wavenumber " + fmt(k) +
                               " rad/m; wave is evanescent");
    return std::sqrt(radicand);
}

double phase_mismatch(const DispersionModel& m, const CrystalConfig& c,
                      const PumpConfig& pump, double Omega,
                      const MomentumPair& k, double T) {
    if (m.mode == DispersionMode::linearized) {
        const double omega_p = 2.0 * M_PI * c_light / pump.center_wavelength;
        const double k0p = omega_p * m.n0_pump / c_light;
        const vec2 d{k.p[0] - k.q[0], k.p[1] - k.q[1]};
        return m.thermal_detuning_b * (T - c.T0) + m.walkoff_F() * Omega +
               norm_sq(d) / (2.0 * k0p);
    }

    const vec2 sum{k.p[0] + k.q[0], k.p[1] + k.q[1]};
    const double kp = wavenumber(m, pump, Branch::pump, Omega, sum, T);
    const double ks = wavenumber(m, pump, Branch::signal, Omega, k.p, T);
    const double ki = wavenumber(m, pump, Branch::idler, Omega, k.q, T);
    return kp - ks - ki - 2.0 * M_PI / c.poling_period(T);
}

double calibrate_poling(const CrystalConfig& c, const PumpConfig& pump) {
    const double T = c.T0;
    const double lam_p = pump.center_wavelength;
    const double lam_d = 2.0 * lam_p;
    const double omega_p = 2.0 * M_PI * c_light / lam_p;
    const double kp = omega_p * index_y(lam_p, T) / c_light;
    const double ks = 0.5 * omega_p * index_y(lam_d, T) / c_light;
    const double ki = 0.5 * omega_p * index_z(lam_d, T) / c_light;
    const double bare = kp - ks - ki;
    if (!(bare > 0.0))
        throw no_root_error("collinear index mismatch is not positive; no first-order "
                            "poling period can cancel it");
    return 2.0 * M_PI / bare;
}

} // namespace biphoton

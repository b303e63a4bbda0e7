#pragma once

#include <array>
#include <string>

// ---- crystal dispersion and phase matching ----
//
// Collinear type-II quasi-phase-matched geometry: a cw pump at omega_p splits
// into signal (omega_p/2 + Omega, y-polarized) and idler (omega_p/2 - Omega,
// z-polarized).  Two dispersion modes:
//
//   exact_sellmeier  evaluates n_y / n_z from the Fan et al. (1987) fits with
//                    the Emanueli & Arie (2003) thermo-optic corrections, so
//                    wavenumbers carry the full wavelength and temperature
//                    dependence.
//   linearized      keeps only the scalars that survive a first-order
//                    expansion around degeneracy: carrier indices, the two
//                    group slownesses, and one thermal detuning rate b.  The
//                    longitudinal mismatch then takes the closed form
//                        dk_z = b (T - T0) + F Omega + |p - q|^2 / (2 k0p)
//                    with F = slowness_idler - slowness_signal.
//
// Signal carries transverse momentum p, idler q; the cw pump supplies p + q.

namespace biphoton {

using vec2 = std::array<double, 2>;

inline double norm_sq(const vec2& v) { return v[0] * v[0] + v[1] * v[1]; }

struct MomentumPair {
    vec2 p{0.0, 0.0}; // signal transverse momentum, rad/m
    vec2 q{0.0, 0.0}; // idler transverse momentum, rad/m
};

struct CrystalConfig {
    double length = 0.0;             // m
    double poling_period_at_T0 = 0.0; // m
    double T0 = 0.0;                 // Celsius
    double thermal_poling_coefficient = 0.0; // 1/K
    // poling period at temperature T, Lambda(T) = Lambda0 (1 + a (T - T0))
    double poling_period(double T) const {
        return poling_period_at_T0 * (1.0 + thermal_poling_coefficient * (T - T0));
    }
};

struct PumpConfig {
    double center_wavelength = 0.0; // m
    double waist = 0.0;             // m
};

struct DetectionConfig {
    double waist = 0.0; // m
};

enum class DispersionMode { exact_sellmeier, linearized };

struct DispersionModel {
    double n0_pump = 0.0;
    double n0_signal = 0.0;
    double n0_idler = 0.0;
    double group_slowness_signal = 0.0; // s/m
    double group_slowness_idler = 0.0;  // s/m
    double thermal_detuning_b = 0.0;    // rad/(m K)
    DispersionMode mode = DispersionMode::linearized;

    double walkoff_F() const { return group_slowness_idler - group_slowness_signal; }
};

enum class Branch { pump, signal, idler };

// ---- frozen-dataset factories ----
CrystalConfig default_crystal();
PumpConfig default_pump();
DetectionConfig default_detection();
DispersionModel default_dispersion(DispersionMode mode = DispersionMode::linearized);

// throw config_error on unphysical values (non-positive lengths or waists,
// poling period that closes anywhere on the 40..65 C operating range)
void validate(const CrystalConfig& c);
void validate(const PumpConfig& p);
void validate(const DetectionConfig& d);
void validate(const DispersionModel& m);

// ---- sellmeier layer (exact mode) ----
// refractive index of the y or z principal axis at vacuum wavelength lambda
// (meters) and temperature T (Celsius); config_error outside the fitted range
double index_y(double lambda, double T);
double index_z(double lambda, double T);

// angular frequency of a branch at detuning Omega
double branch_omega(Branch br, double omega_p, double Omega);

// ---- wavenumber and mismatch ----
// longitudinal wavenumber sqrt((omega n / c)^2 - |k_perp|^2); evanescent_error
// when the radicand is not positive.  Pump waves ride at omega_p with the
// summed transverse momentum; Omega moves signal up and idler down.
double wavenumber(const DispersionModel& m, const PumpConfig& pump, Branch br,
                  double Omega, const vec2& transverse, double T);

// dk_z = k_p - k_s - k_i - 2 pi / Lambda(T); the linearized mode returns the
// closed form quoted above instead of differencing square roots
double phase_mismatch(const DispersionModel& m, const CrystalConfig& c,
                      const PumpConfig& pump, double Omega,
                      const MomentumPair& k, double T);

// poling period that nulls the collinear degenerate mismatch at T0, from the
// exact-sellmeier indices; no_root_error if the bare index mismatch has no
// sign for a positive period to cancel
double calibrate_poling(const CrystalConfig& c, const PumpConfig& pump);

} // namespace biphoton

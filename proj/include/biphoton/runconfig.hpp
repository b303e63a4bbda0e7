#pragma once

#include "biphoton/analysis.hpp"
#include "biphoton/dispersion.hpp"
#include "biphoton/projection.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// ---- run configuration ----
//
// JSON configuration with explicit units in every key name (length_mm,
// waist_um, tau_step_ps, ...), organized in sections:
//
//   crystal     length_mm, poling_period_um, reference_temperature_c,
//               thermal_poling_coefficient_per_k
//   pump        wavelength_nm, waist_um
//   detection   waist_um
//   dispersion  mode ("linearized" | "exact-sellmeier")
//   quadrature  scheme ("tensor-gauss" | "adaptive"), nodes_per_axis,
//               k_max_rad_per_m, reduction ("azimuthal-3d" | "full-4d"),
//               adaptive_tol, max_refinements, surrogate_longitudinal
//   scan        grid_points, half_span_rad_per_s, temperature_c, tau_step_ps,
//               tau_half_span_ps, temperature_start_c, temperature_step_c,
//               temperature_points, compensate_walkoff,
//               model ("toy" | "numeric-approx" | "numeric-exact")
//   output      directory
//
// An explicit config file must state pump.waist_um and detection.waist_um,
// the two knobs every result depends on; all other keys fall back to the
// built-in ppKTP defaults.  Any key that is not part of the schema is rejected
// by name, so typos fail loudly instead of silently running the defaults.
// quadrature.nodes_per_axis = 0 means "pick the per-model default" (16 for the
// factorized integrand, 96 for the exact one) and is resolved before anything
// is computed or serialized.

namespace biphoton {

struct ScanConfig {
    int grid_points = 0;
    double half_span = 0.0;         // rad/s
    double temperature = 0.0;       // Celsius
    double tau_step = 0.0;          // s
    double tau_half_span = 0.0;     // s
    double temperature_start = 0.0; // Celsius
    double temperature_step = 0.0;  // K
    int temperature_points = 0;
    bool compensate = true;
    SpectrumModel model = SpectrumModel::toy;
};

struct OutputConfig {
    std::string directory = ".";
};

struct RunConfig {
    CrystalConfig crystal;
    PumpConfig pump;
    DetectionConfig detection;
    DispersionModel dispersion;
    QuadratureSpec quadrature;
    ScanConfig scan;
    OutputConfig output;
};

// built-in frozen ppKTP defaults (405.5 nm pump, 15 mm crystal, 54 C)
RunConfig default_run_config();

// merge a JSON document onto the defaults; config_error on unknown keys
// (reported with their dotted path), wrong types, or unphysical values
RunConfig parse_run_config(const nlohmann::json& j);

// read + parse a config file (io_error on filesystem/JSON trouble)
RunConfig load_run_config(const std::string& path);

// replace the nodes_per_axis = 0 sentinel with the per-model default
void resolve_quadrature(RunConfig& cfg);

// physical and numerical sanity of the whole configuration
void validate(const RunConfig& cfg);

// fully resolved configuration, suitable for the output sidecar; parsing it
// back reproduces the RunConfig exactly
nlohmann::json to_json(const RunConfig& cfg);

// scan grids
std::vector<double> make_omega_grid(const ScanConfig& scan);
std::vector<double> make_tau_grid(const ScanConfig& scan);
std::vector<double> make_temperature_grid(const ScanConfig& scan);

} // namespace biphoton

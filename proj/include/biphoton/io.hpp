#pragma once

#include "biphoton/analysis.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// ---- file formats ----
//
// All numeric CSV fields are printed with %.17g so a read-back reproduces the
// double bit for bit (17 significant digits round-trip IEEE 754 binary64).
// Writers throw io_error on any filesystem failure.
//
//   spectrum CSV   omega_rad_s, lambda_nm, re, im, abs2_normalized
//                  (abs2_normalized integrates to 1 under the grid measure)
//   temporal CSV   t_s, re, im, abs2_normalized
//   width CSV      w_p_um, w_d_um, model, mean_lambda_nm, delta_lambda_nm,
//                  delta_t_fs, warnings
//   map CSV        coincidence probability, delay rows (ps) by temperature
//                  columns (Celsius); cell [0,0] names the axes
//
// Each CSV written by the command layer gets a JSON sidecar <stem>.config.json
// holding the fully resolved run configuration that produced it.

namespace biphoton::io {

// %.17g rendering used by every writer
std::string format_g17(double v);

void write_spectrum_csv(const std::string& path, const SpectralWavefunction& s);
void write_temporal_csv(const std::string& path, const TemporalWavefunction& t);
void write_width_csv(const std::string& path, const std::vector<WidthReport>& rows);
void write_hom_map_csv(const std::string& path, const HomMap& map);

// parse a map CSV back; metadata is not stored in the CSV and comes back
// default-initialized (the caller restores it from the sidecar)
HomMap read_hom_map_csv(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

// sidecar path for an output file: "<stem>.config.json"
std::string sidecar_path(const std::string& output_path);

} // namespace biphoton::io

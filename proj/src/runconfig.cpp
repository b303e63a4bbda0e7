#include "biphoton/runconfig.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/io.hpp"

#include <cmath>
#include <set>

namespace biphoton {

namespace {

using nlohmann::json;

// section readers: every getter checks the JSON type and every section pass
// ends by rejecting keys outside the allowed set, naming the dotted path

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            const std::string path =
                section.empty() ? item.key() : section + "." + item.key();
            throw config_error("unknown key \"" + path + "\" in configuration");
        }
    }
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& section,
                  const std::string& key, double fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number())
        throw config_error("\"" + section + "." + key + "\" must be a number");
    return v->get<double>();
}

int get_int(const json& obj, const std::string& section, const std::string& key,
            int fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer())
        throw config_error("\"" + section + "." + key + "\" must be an integer");
    return v->get<int>();
}

bool get_bool(const json& obj, const std::string& section, const std::string& key,
              bool fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean())
        throw config_error("\"" + section + "." + key + "\" must be a boolean");
    return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& section,
                       const std::string& key, const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string())
        throw config_error("\"" + section + "." + key + "\" must be a string");
    return v->get<std::string>();
}

const json& section_object(const json& root, const std::string& name) {
    static const json empty = json::object();
    const json* v = find(root, name);
    if (!v) return empty;
    if (!v->is_object())
        throw config_error("\"" + name + "\" must be a JSON object");
    return *v;
}

DispersionMode parse_dispersion_mode(const std::string& s) {
    if (s == "linearized") return DispersionMode::linearized;
    if (s == "exact-sellmeier") return DispersionMode::exact_sellmeier;
    throw config_error("\"dispersion.mode\" must be \"linearized\" or "
                       "\"exact-sellmeier\", got \"" + s + "\"");
}

std::string dispersion_mode_name(DispersionMode m) {
    return m == DispersionMode::linearized ? "linearized" : "exact-sellmeier";
}

QuadScheme parse_scheme(const std::string& s) {
    if (s == "tensor-gauss") return QuadScheme::tensor_gauss;
    if (s == "adaptive") return QuadScheme::adaptive;
    throw config_error("\"quadrature.scheme\" must be \"tensor-gauss\" or "
                       "\"adaptive\", got \"" + s + "\"");
}

std::string scheme_name(QuadScheme s) {
    return s == QuadScheme::tensor_gauss ? "tensor-gauss" : "adaptive";
}

QuadReduction parse_reduction(const std::string& s) {
    if (s == "azimuthal-3d") return QuadReduction::azimuthal_3d;
    if (s == "full-4d") return QuadReduction::full_4d;
    throw config_error("\"quadrature.reduction\" must be \"azimuthal-3d\" or "
                       "\"full-4d\", got \"" + s + "\"");
}

std::string reduction_name(QuadReduction r) {
    return r == QuadReduction::azimuthal_3d ? "azimuthal-3d" : "full-4d";
}

} // namespace

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.crystal = default_crystal();
    cfg.pump = default_pump();
    cfg.detection = default_detection();
    cfg.dispersion = default_dispersion(DispersionMode::linearized);
    cfg.quadrature = default_quadrature(IntegrandKind::approximated);
    cfg.quadrature.nodes_per_axis = 0; // auto: resolved per model
    cfg.scan.grid_points = ktp::default_grid_points;
    cfg.scan.half_span = ktp::default_grid_half_span;
    cfg.scan.temperature = ktp::T0_celsius;
    cfg.scan.tau_step = 0.12e-12;
    cfg.scan.tau_half_span = 3.05e-12;
    cfg.scan.temperature_start = 45.0;
    cfg.scan.temperature_step = 0.2;
    cfg.scan.temperature_points = 76;
    cfg.scan.compensate = true;
    cfg.scan.model = SpectrumModel::toy;
    cfg.output.directory = ".";
    return cfg;
}

RunConfig parse_run_config(const nlohmann::json& root) {
    if (!root.is_object())
        throw config_error("configuration root must be a JSON object");
    reject_unknown(root, "", {"crystal", "pump", "detection", "dispersion",
                              "quadrature", "scan", "output"});
    RunConfig cfg = default_run_config();

    {
        const json& o = section_object(root, "crystal");
        reject_unknown(o, "crystal",
                       {"length_mm", "poling_period_um", "reference_temperature_c",
                        "thermal_poling_coefficient_per_k"});
        cfg.crystal.length =
            get_number(o, "crystal", "length_mm", cfg.crystal.length * 1e3) * 1e-3;
        cfg.crystal.poling_period_at_T0 =
            get_number(o, "crystal", "poling_period_um",
                       cfg.crystal.poling_period_at_T0 * 1e6) * 1e-6;
        cfg.crystal.T0 =
            get_number(o, "crystal", "reference_temperature_c", cfg.crystal.T0);
        cfg.crystal.thermal_poling_coefficient =
            get_number(o, "crystal", "thermal_poling_coefficient_per_k",
                       cfg.crystal.thermal_poling_coefficient);
    }
    {
        const json& o = section_object(root, "pump");
        reject_unknown(o, "pump", {"wavelength_nm", "waist_um"});
        cfg.pump.center_wavelength =
            get_number(o, "pump", "wavelength_nm",
                       cfg.pump.center_wavelength * 1e9) * 1e-9;
        // the waists are the decisive physical knobs; an explicit config must
        // state them so a file cannot silently run on defaults
        if (!find(o, "waist_um"))
            throw config_error("missing required key \"pump.waist_um\"");
        cfg.pump.waist = get_number(o, "pump", "waist_um", cfg.pump.waist * 1e6) * 1e-6;
    }
    {
        const json& o = section_object(root, "detection");
        reject_unknown(o, "detection", {"waist_um"});
        if (!find(o, "waist_um"))
            throw config_error("missing required key \"detection.waist_um\"");
        cfg.detection.waist =
            get_number(o, "detection", "waist_um", cfg.detection.waist * 1e6) * 1e-6;
    }
    {
        const json& o = section_object(root, "dispersion");
        reject_unknown(o, "dispersion", {"mode"});
        const DispersionMode mode = parse_dispersion_mode(
            get_string(o, "dispersion", "mode",
                       dispersion_mode_name(cfg.dispersion.mode)));
        cfg.dispersion = default_dispersion(mode);
    }
    {
        const json& o = section_object(root, "quadrature");
        reject_unknown(o, "quadrature",
                       {"scheme", "nodes_per_axis", "k_max_rad_per_m", "reduction",
                        "adaptive_tol", "max_refinements", "surrogate_longitudinal"});
        cfg.quadrature.scheme = parse_scheme(
            get_string(o, "quadrature", "scheme", scheme_name(cfg.quadrature.scheme)));
        cfg.quadrature.nodes_per_axis =
            get_int(o, "quadrature", "nodes_per_axis", cfg.quadrature.nodes_per_axis);
        cfg.quadrature.k_max =
            get_number(o, "quadrature", "k_max_rad_per_m", cfg.quadrature.k_max);
        cfg.quadrature.reduction = parse_reduction(get_string(
            o, "quadrature", "reduction", reduction_name(cfg.quadrature.reduction)));
        cfg.quadrature.adaptive_tol =
            get_number(o, "quadrature", "adaptive_tol", cfg.quadrature.adaptive_tol);
        cfg.quadrature.max_refinements = get_int(o, "quadrature", "max_refinements",
                                                 cfg.quadrature.max_refinements);
        cfg.quadrature.surrogate_longitudinal =
            get_bool(o, "quadrature", "surrogate_longitudinal",
                     cfg.quadrature.surrogate_longitudinal);
    }
    {
        const json& o = section_object(root, "scan");
        reject_unknown(o, "scan",
                       {"grid_points", "half_span_rad_per_s", "temperature_c",
                        "tau_step_ps", "tau_half_span_ps", "temperature_start_c",
                        "temperature_step_c", "temperature_points",
                        "compensate_walkoff", "model"});
        cfg.scan.grid_points = get_int(o, "scan", "grid_points", cfg.scan.grid_points);
        cfg.scan.half_span =
            get_number(o, "scan", "half_span_rad_per_s", cfg.scan.half_span);
        cfg.scan.temperature =
            get_number(o, "scan", "temperature_c", cfg.scan.temperature);
        cfg.scan.tau_step =
            get_number(o, "scan", "tau_step_ps", cfg.scan.tau_step * 1e12) * 1e-12;
        cfg.scan.tau_half_span =
            get_number(o, "scan", "tau_half_span_ps", cfg.scan.tau_half_span * 1e12) *
            1e-12;
        cfg.scan.temperature_start =
            get_number(o, "scan", "temperature_start_c", cfg.scan.temperature_start);
        cfg.scan.temperature_step =
            get_number(o, "scan", "temperature_step_c", cfg.scan.temperature_step);
        cfg.scan.temperature_points =
            get_int(o, "scan", "temperature_points", cfg.scan.temperature_points);
        cfg.scan.compensate =
            get_bool(o, "scan", "compensate_walkoff", cfg.scan.compensate);
        cfg.scan.model =
            parse_model(get_string(o, "scan", "model", model_name(cfg.scan.model)));
    }
    {
        const json& o = section_object(root, "output");
        reject_unknown(o, "output", {"directory"});
        cfg.output.directory =
            get_string(o, "output", "directory", cfg.output.directory);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(io::read_json_file(path));
}

void resolve_quadrature(RunConfig& cfg) {
    if (cfg.quadrature.nodes_per_axis != 0) return;
    const IntegrandKind kind = cfg.scan.model == SpectrumModel::numeric_exact
                                   ? IntegrandKind::exact
                                   : IntegrandKind::approximated;
    cfg.quadrature.nodes_per_axis = default_quadrature(kind).nodes_per_axis;
}

void validate(const RunConfig& cfg) {
    validate(cfg.crystal);
    validate(cfg.pump);
    validate(cfg.detection);
    validate(cfg.dispersion);
    if (cfg.quadrature.nodes_per_axis != 0)
        validate(cfg.quadrature, cfg.pump, cfg.detection);

    const ScanConfig& s = cfg.scan;
    if (s.grid_points < 16 || s.grid_points % 2 != 0)
        throw config_error("scan.grid_points must be an even number >= 16");
    if (!(s.half_span > 0.0))
        throw config_error("scan.half_span_rad_per_s must be positive");
    if (!(s.tau_step > 0.0)) throw config_error("scan.tau_step_ps must be positive");
    if (!(s.tau_half_span >= 0.0))
        throw config_error("scan.tau_half_span_ps must be non-negative");
    if (!(s.temperature_step > 0.0))
        throw config_error("scan.temperature_step_c must be positive");
    if (s.temperature_points < 1)
        throw config_error("scan.temperature_points must be >= 1");
    if (cfg.output.directory.empty())
        throw config_error("output.directory must not be empty");
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["crystal"] = {
        {"length_mm", cfg.crystal.length * 1e3},
        {"poling_period_um", cfg.crystal.poling_period_at_T0 * 1e6},
        {"reference_temperature_c", cfg.crystal.T0},
        {"thermal_poling_coefficient_per_k", cfg.crystal.thermal_poling_coefficient},
    };
    j["pump"] = {
        {"wavelength_nm", cfg.pump.center_wavelength * 1e9},
        {"waist_um", cfg.pump.waist * 1e6},
    };
    j["detection"] = {{"waist_um", cfg.detection.waist * 1e6}};
    j["dispersion"] = {{"mode", dispersion_mode_name(cfg.dispersion.mode)}};
    j["quadrature"] = {
        {"scheme", scheme_name(cfg.quadrature.scheme)},
        {"nodes_per_axis", cfg.quadrature.nodes_per_axis},
        {"k_max_rad_per_m", cfg.quadrature.k_max},
        {"reduction", reduction_name(cfg.quadrature.reduction)},
        {"adaptive_tol", cfg.quadrature.adaptive_tol},
        {"max_refinements", cfg.quadrature.max_refinements},
        {"surrogate_longitudinal", cfg.quadrature.surrogate_longitudinal},
    };
    j["scan"] = {
        {"grid_points", cfg.scan.grid_points},
        {"half_span_rad_per_s", cfg.scan.half_span},
        {"temperature_c", cfg.scan.temperature},
        {"tau_step_ps", cfg.scan.tau_step * 1e12},
        {"tau_half_span_ps", cfg.scan.tau_half_span * 1e12},
        {"temperature_start_c", cfg.scan.temperature_start},
        {"temperature_step_c", cfg.scan.temperature_step},
        {"temperature_points", cfg.scan.temperature_points},
        {"compensate_walkoff", cfg.scan.compensate},
        {"model", model_name(cfg.scan.model)},
    };
    j["output"] = {{"directory", cfg.output.directory}};
    return j;
}

std::vector<double> make_omega_grid(const ScanConfig& scan) {
    return uniform_grid(scan.grid_points, scan.half_span);
}

std::vector<double> make_tau_grid(const ScanConfig& scan) {
    const int n =
        static_cast<int>(std::lround(2.0 * scan.tau_half_span / scan.tau_step)) + 1;
    std::vector<double> tau(std::max(n, 1));
    for (int i = 0; i < std::max(n, 1); ++i)
        tau[i] = -scan.tau_half_span + i * scan.tau_step;
    return tau;
}

std::vector<double> make_temperature_grid(const ScanConfig& scan) {
    std::vector<double> T(scan.temperature_points);
    for (int i = 0; i < scan.temperature_points; ++i)
        T[i] = scan.temperature_start + i * scan.temperature_step;
    return T;
}

} // namespace biphoton

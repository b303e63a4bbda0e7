#include "biphoton/cli.hpp"

#include "biphoton/analysis.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/hom.hpp"
#include "biphoton/io.hpp"
#include "biphoton/toymodel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>

namespace biphoton::cli {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

void ensure_out_dir(const std::string& dir) {
    if (dir.empty() || dir == ".") return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory " + dir + ": " +
                           ec.message());
}

void write_sidecar(const std::string& csv_path, const nlohmann::json& j) {
    io::write_json_file(io::sidecar_path(csv_path), j);
}

void announce(const std::string& path) { std::printf("wrote %s\n", path.c_str()); }

// unit-L2 distance of the normalized magnitudes, the model-agreement metric
double magnitude_l2_distance(const SpectralWavefunction& a,
                             const SpectralWavefunction& b) {
    double na = 0.0, nb = 0.0;
    for (const auto& v : a.values) na += std::norm(v);
    for (const auto& v : b.values) nb += std::norm(v);
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    double d2 = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = std::abs(a.values[k]) / na - std::abs(b.values[k]) / nb;
        d2 += d * d;
    }
    return std::sqrt(d2);
}

nlohmann::json width_to_json(const WidthReport& r) {
    return nlohmann::json{
        {"w_p_um", r.w_p * 1e6},
        {"w_d_um", r.w_d * 1e6},
        {"model", r.model},
        {"mean_lambda_nm", r.mean_lambda * 1e9},
        {"delta_lambda_nm", r.delta_lambda * 1e9},
        {"delta_t_fs", r.delta_t * 1e15},
        {"delta_omega_rms_rad_s", r.delta_omega_rms},
        {"warnings", r.warnings},
    };
}

std::vector<double> default_sweep_waists() {
    // 25 log-spaced detection waists spanning the lab-realistic 2..60 um
    std::vector<double> w(25);
    for (int i = 0; i < 25; ++i)
        w[i] = 2e-6 * std::pow(60.0 / 2.0, i / 24.0);
    return w;
}

std::vector<double> parse_um_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            throw config_error(flag + ": empty value in waist list");
        char* end = nullptr;
        const double v = std::strtod(cur.c_str(), &end);
        if (end == cur.c_str() || *end != '\0')
            throw config_error(flag + ": cannot parse \"" + cur + "\" as a waist "
                               "in micrometers");
        out.push_back(v * 1e-6);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    if (!cur.empty()) flush();
    if (out.empty())
        throw config_error(flag + ": needs at least one waist value");
    return out;
}

std::vector<SpectrumModel> parse_model_list(const std::string& text) {
    std::vector<SpectrumModel> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(parse_model(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    flush();
    if (out.empty()) throw config_error("--model: needs at least one model name");
    return out;
}

} // namespace

void cmd_spectrum(RunConfig cfg, const std::string& out_dir) {
    resolve_quadrature(cfg);
    validate(cfg);
    ensure_out_dir(out_dir);

    const std::vector<double> grid = make_omega_grid(cfg.scan);
    const SpectrumProvider provider = make_spectrum_provider(
        cfg.scan.model, cfg.pump, cfg.detection, cfg.crystal, cfg.dispersion,
        cfg.quadrature, grid, cfg.scan.compensate);
    const SpectralWavefunction s = provider(cfg.scan.temperature);

    const nlohmann::json sidecar = to_json(cfg);
    const std::string spectrum_path = join_path(out_dir, "spectrum.csv");
    io::write_spectrum_csv(spectrum_path, s);
    write_sidecar(spectrum_path, sidecar);
    announce(spectrum_path);

    const TemporalWavefunction t = to_temporal(s);
    const std::string temporal_path = join_path(out_dir, "temporal.csv");
    io::write_temporal_csv(temporal_path, t);
    write_sidecar(temporal_path, sidecar);
    announce(temporal_path);

    const WidthReport report = width_report(s, cfg.pump);
    nlohmann::json wj = width_to_json(report);
    wj["resolved_config"] = sidecar;
    const std::string width_path = join_path(out_dir, "width_report.json");
    io::write_json_file(width_path, wj);
    announce(width_path);

    if (cfg.scan.model != SpectrumModel::toy) {
        // closed-form reference on the same grid and temperature
        RunConfig ref = cfg;
        ref.scan.model = SpectrumModel::toy;
        const SpectralWavefunction toy_ref = make_spectrum_provider(
            SpectrumModel::toy, ref.pump, ref.detection, ref.crystal, ref.dispersion,
            ref.quadrature, grid, ref.scan.compensate)(cfg.scan.temperature);
        std::printf("comparison: relative L2 distance to closed-form model = %s\n",
                    io::format_g17(magnitude_l2_distance(s, toy_ref)).c_str());
    }
}

void cmd_hom_map(RunConfig cfg, const std::string& out_dir) {
    resolve_quadrature(cfg);
    validate(cfg);
    ensure_out_dir(out_dir);

    const std::vector<double> grid = make_omega_grid(cfg.scan);
    const std::vector<double> tau = make_tau_grid(cfg.scan);
    const std::vector<double> temps = make_temperature_grid(cfg.scan);
    const SpectrumProvider provider = make_spectrum_provider(
        cfg.scan.model, cfg.pump, cfg.detection, cfg.crystal, cfg.dispersion,
        cfg.quadrature, grid, cfg.scan.compensate);

    HomMapMeta meta;
    meta.w_p = cfg.pump.waist;
    meta.w_d = cfg.detection.waist;
    meta.model = model_name(cfg.scan.model);
    meta.compensated = cfg.scan.compensate;
    meta.T0 = cfg.crystal.T0;

    const HomMap map = hom_map(provider, tau, temps, meta);

    const std::string map_path = join_path(out_dir, "hom_map.csv");
    io::write_hom_map_csv(map_path, map);
    write_sidecar(map_path, to_json(cfg));
    announce(map_path);

    const auto [lo, hi] = std::minmax_element(map.C.begin(), map.C.end());
    std::printf("map %zu x %zu, C in [%s, %s]\n", tau.size(), temps.size(),
                io::format_g17(*lo).c_str(), io::format_g17(*hi).c_str());
}

void cmd_sweep(RunConfig cfg, const std::string& out_dir, SweepFlags flags) {
    validate(cfg);
    ensure_out_dir(out_dir);

    if (flags.w_d_list.empty()) flags.w_d_list = default_sweep_waists();
    if (flags.w_p_list.empty()) flags.w_p_list = {cfg.pump.waist};
    if (flags.models.empty())
        flags.models = {SpectrumModel::toy, SpectrumModel::numeric_approx};

    SweepRequest req;
    req.w_d_list = flags.w_d_list;
    req.w_p_list = flags.w_p_list;
    req.omega_grid = make_omega_grid(cfg.scan);
    req.T = cfg.scan.temperature;
    req.compensate = cfg.scan.compensate;

    // an auto nodes_per_axis resolves per model, so each family runs at its
    // own default order
    const bool auto_nodes = cfg.quadrature.nodes_per_axis == 0;

    std::vector<WidthReport> all;
    for (SpectrumModel m : flags.models) {
        req.model = m;
        RunConfig per = cfg;
        per.scan.model = m;
        if (auto_nodes) {
            per.quadrature.nodes_per_axis = 0;
            resolve_quadrature(per);
        }
        const std::vector<WidthReport> rows = sweep_widths(
            req, per.pump, per.detection, per.crystal, per.dispersion, per.quadrature);
        all.insert(all.end(), rows.begin(), rows.end());
    }

    const std::string csv_path = join_path(out_dir, "sweep_widths.csv");
    io::write_width_csv(csv_path, all);
    write_sidecar(csv_path, to_json(cfg));
    announce(csv_path);

    // per-model tuning-range summary over the finite points
    for (SpectrumModel m : flags.models) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& r : all) {
            if (r.model != model_name(m) || !std::isfinite(r.delta_lambda)) continue;
            lo = std::min(lo, r.delta_lambda);
            hi = std::max(hi, r.delta_lambda);
        }
        if (!(lo > 0.0) || !std::isfinite(lo)) {
            std::printf("model %s: no finite sweep points\n", model_name(m).c_str());
            continue;
        }
        const double ratio = hi / lo;
        std::printf("model %s: delta_lambda %s..%s nm, max/min ratio = %s "
                    "(factor-of-five tuning criterion, ratio >= 4: %s)\n",
                    model_name(m).c_str(), io::format_g17(lo * 1e9).c_str(),
                    io::format_g17(hi * 1e9).c_str(), io::format_g17(ratio).c_str(),
                    ratio >= 4.0 ? "satisfied" : "not satisfied");
    }

    // cross-model overlay: numeric vs closed-form bandwidth, matched pointwise
    const std::string toy_name = model_name(SpectrumModel::toy);
    for (SpectrumModel m : flags.models) {
        if (m == SpectrumModel::toy) continue;
        double worst = 0.0;
        bool any = false;
        for (const auto& r : all) {
            if (r.model != model_name(m) || !std::isfinite(r.delta_lambda)) continue;
            for (const auto& t : all) {
                if (t.model != toy_name || t.w_p != r.w_p || t.w_d != r.w_d ||
                    !std::isfinite(t.delta_lambda) || !(t.delta_lambda > 0.0))
                    continue;
                worst = std::max(worst,
                                 std::abs(r.delta_lambda - t.delta_lambda) /
                                     t.delta_lambda);
                any = true;
            }
        }
        if (any)
            std::printf("overlay %s vs %s: max relative delta_lambda deviation = %s "
                        "(expected < 0.05)\n",
                        model_name(m).c_str(), toy_name.c_str(),
                        io::format_g17(worst).c_str());
    }
}

void cmd_reconstruct(const ReconstructFlags& flags, const std::string& out_dir) {
    ensure_out_dir(out_dir);
    HomMap map = io::read_hom_map_csv(flags.map_path);

    bool have_config = false;
    RunConfig cfg;
    double b_over_F = 0.0;
    const std::string sidecar = io::sidecar_path(flags.map_path);
    if (std::filesystem::exists(sidecar)) {
        cfg = parse_run_config(io::read_json_file(sidecar));
        resolve_quadrature(cfg);
        b_over_F = cfg.dispersion.thermal_detuning_b / cfg.dispersion.walkoff_F();
        map.meta.T0 = cfg.crystal.T0;
        map.meta.w_p = cfg.pump.waist;
        map.meta.w_d = cfg.detection.waist;
        map.meta.model = model_name(cfg.scan.model);
        map.meta.compensated = cfg.scan.compensate;
        have_config = true;
    }
    if (flags.have_b_over_F) {
        b_over_F = flags.b_over_F;
        if (!have_config) map.meta.T0 = flags.t0;
    } else if (!have_config) {
        throw config_error("map " + flags.map_path + " has no metadata sidecar (" +
                           sidecar + "); pass --b-over-F (rad/(s K), the thermal "
                           "detuning rate over the walk-off) and optionally --t0");
    }

    const RecoveredIntensity rec = recover_spectral_intensity(map, b_over_F);
    for (const auto& w : rec.warnings) std::printf("warning: %s\n", w.c_str());

    double nrm = 0.0;
    for (double v : rec.intensity) nrm += v * v;
    nrm = std::sqrt(nrm);
    const double inv = nrm > 0.0 ? 1.0 / nrm : 0.0;

    const std::string rec_path = join_path(out_dir, "recovered.csv");
    {
        // reuse the io writer conventions by emitting the rows directly
        std::FILE* f = std::fopen(rec_path.c_str(), "wb");
        if (!f) throw io_error("cannot open " + rec_path + " for writing");
        std::fputs("temperature_c,omega_rad_s,intensity_normalized\n", f);
        for (std::size_t j = 0; j < rec.omega.size(); ++j) {
            const std::string line =
                io::format_g17(map.temperature_grid[j]) + "," +
                io::format_g17(rec.omega[j]) + "," +
                io::format_g17(rec.intensity[j] * inv) + "\n";
            std::fputs(line.c_str(), f);
        }
        const bool bad = std::ferror(f) != 0;
        if (std::fclose(f) != 0 || bad) throw io_error("write failed for " + rec_path);
    }
    if (have_config) {
        write_sidecar(rec_path, to_json(cfg));
    } else {
        write_sidecar(rec_path,
                      nlohmann::json{{"calibration",
                                      {{"b_over_F_rad_per_s_K", b_over_F},
                                       {"reference_temperature_c", map.meta.T0}}}});
    }
    announce(rec_path);

    if (have_config) {
        // reference |Phi|^2 from the sidecar's model, evaluated where the
        // recovered samples live: intensity labeled Omega0 mirrors the
        // spectrum, so the reference grid is -Omega0 (ascending)
        std::vector<double> ref_grid(rec.omega.size());
        for (std::size_t j = 0; j < rec.omega.size(); ++j)
            ref_grid[j] = -rec.omega[j];
        const SpectralWavefunction ref = make_spectrum_provider(
            cfg.scan.model, cfg.pump, cfg.detection, cfg.crystal, cfg.dispersion,
            cfg.quadrature, ref_grid, cfg.scan.compensate)(cfg.crystal.T0);
        std::vector<double> iref(ref.values.size());
        double rn = 0.0;
        for (std::size_t j = 0; j < ref.values.size(); ++j) {
            iref[j] = std::norm(ref.values[j]);
            rn += iref[j] * iref[j];
        }
        rn = std::sqrt(rn);
        double d2 = 0.0;
        for (std::size_t j = 0; j < iref.size(); ++j) {
            const double d = rec.intensity[j] * inv - iref[j] / rn;
            d2 += d * d;
        }
        std::printf("reconstruction residual: relative L2 vs %s model = %s\n",
                    model_name(cfg.scan.model).c_str(),
                    io::format_g17(std::sqrt(d2)).c_str());
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Spatio-spectral simulator for photon pairs from cw-pumped "
                 "collinear type-II down-conversion in ppKTP"};
    app.require_subcommand(1);

    std::string config_path, out_dir, model_text, temperature_text;
    int threads = 1;
    std::string wd_text, wp_text;
    ReconstructFlags rec_flags;
    rec_flags.t0 = ktp::T0_celsius;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--out", out_dir, "output directory (default: config "
                                          "output.directory)");
        sub->add_option("--threads", threads,
                        "reserved; runs are serial for bit-exact reproducibility")
            ->check(CLI::PositiveNumber);
        return sub;
    };

    CLI::App* sp = add_common(app.add_subcommand(
        "spectrum", "spectral and temporal amplitude at one temperature"));
    sp->add_option("--model", model_text, "toy | numeric-approx | numeric-exact");
    sp->add_option("--temperature", temperature_text, "crystal temperature, Celsius");

    CLI::App* hm = add_common(app.add_subcommand(
        "hom-map", "coincidence probability over delay and temperature"));
    hm->add_option("--model", model_text, "toy | numeric-approx | numeric-exact");

    CLI::App* sw = add_common(app.add_subcommand(
        "sweep", "bandwidth and duration across waist lists"));
    sw->add_option("--model", model_text,
                   "comma-separated models (default toy,numeric-approx)");
    sw->add_option("--wd-list", wd_text, "comma-separated detection waists, um");
    sw->add_option("--wp-list", wp_text, "comma-separated pump waists, um");

    CLI::App* rc = add_common(app.add_subcommand(
        "reconstruct", "recover spectral intensity from a stored map"));
    rc->add_option("map", rec_flags.map_path, "HomMap CSV file")->required();
    rc->add_option("--b-over-F", rec_flags.b_over_F,
                   "calibration: thermal detuning rate over walk-off, rad/(s K)");
    rc->add_option("--t0", rec_flags.t0,
                   "reference temperature for --b-over-F calibration, Celsius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg =
            config_path.empty() ? default_run_config() : load_run_config(config_path);
        if (!model_text.empty() && !sw->parsed())
            cfg.scan.model = parse_model(model_text);
        if (!temperature_text.empty()) {
            char* end = nullptr;
            const double T = std::strtod(temperature_text.c_str(), &end);
            if (end == temperature_text.c_str() || *end != '\0')
                throw config_error("--temperature: cannot parse \"" +
                                   temperature_text + "\" as Celsius");
            cfg.scan.temperature = T;
        }
        const std::string out = out_dir.empty() ? cfg.output.directory : out_dir;

        if (sp->parsed()) {
            cmd_spectrum(cfg, out);
        } else if (hm->parsed()) {
            cmd_hom_map(cfg, out);
        } else if (sw->parsed()) {
            SweepFlags flags;
            if (sw->count("--wd-list"))
                flags.w_d_list = parse_um_list(wd_text, "--wd-list");
            if (sw->count("--wp-list"))
                flags.w_p_list = parse_um_list(wp_text, "--wp-list");
            if (sw->count("--model")) flags.models = parse_model_list(model_text);
            cmd_sweep(cfg, out, flags);
        } else if (rc->parsed()) {
            rec_flags.have_b_over_F = rc->count("--b-over-F") > 0;
            cmd_reconstruct(rec_flags, out);
        }
        return 0;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace biphoton::cli

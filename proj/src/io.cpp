#include "biphoton/io.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace biphoton::io {

namespace {

// RAII FILE handle; throws io_error on open failure and on close-time errors
struct OutFile {
    std::FILE* f = nullptr;
    std::string path;

    explicit OutFile(const std::string& p) : path(p) {
        f = std::fopen(p.c_str(), "wb");
        if (!f) throw io_error("cannot open " + p + " for writing: " +
                               std::strerror(errno));
    }
    ~OutFile() {
        if (f) std::fclose(f);
    }
    void finish() {
        const bool bad = std::ferror(f) != 0;
        const bool closed_ok = std::fclose(f) == 0;
        f = nullptr;
        if (bad || !closed_ok) throw io_error("write failed for " + path);
    }
};

void put(OutFile& o, const std::string& s) {
    std::fwrite(s.data(), 1, s.size(), o.f);
}

// minimal CSV quoting for free-text fields (warnings may hold anything)
std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_warnings(const std::vector<std::string>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "; ";
        s += w[i];
    }
    return s;
}

double parse_double(const std::string& cell, const std::string& path) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw io_error("malformed numeric cell \"" + cell + "\" in " + path);
    return v;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

// signal-branch vacuum wavelength for a detuning, in nm
double lambda_nm_of(double Omega) {
    const double om = 0.5 * ktp::omega_pump + Omega;
    return 2.0 * M_PI * constants::c_light / om * 1e9;
}

} // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(const std::string& path, const SpectralWavefunction& s) {
    if (s.values.size() != s.omega_grid.size())
        throw io_error("spectrum size mismatch writing " + path);
    const double dom = grid_spacing(s.omega_grid);
    double nrm = 0.0;
    for (const auto& v : s.values) nrm += std::norm(v) * dom;
    const double inv = nrm > 0.0 ? 1.0 / nrm : 0.0;

    OutFile o(path);
    put(o, "omega_rad_s,lambda_nm,re,im,abs2_normalized\n");
    for (std::size_t k = 0; k < s.size(); ++k) {
        put(o, format_g17(s.omega_grid[k]) + "," +
               format_g17(lambda_nm_of(s.omega_grid[k])) + "," +
               format_g17(s.values[k].real()) + "," +
               format_g17(s.values[k].imag()) + "," +
               format_g17(std::norm(s.values[k]) * inv) + "\n");
    }
    o.finish();
}

void write_temporal_csv(const std::string& path, const TemporalWavefunction& t) {
    if (t.values.size() != t.time_grid.size() || t.time_grid.size() < 2)
        throw io_error("temporal size mismatch writing " + path);
    const double dt = t.time_grid[1] - t.time_grid[0];
    double nrm = 0.0;
    for (const auto& v : t.values) nrm += std::norm(v) * dt;
    const double inv = nrm > 0.0 ? 1.0 / nrm : 0.0;

    OutFile o(path);
    put(o, "t_s,re,im,abs2_normalized\n");
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        put(o, format_g17(t.time_grid[k]) + "," +
               format_g17(t.values[k].real()) + "," +
               format_g17(t.values[k].imag()) + "," +
               format_g17(std::norm(t.values[k]) * inv) + "\n");
    }
    o.finish();
}

void write_width_csv(const std::string& path, const std::vector<WidthReport>& rows) {
    OutFile o(path);
    put(o, "w_p_um,w_d_um,model,mean_lambda_nm,delta_lambda_nm,delta_t_fs,"
           "warnings\n");
    for (const auto& r : rows) {
        put(o, format_g17(r.w_p * 1e6) + "," + format_g17(r.w_d * 1e6) + "," +
               r.model + "," + format_g17(r.mean_lambda * 1e9) + "," +
               format_g17(r.delta_lambda * 1e9) + "," +
               format_g17(r.delta_t * 1e15) + "," +
               csv_quote(join_warnings(r.warnings)) + "\n");
    }
    o.finish();
}

void write_hom_map_csv(const std::string& path, const HomMap& map) {
    const std::size_t nt = map.tau_grid.size();
    const std::size_t nT = map.temperature_grid.size();
    if (map.C.size() != nt * nT) throw io_error("map shape mismatch writing " + path);

    OutFile o(path);
    put(o, "tau_ps\\temperature_c");
    for (double T : map.temperature_grid) put(o, "," + format_g17(T));
    put(o, "\n");
    for (std::size_t i = 0; i < nt; ++i) {
        put(o, format_g17(map.tau_grid[i] * 1e12));
        for (std::size_t j = 0; j < nT; ++j) put(o, "," + format_g17(map.at(i, j)));
        put(o, "\n");
    }
    o.finish();
}

HomMap read_hom_map_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty map file " + path);

    HomMap map;
    const auto header = split_csv_row(line);
    if (header.size() < 2) throw io_error("map header needs at least one "
                                          "temperature column in " + path);
    for (std::size_t j = 1; j < header.size(); ++j)
        map.temperature_grid.push_back(parse_double(header[j], path));

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_row(line);
        if (cells.size() != header.size())
            throw io_error("ragged map row in " + path);
        map.tau_grid.push_back(parse_double(cells[0], path) * 1e-12);
        for (std::size_t j = 1; j < cells.size(); ++j)
            map.C.push_back(parse_double(cells[j], path));
    }
    if (map.tau_grid.empty()) throw io_error("map has no delay rows in " + path);
    return map;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    OutFile o(path);
    put(o, j.dump(2));
    put(o, "\n");
    o.finish();
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw io_error("invalid JSON in " + path + ": " + e.what());
    }
}

std::string sidecar_path(const std::string& output_path) {
    const auto slash = output_path.find_last_of('/');
    const auto dot = output_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return output_path + ".config.json";
    return output_path.substr(0, dot) + ".config.json";
}

} // namespace biphoton::io

#pragma once

#include "biphoton/runconfig.hpp"

#include <string>
#include <vector>

// ---- command layer ----
//
// Four commands, each writing CSV data plus a JSON sidecar carrying the fully
// resolved configuration:
//
//   spectrum     spectral + temporal amplitude at one temperature, width JSON
//   hom-map      coincidence probability over the (delay, temperature) grid
//   sweep        width reports across detection / pump waist lists and models
//   reconstruct  spectral intensity recovered from a stored map
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 I/O
// error.  Identical inputs produce byte-identical outputs: computations run
// serially in a fixed order and all numeric text is printed with %.17g.

namespace biphoton::cli {

struct SweepFlags {
    std::vector<double> w_d_list; // m; empty = 25 log-spaced points, 2..60 um
    std::vector<double> w_p_list; // m; empty = the configured pump waist
    std::vector<SpectrumModel> models; // empty = toy + numeric-approx
};

struct ReconstructFlags {
    std::string map_path;
    bool have_b_over_F = false;
    double b_over_F = 0.0; // rad/(s K)
    double t0 = 0.0;       // Celsius, used only with --b-over-F
};

void cmd_spectrum(RunConfig cfg, const std::string& out_dir);
void cmd_hom_map(RunConfig cfg, const std::string& out_dir);
void cmd_sweep(RunConfig cfg, const std::string& out_dir, SweepFlags flags);
void cmd_reconstruct(const ReconstructFlags& flags, const std::string& out_dir);

// parse argv, dispatch, map exceptions to exit codes
int run_cli(int argc, const char* const* argv);

} // namespace biphoton::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ged/evolution.hpp"
#include "ged/importance.hpp"
#include "ged/temporal_network.hpp"

namespace ged::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kValidationError = 2, kConvergenceError = 3 };

struct RunConfig {
    std::string command;  // slice | track | export
    std::string edges_path;
    std::string edge_format = "tsv";
    std::string groups_path;
    std::string detect;  // "builtin" or empty
    std::uint64_t seed = 0;
    WindowSpec window;
    TrackOptions track;
    std::string importance = "sp";
    SPConfig sp;
    std::size_t min_group_size = 0;  // 0 = no filter
    std::string log_path;            // export input
    std::string dump_dir;            // slice per-frame edge dumps
    std::string out_path;            // empty = stdout
    std::vector<std::string> formats;
    std::string manifest_path;  // defaults to <out>.manifest.json
    int verbosity = 0;

    // Checks every numeric parameter before any work starts; returns warnings.
    std::vector<std::string> validate() const;
};

// Entry point shared by the executable and tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_file(const std::string& path);

}  // namespace ged::cli

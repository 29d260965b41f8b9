#pragma once

#include "volcp/config.hpp"
#include "volcp/synth.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// File-producing implementations of the command-line subcommands. Every
// command writes into `out_dir` (created if needed); output is a pure
// function of the inputs and configuration, independent of thread count.
namespace volcp::app {

namespace fs = std::filesystem;

// returns.csv and load_report.txt.
void cmd_returns(const fs::path& prices_csv, const fs::path& out_dir, MissingPolicy policy, bool long_format);

// Per series <out>/<ticker>/: map_trace.csv, params.csv, predictive.csv and
// posterior_<date>.json for each snapshot date; plus config_used.json.
void cmd_fit(const fs::path& returns_csv, const RunConfig& cfg, const fs::path& out_dir,
             const std::vector<std::string>& snapshot_dates = {});

// dissim.csv with pairwise W1 distances of the posteriors at `date`.
void cmd_distance(const fs::path& returns_csv, const std::string& date, const RunConfig& cfg,
                  const fs::path& out_dir);

// dendrogram.json, reordered.csv and, when k is given, clusters.csv.
void cmd_cluster(const fs::path& dissim_csv, std::optional<std::size_t> k, const fs::path& out_dir);

struct SimulateOptions {
    std::int64_t length = 500;
    std::size_t series = 1;
    // Empty: draw every segment from the prior in the configuration.
    std::vector<SegmentParams> segments;
    double y0 = 0.0;
    std::string start_date = "2000-01-03";
};

// returns.csv (y_0..y_T, one column per series) and truth.json.
void cmd_simulate(const SimulateOptions& opts, const RunConfig& cfg, const fs::path& out_dir);

// Parses "mu:alpha:sigma,mu:alpha:sigma,...".
std::vector<SegmentParams> parse_segments(const std::string& text);

}  // namespace volcp::app

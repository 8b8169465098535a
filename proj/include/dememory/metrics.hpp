#ifndef DEMEMORY_METRICS_HPP
#define DEMEMORY_METRICS_HPP

#include <filesystem>
#include <string>

#include "dememory/core.hpp"

namespace dememory {

struct SimReport {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::vector<std::uint64_t> hits_per_level;  // index 0 = level 1
    double hit_miss_ratio = 0.0;
    double hit_rate = 0.0;
    bool ratio_saturated = false;  // misses = 0 with hits > 0
    double weighted_cost = 0.0;
    double elapsed_ms = 0.0;

    // Configuration echo.
    std::string policy;
    std::vector<std::size_t> frames_per_level;
    std::uint64_t indexes = 0;
    std::uint64_t refs = 0;
    std::uint64_t seed = 0;
};

// hits / misses. 0 when there is nothing to report (hits = misses = 0);
// the largest representable value, with *saturated set, when misses = 0 and
// hits > 0 (unreachable for nonempty traces: the first access always misses).
double hit_miss_ratio(std::uint64_t hits, std::uint64_t misses, bool* saturated = nullptr);

double hit_rate(std::uint64_t hits, std::uint64_t misses);

// Capacity of the whole memory complex: sum of the per-level frame counts.
std::size_t total_volume(const std::vector<LevelSpec>& levels);

// Mean speed factor across levels.
double total_speed(const std::vector<LevelSpec>& levels);

// Compact deterministic rendering ("%.9g") used for every metric value that
// lands in CSV output.
std::string format_metric(double value);

// One CSV line, 13 fields:
// timestamp_iso8601,policy,levels,frames_per_level,indexes,refs,seed,
// hits,misses,hit_miss_ratio,hit_rate,weighted_cost,elapsed_ms
// frames_per_level joins the per-level counts with '|'.
std::string format_log_line(const SimReport& report, const std::string& timestamp);

// Appends one line to the log, never truncating existing content. The line is
// written whole; I/O failures surface as std::runtime_error naming the path.
void append_log(const SimReport& report, const std::filesystem::path& path);

// "dememory.log" in the working directory, or $DEMEMORY_LOG when set.
std::filesystem::path default_log_path();

}  // namespace dememory

#endif

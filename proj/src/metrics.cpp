#include "dememory/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>

namespace dememory {

double hit_miss_ratio(std::uint64_t hits, std::uint64_t misses, bool* saturated) {
    if (saturated) *saturated = false;
    if (misses > 0) return static_cast<double>(hits) / static_cast<double>(misses);
    if (hits == 0) return 0.0;
    if (saturated) *saturated = true;
    return std::numeric_limits<double>::max();
}

double hit_rate(std::uint64_t hits, std::uint64_t misses) {
    const std::uint64_t total = hits + misses;
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

std::size_t total_volume(const std::vector<LevelSpec>& levels) {
    std::size_t sum = 0;
    for (const auto& level : levels) sum += level.capacity_frames;
    return sum;
}

double total_speed(const std::vector<LevelSpec>& levels) {
    if (levels.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& level : levels) sum += level.speed_factor;
    return sum / static_cast<double>(levels.size());
}

std::string format_metric(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

namespace {

std::string joined_frames(const std::vector<std::size_t>& frames) {
    std::ostringstream out;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i > 0) out << '|';
        out << frames[i];
    }
    return out.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

}  // namespace

std::string format_log_line(const SimReport& report, const std::string& timestamp) {
    std::ostringstream line;
    line << timestamp << ',' << report.policy << ',' << report.frames_per_level.size() << ','
         << joined_frames(report.frames_per_level) << ',' << report.indexes << ','
         << report.refs << ',' << report.seed << ',' << report.hits << ',' << report.misses
         << ',' << format_metric(report.hit_miss_ratio) << ','
         << format_metric(report.hit_rate) << ',' << format_metric(report.weighted_cost)
         << ',' << format_metric(report.elapsed_ms);
    return line.str();
}

void append_log(const SimReport& report, const std::filesystem::path& path) {
    static std::mutex log_mutex;
    const std::string line = format_log_line(report, utc_timestamp()) + "\n";
    std::lock_guard<std::mutex> lock(log_mutex);
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open log file: " + path.string());
    out << line;
    out.flush();
    if (!out) throw std::runtime_error("write failed on log file: " + path.string());
}

std::filesystem::path default_log_path() {
    if (const char* override_path = std::getenv("DEMEMORY_LOG"); override_path && *override_path)
        return override_path;
    return "dememory.log";
}

}  // namespace dememory

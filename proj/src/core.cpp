#include "dememory/core.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace dememory {

double HierarchyConfig::resolved_miss_penalty() const {
    if (miss_penalty > 0.0) return miss_penalty;
    double slowest = 1.0;
    for (const auto& level : levels) slowest = std::max(slowest, level.speed_factor);
    return 10.0 * slowest;
}

void HierarchyConfig::validate() const {
    if (levels.empty()) throw std::invalid_argument("levels: at least one memory level required");
    double prev_speed = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& level = levels[i];
        const std::string where = "levels[" + std::to_string(i + 1) + "]";
        if (level.capacity_frames < 1)
            throw std::invalid_argument(where + ".capacity_frames: must be >= 1");
        if (level.speed_factor < 1.0)
            throw std::invalid_argument(where + ".speed_factor: must be >= 1");
        if (level.tick_divisor < 1)
            throw std::invalid_argument(where + ".tick_divisor: must be >= 1");
        if (level.speed_factor < prev_speed)
            throw std::invalid_argument(where + ".speed_factor: levels must be ordered fastest to slowest");
        prev_speed = level.speed_factor;
    }
    if (counter_width_bits < 1 || counter_width_bits > 63)
        throw std::invalid_argument("counter_width_bits: must be in [1, 63]");
    if (tick_period < 1) throw std::invalid_argument("tick_period: must be >= 1");
    if (write_probability < 0.0 || write_probability > 1.0)
        throw std::invalid_argument("write_probability: must be in [0, 1]");
}

HierarchyConfig HierarchyConfig::single_level(std::size_t frames, double speed) {
    HierarchyConfig config;
    config.levels.push_back({frames, speed, 1});
    return config;
}

HierarchyConfig HierarchyConfig::tiered(std::size_t frames_per_level,
                                        const std::vector<double>& speeds) {
    HierarchyConfig config;
    for (double speed : speeds) {
        const auto divisor = static_cast<std::uint64_t>(speed < 1.0 ? 1.0 : speed + 0.5);
        config.levels.push_back({frames_per_level, speed, divisor < 1 ? 1 : divisor});
    }
    return config;
}

unsigned leading_zero_bits(std::uint64_t counter, unsigned width) {
    assert(width >= 1 && width <= 63);
    assert(counter < (std::uint64_t{1} << width));
    if (counter == 0) return width;
    return static_cast<unsigned>(std::countl_zero(counter)) - (64 - width);
}

}  // namespace dememory

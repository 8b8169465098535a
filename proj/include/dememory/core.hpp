#ifndef DEMEMORY_CORE_HPP
#define DEMEMORY_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dememory {

using PageId = std::uint64_t;

enum class AccessKind : std::uint8_t { Read, Write };

struct Access {
    PageId page = 0;
    AccessKind kind = AccessKind::Read;
    std::uint64_t sequence = 0;  // 0-based position in the trace
};

using ReferenceTrace = std::vector<Access>;

// One tier of the memory complex. Level 1 is the fastest; speed factors are
// relative costs (multiples of level 1's cost), not absolute latencies.
struct LevelSpec {
    std::size_t capacity_frames = 1;
    double speed_factor = 1.0;
    std::uint64_t tick_divisor = 1;  // global ticks per local R-clearing tick (NRU)
};

inline constexpr std::uint64_t kDefaultTickPeriod = 10;
inline constexpr unsigned kDefaultCounterWidth = 8;

struct HierarchyConfig {
    std::vector<LevelSpec> levels;
    unsigned counter_width_bits = kDefaultCounterWidth;
    std::uint64_t tick_period = kDefaultTickPeriod;  // references per clock interrupt
    double miss_penalty = 0.0;                       // <= 0: 10x the slowest speed factor
    double write_probability = 0.0;

    int num_levels() const { return static_cast<int>(levels.size()); }

    // Backing store is modelled as a virtual level below the slowest one,
    // unbounded, holding every evicted page (the victim list).
    int backing_store_level() const { return num_levels() + 1; }

    double resolved_miss_penalty() const;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    static HierarchyConfig single_level(std::size_t frames, double speed = 1.0);
    // Equal capacity per level, one speed per level, tick_divisor rounded
    // from the speed factor.
    static HierarchyConfig tiered(std::size_t frames_per_level,
                                  const std::vector<double>& speeds);
};

struct PageEntry {
    PageId page = 0;
    bool r_bit = false;
    bool m_bit = false;
    std::uint64_t age_counter = 0;  // kept below 2^counter_width_bits
    std::uint64_t nfu_counter = 0;
    std::uint64_t arrival_stamp = 0;    // insertion into the current level's queue
    std::uint64_t last_used_stamp = 0;  // most recent reference
    int level = 0;                      // 1-based
};

struct Migration {
    PageId page = 0;
    int from_level = 0;  // backing_store_level() when faulted in from disk
    int to_level = 0;    // backing_store_level() when spilled out
};

struct AccessOutcome {
    bool hit = false;
    int level = 0;  // level the hit was served from; 0 on miss
    std::vector<Migration> migrations;
};

// Number of consecutive 0 bits starting from the most significant of the
// `width` bits. Requires counter < 2^width; width in [1, 63].
unsigned leading_zero_bits(std::uint64_t counter, unsigned width);

}  // namespace dememory

#endif

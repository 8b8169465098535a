#ifndef DEMEMORY_BENCH_HPP
#define DEMEMORY_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string_view>

#include "dememory/engine.hpp"
#include "dememory/workload.hpp"

namespace dememory::bench {

enum class SweepAxis { Frames, Indexes, Refs };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

inline constexpr std::uint64_t kSweepSeedBase = 1000;
inline constexpr std::size_t kSweepSeedCount = 20;

// Default sweeps stay at desk scale; larger axis points need allow_hpc.
inline constexpr std::uint64_t kDeskScaleCap = 100000;

std::vector<std::uint64_t> default_sweep_seeds();

struct SweepSpec {
    SweepAxis axis = SweepAxis::Refs;
    std::vector<std::uint64_t> points;  // strictly increasing
    std::uint64_t frames = 10;          // per level; the axis overrides its own parameter
    std::uint64_t indexes = 100;
    std::uint64_t refs = 1000;
    std::vector<Policy> policies;
    std::vector<double> level_speeds = {1.0, 2.0, 3.0};  // hierarchy for *_N policies
    std::vector<std::uint64_t> seeds;                    // empty: default_sweep_seeds()
    std::uint64_t tick_period = kDefaultTickPeriod;
    unsigned counter_width_bits = kDefaultCounterWidth;
    double write_probability = 0.0;
    bool allow_hpc = false;

    void validate() const;
};

struct SweepCell {
    std::uint64_t axis_value = 0;
    Policy policy = Policy::Aging1;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    SimReport report;
};

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single sample
};

struct SweepAggregate {
    std::uint64_t axis_value = 0;
    Policy policy = Policy::Aging1;
    std::size_t samples = 0;
    Stats hits, misses, hit_miss_ratio, hit_rate, weighted_cost;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Refs;
    std::vector<SweepCell> cells;            // (axis point, policy, seed) order
    std::vector<SweepAggregate> aggregates;  // (axis point, policy) order
};

// Runs every (axis point x policy x seed) cell. The same (axis point, seed)
// pair maps to one generated trace shared by every policy. Cells run in
// parallel; output order is deterministic. A cell whose setup fails is
// recorded as failed without aborting the sweep.
SweepResult run_sweep(const SweepSpec& spec);

// Header + one row per cell + two aggregate rows (seed column "mean" and
// "stddev") per (axis point, policy). LF line endings.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::string sweep_csv(const SweepResult& result);

struct PerturbedSpec {
    std::uint64_t frames = 10;  // per level
    std::uint64_t indexes = 100;
    std::uint64_t refs = 10000;
    std::vector<std::uint64_t> seeds;  // empty: default_sweep_seeds()
    std::vector<double> level_speeds = {1.0, 2.0, 3.0};
    std::uint64_t tick_period = kDefaultTickPeriod;
    unsigned counter_width_bits = kDefaultCounterWidth;
    double write_probability = 0.0;
};

struct PerturbedPair {
    std::uint64_t seed = 0;
    double ratio_correct = 0.0;
    double ratio_perturbed = 0.0;
};

struct PerturbedComparison {
    std::vector<PerturbedPair> pairs;
    double mean_correct = 0.0;
    double mean_perturbed = 0.0;
    double mean_difference = 0.0;  // mean(correct) - mean(perturbed)
};

// Paired control experiment: the correct level mapping against the perturbed
// one on identical traces per seed.
PerturbedComparison compare_perturbed(const PerturbedSpec& spec);

void write_comparison_csv(const PerturbedComparison& comparison, std::ostream& out);

}  // namespace dememory::bench

#endif

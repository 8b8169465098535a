#include "dememory/bench.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dememory::bench {

std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Frames: return "frames";
        case SweepAxis::Indexes: return "indexes";
        case SweepAxis::Refs: return "refs";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    if (name == "frames") return SweepAxis::Frames;
    if (name == "indexes") return SweepAxis::Indexes;
    if (name == "refs") return SweepAxis::Refs;
    return std::nullopt;
}

std::vector<std::uint64_t> default_sweep_seeds() {
    std::vector<std::uint64_t> seeds(kSweepSeedCount);
    std::iota(seeds.begin(), seeds.end(), kSweepSeedBase);
    return seeds;
}

void SweepSpec::validate() const {
    if (points.empty()) throw std::invalid_argument("points: at least one axis point required");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] <= points[i - 1])
            throw std::invalid_argument("points: must be strictly increasing");
    if (policies.empty()) throw std::invalid_argument("policies: at least one policy required");
    if (!allow_hpc && points.back() > kDeskScaleCap)
        throw std::invalid_argument("points: values beyond " + std::to_string(kDeskScaleCap) +
                                    " need the HPC flag");
}

namespace {

HierarchyConfig cell_hierarchy(const SweepSpec& spec, Policy policy, std::uint64_t frames) {
    HierarchyConfig config =
        is_multi_level(policy)
            ? HierarchyConfig::tiered(frames, spec.level_speeds)
            : HierarchyConfig::single_level(frames, spec.level_speeds.empty()
                                                        ? 1.0
                                                        : spec.level_speeds.front());
    config.tick_period = spec.tick_period;
    config.counter_width_bits = spec.counter_width_bits;
    config.write_probability = spec.write_probability;
    return config;
}

struct CellParams {
    std::uint64_t frames = 0;
    std::uint64_t indexes = 0;
    std::uint64_t refs = 0;
};

CellParams cell_params(const SweepSpec& spec, std::uint64_t axis_value) {
    CellParams params{spec.frames, spec.indexes, spec.refs};
    switch (spec.axis) {
        case SweepAxis::Frames: params.frames = axis_value; break;
        case SweepAxis::Indexes: params.indexes = axis_value; break;
        case SweepAxis::Refs: params.refs = axis_value; break;
    }
    return params;
}

// Runs tasks [0, count) across a small pool; each task owns distinct output
// slots, so no synchronization beyond the shared counter is needed.
template <typename Task>
void parallel_for(std::size_t count, Task task) {
    const std::size_t workers =
        std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
        });
    }
    for (auto& thread : pool) thread.join();
}

Stats stats_of(const std::vector<double>& values) {
    Stats stats;
    if (values.empty()) return stats;
    stats.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                 static_cast<double>(values.size());
    if (values.size() > 1) {
        double sum_sq = 0.0;
        for (double value : values) sum_sq += (value - stats.mean) * (value - stats.mean);
        stats.stddev = std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
    }
    return stats;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<std::uint64_t> seeds = spec.seeds.empty() ? default_sweep_seeds() : spec.seeds;

    SweepResult result;
    result.axis = spec.axis;
    result.cells.resize(spec.points.size() * spec.policies.size() * seeds.size());

    const auto cell_index = [&](std::size_t point, std::size_t policy, std::size_t seed) {
        return (point * spec.policies.size() + policy) * seeds.size() + seed;
    };

    // One task per (point, seed): the trace is generated once and shared by
    // every policy in the cell group.
    const std::size_t tasks = spec.points.size() * seeds.size();
    parallel_for(tasks, [&](std::size_t task) {
        const std::size_t point_idx = task / seeds.size();
        const std::size_t seed_idx = task % seeds.size();
        const std::uint64_t axis_value = spec.points[point_idx];
        const std::uint64_t seed = seeds[seed_idx];
        const CellParams params = cell_params(spec, axis_value);

        ReferenceTrace trace;
        std::string trace_error;
        try {
            trace = generate_trace(
                {params.indexes, params.refs, seed, spec.write_probability});
        } catch (const std::exception& e) {
            trace_error = e.what();
        }

        for (std::size_t policy_idx = 0; policy_idx < spec.policies.size(); ++policy_idx) {
            SweepCell& cell = result.cells[cell_index(point_idx, policy_idx, seed_idx)];
            cell.axis_value = axis_value;
            cell.policy = spec.policies[policy_idx];
            cell.seed = seed;
            if (!trace_error.empty()) {
                cell.failed = true;
                cell.error = trace_error;
                continue;
            }
            try {
                cell.report = simulate(cell.policy, cell_hierarchy(spec, cell.policy, params.frames),
                                       trace, params.indexes, seed);
            } catch (const std::exception& e) {
                cell.failed = true;
                cell.error = e.what();
            }
        }
    });

    for (std::size_t point_idx = 0; point_idx < spec.points.size(); ++point_idx) {
        for (std::size_t policy_idx = 0; policy_idx < spec.policies.size(); ++policy_idx) {
            SweepAggregate aggregate;
            aggregate.axis_value = spec.points[point_idx];
            aggregate.policy = spec.policies[policy_idx];
            std::vector<double> hits, misses, ratios, rates, costs;
            for (std::size_t seed_idx = 0; seed_idx < seeds.size(); ++seed_idx) {
                const SweepCell& cell = result.cells[cell_index(point_idx, policy_idx, seed_idx)];
                if (cell.failed) continue;
                hits.push_back(static_cast<double>(cell.report.hits));
                misses.push_back(static_cast<double>(cell.report.misses));
                ratios.push_back(cell.report.hit_miss_ratio);
                rates.push_back(cell.report.hit_rate);
                costs.push_back(cell.report.weighted_cost);
            }
            aggregate.samples = ratios.size();
            aggregate.hits = stats_of(hits);
            aggregate.misses = stats_of(misses);
            aggregate.hit_miss_ratio = stats_of(ratios);
            aggregate.hit_rate = stats_of(rates);
            aggregate.weighted_cost = stats_of(costs);
            result.aggregates.push_back(aggregate);
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "axis,axis_value,policy,seed,hits,misses,hit_miss_ratio,hit_rate,weighted_cost\n";
    const std::string_view axis = axis_name(result.axis);
    for (const SweepCell& cell : result.cells) {
        out << axis << ',' << cell.axis_value << ',' << policy_name(cell.policy) << ','
            << cell.seed << ',';
        if (cell.failed) {
            out << ",,,,\n";
            continue;
        }
        out << cell.report.hits << ',' << cell.report.misses << ','
            << format_metric(cell.report.hit_miss_ratio) << ','
            << format_metric(cell.report.hit_rate) << ','
            << format_metric(cell.report.weighted_cost) << '\n';
    }
    for (const SweepAggregate& aggregate : result.aggregates) {
        out << axis << ',' << aggregate.axis_value << ',' << policy_name(aggregate.policy)
            << ",mean," << format_metric(aggregate.hits.mean) << ','
            << format_metric(aggregate.misses.mean) << ','
            << format_metric(aggregate.hit_miss_ratio.mean) << ','
            << format_metric(aggregate.hit_rate.mean) << ','
            << format_metric(aggregate.weighted_cost.mean) << '\n';
        out << axis << ',' << aggregate.axis_value << ',' << policy_name(aggregate.policy)
            << ",stddev," << format_metric(aggregate.hits.stddev) << ','
            << format_metric(aggregate.misses.stddev) << ','
            << format_metric(aggregate.hit_miss_ratio.stddev) << ','
            << format_metric(aggregate.hit_rate.stddev) << ','
            << format_metric(aggregate.weighted_cost.stddev) << '\n';
    }
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    write_sweep_csv(result, out);
    return out.str();
}

PerturbedComparison compare_perturbed(const PerturbedSpec& spec) {
    const std::vector<std::uint64_t> seeds = spec.seeds.empty() ? default_sweep_seeds() : spec.seeds;

    HierarchyConfig config = HierarchyConfig::tiered(spec.frames, spec.level_speeds);
    config.tick_period = spec.tick_period;
    config.counter_width_bits = spec.counter_width_bits;
    config.write_probability = spec.write_probability;
    config.validate();
    if (config.num_levels() != 3)
        throw std::invalid_argument("level_speeds: the perturbed control needs 3 levels");

    PerturbedComparison comparison;
    comparison.pairs.resize(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        const std::uint64_t seed = seeds[i];
        const ReferenceTrace trace =
            generate_trace({spec.indexes, spec.refs, seed, spec.write_probability});
        const SimReport correct = simulate(Policy::AgingN, config, trace, spec.indexes, seed);
        const SimReport perturbed =
            simulate(Policy::AgingNPerturbed, config, trace, spec.indexes, seed);
        comparison.pairs[i] = {seed, correct.hit_miss_ratio, perturbed.hit_miss_ratio};
    });

    for (const PerturbedPair& pair : comparison.pairs) {
        comparison.mean_correct += pair.ratio_correct;
        comparison.mean_perturbed += pair.ratio_perturbed;
    }
    if (!comparison.pairs.empty()) {
        comparison.mean_correct /= static_cast<double>(comparison.pairs.size());
        comparison.mean_perturbed /= static_cast<double>(comparison.pairs.size());
    }
    comparison.mean_difference = comparison.mean_correct - comparison.mean_perturbed;
    return comparison;
}

void write_comparison_csv(const PerturbedComparison& comparison, std::ostream& out) {
    out << "seed,hit_miss_ratio_aging_n,hit_miss_ratio_perturbed,difference\n";
    for (const PerturbedPair& pair : comparison.pairs) {
        out << pair.seed << ',' << format_metric(pair.ratio_correct) << ','
            << format_metric(pair.ratio_perturbed) << ','
            << format_metric(pair.ratio_correct - pair.ratio_perturbed) << '\n';
    }
    out << "mean," << format_metric(comparison.mean_correct) << ','
        << format_metric(comparison.mean_perturbed) << ','
        << format_metric(comparison.mean_difference) << '\n';
}

}  // namespace dememory::bench

#include "dememory/engine.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace dememory {

Simulation::Simulation(Policy policy, HierarchyConfig config, ReferenceTrace trace)
    : policy_(policy),
      config_(std::move(config)),
      trace_(std::move(trace)),
      state_(policy, config_) {
    if (policy_ == Policy::Opt1) {
        oracle_ = OptOracle(trace_);
        state_.attach_oracle(&oracle_);
    }
    report_.policy = std::string(policy_name(policy_));
    for (const auto& level : config_.levels)
        report_.frames_per_level.push_back(level.capacity_frames);
    report_.hits_per_level.assign(config_.levels.size(), 0);
    report_.refs = trace_.size();
    std::uint64_t max_page = 0;
    for (const Access& access : trace_) max_page = std::max(max_page, access.page);
    report_.indexes = trace_.empty() ? 0 : max_page + 1;
}

void Simulation::set_workload_info(std::uint64_t indexes, std::uint64_t seed) {
    report_.indexes = indexes;
    report_.seed = seed;
}

AccessOutcome Simulation::step() {
    if (done()) throw std::logic_error("step: trace exhausted");
    const Access& access = trace_[position_];

    AccessOutcome outcome;
    if (const auto location = state_.lookup(access.page)) {
        outcome.hit = true;
        outcome.level = location->level;
        ++report_.hits;
        ++report_.hits_per_level[static_cast<std::size_t>(location->level - 1)];
        report_.weighted_cost +=
            config_.levels[static_cast<std::size_t>(location->level - 1)].speed_factor;
        state_.on_hit(access);
    } else {
        ++report_.misses;
        report_.weighted_cost += config_.resolved_miss_penalty();
        state_.erase_from_victim_list(access.page);
        outcome = state_.fault_insert(access);
    }

    ++position_;
    if (position_ % config_.tick_period == 0) {
        ++global_tick_;
        state_.on_tick(global_tick_);
    }
    if (snapshot_hook_) snapshot_hook_(state_, access, outcome);
    return outcome;
}

SimReport Simulation::run() {
    const auto start = std::chrono::steady_clock::now();
    while (!done()) step();
    const auto end = std::chrono::steady_clock::now();

    report_.hit_miss_ratio = hit_miss_ratio(report_.hits, report_.misses, &report_.ratio_saturated);
    report_.hit_rate = hit_rate(report_.hits, report_.misses);
    report_.elapsed_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start)
            .count();
    return report_;
}

SimReport simulate(Policy policy, const HierarchyConfig& config, const ReferenceTrace& trace,
                   std::uint64_t indexes, std::uint64_t seed) {
    Simulation sim(policy, config, trace);
    if (indexes > 0) sim.set_workload_info(indexes, seed);
    return sim.run();
}

namespace {

std::string binary_counter(std::uint64_t counter, unsigned width) {
    std::string bits(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if (counter >> (width - 1 - i) & 1) bits[i] = '1';
    return bits;
}

}  // namespace

std::string format_page_tables(const PolicyState& state) {
    const HierarchyConfig& config = state.config();
    std::ostringstream out;
    for (int level = 1; level <= config.num_levels(); ++level) {
        const LevelSlots& slots = state.level_slots(level);
        for (std::size_t slot = 0; slot < slots.size(); ++slot) {
            out << 'L' << level << '[' << slot << "] ";
            if (const auto& entry = slots[slot]) {
                out << "page=" << entry->page << " R=" << (entry->r_bit ? 1 : 0)
                    << " M=" << (entry->m_bit ? 1 : 0)
                    << " ctr=" << binary_counter(entry->age_counter, config.counter_width_bits);
            } else {
                out << "empty";
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace dememory

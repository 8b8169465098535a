#ifndef DEMEMORY_ENGINE_HPP
#define DEMEMORY_ENGINE_HPP

#include <functional>
#include <string>

#include "dememory/core.hpp"
#include "dememory/metrics.hpp"
#include "dememory/policies.hpp"

namespace dememory {

// One trace-driven run: walks the trace access by access, maintains hit/miss
// statistics and weighted access cost, and fires the policy's clock interrupt
// every tick_period references.
class Simulation {
public:
    using SnapshotHook =
        std::function<void(const PolicyState&, const Access&, const AccessOutcome&)>;

    // Validates the policy/config combination; throws std::invalid_argument.
    Simulation(Policy policy, HierarchyConfig config, ReferenceTrace trace);

    void set_snapshot_hook(SnapshotHook hook) { snapshot_hook_ = std::move(hook); }

    // For the report echo; indexes defaults to max page id + 1 over the trace.
    void set_workload_info(std::uint64_t indexes, std::uint64_t seed);

    bool done() const { return position_ >= trace_.size(); }
    AccessOutcome step();

    // Processes the remaining trace and finalizes the report.
    SimReport run();

    const PolicyState& state() const { return state_; }
    const ReferenceTrace& trace() const { return trace_; }
    std::uint64_t global_ticks() const { return global_tick_; }

private:
    Policy policy_;
    HierarchyConfig config_;
    ReferenceTrace trace_;
    OptOracle oracle_;
    PolicyState state_;
    SimReport report_;
    std::size_t position_ = 0;
    std::uint64_t global_tick_ = 0;
    SnapshotHook snapshot_hook_;
};

// Convenience wrapper: build, run, report.
SimReport simulate(Policy policy, const HierarchyConfig& config, const ReferenceTrace& trace,
                   std::uint64_t indexes = 0, std::uint64_t seed = 0);

// Stable text rendering of the per-level page tables, one line per slot:
//   L<level>[<slot>] page=<id> R=<bit> M=<bit> ctr=<binary counter>
//   L<level>[<slot>] empty
std::string format_page_tables(const PolicyState& state);

}  // namespace dememory

#endif

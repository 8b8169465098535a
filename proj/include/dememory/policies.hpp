#ifndef DEMEMORY_POLICIES_HPP
#define DEMEMORY_POLICIES_HPP

#include <deque>
#include <list>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dememory/core.hpp"

namespace dememory {

enum class Policy {
    Fifo1,
    SecondChance1,
    Clock1,
    Nru1,
    Lru1,
    Nfu1,
    Aging1,
    Opt1,
    NruN,
    FifoN,
    AgingN,
    AgingNPerturbed,
};

// Canonical name, used by the CLI, CSV output and the log file.
std::string_view policy_name(Policy policy);
std::optional<Policy> parse_policy(std::string_view name);
std::span<const Policy> all_policies();

bool is_multi_level(Policy policy);
bool uses_aging_counter(Policy policy);

using LevelSlots = std::vector<std::optional<PageEntry>>;

// NRU class: 2*R + M. Class 0 (not referenced, not modified) is evicted first.
unsigned nru_class(const PageEntry& entry);

// Victim selectors scan a full level; ties break toward the lowest slot index.
int nru_select_victim(const LevelSlots& slots);
int aging_select_victim(const LevelSlots& slots);
int lru_select_victim(const LevelSlots& slots);
int nfu_select_victim(const LevelSlots& slots);

// FIFO with a second chance: a head page with R=1 is cleared and re-queued at
// the tail; the first head found with R=0 is the victim (popped from the
// queue). If every R bit is 1 the full pass clears them and the original head
// is selected.
int second_chance_select(LevelSlots& slots, std::deque<int>& queue);

// Cyclic-hand formulation of the same policy; the hand is left one past the
// victim slot.
int clock_select(LevelSlots& slots, int& hand);

// Clock-interrupt bookkeeping.
void aging_tick(LevelSlots& slots, unsigned counter_width_bits);
void nfu_tick(LevelSlots& slots);
void clear_r_bits(LevelSlots& slots);

// Level an evicted page migrates to, derived from the staleness encoded in
// its aging counter: raw = ceil(z / floor(width / ML)) with z the leading
// zeros, clamped to [current_level+1, ML]. A page evicted from level ML maps
// to ML+1, i.e. the backing store.
int aging_target_level(std::uint64_t counter, int current_level, const HierarchyConfig& config);

// Control variant: the correct target is computed, then 2 and 3 are swapped
// (re-clamped, so only level-1 evictions are actually redirected). Requires a
// 3-level hierarchy.
int aging_target_level_perturbed(std::uint64_t counter, int current_level,
                                 const HierarchyConfig& config);

// Offline next-reference index over a fixed trace.
class OptOracle {
public:
    static constexpr std::uint64_t kNever = ~std::uint64_t{0};

    OptOracle() = default;
    explicit OptOracle(const ReferenceTrace& trace);

    // First position >= from where the page is referenced, kNever if none.
    std::uint64_t next_reference(PageId page, std::uint64_t from) const;

private:
    std::unordered_map<PageId, std::vector<std::uint64_t>> positions_;
};

// Belady: evict the resident page whose next use is farthest away; pages
// never referenced again beat any finite distance; ties break toward the
// lowest slot index.
int opt_select_victim(const LevelSlots& slots, const OptOracle& oracle, std::uint64_t position);

struct Location {
    int level = 0;  // 1-based
    int slot = 0;
};

// All mutable simulation state for one run: per-level page tables, FIFO
// queues and clock hands where the policy needs them, the resident-page
// index, and the victim list (backing store).
class PolicyState {
public:
    PolicyState(Policy policy, const HierarchyConfig& config);

    // Required before any fault for Opt1.
    void attach_oracle(const OptOracle* oracle) { oracle_ = oracle; }

    Policy policy() const { return policy_; }
    const HierarchyConfig& config() const { return *config_; }

    // Level holding the page, or nullopt (never seen, or in the victim list).
    std::optional<Location> lookup(PageId page) const;

    // Empties the slot and returns the entry intact. Throws std::logic_error
    // on an empty slot.
    PageEntry remove(int level, int slot);

    // Handles a page fault: builds a fresh entry for the page and runs the
    // policy's insertion recursion from level 1. The page must not be
    // resident.
    AccessOutcome fault_insert(const Access& access);

    void on_hit(const Access& access);
    void on_tick(std::uint64_t global_tick_index);

    const LevelSlots& level_slots(int level) const;
    std::size_t level_occupancy(int level) const;
    std::size_t resident_count() const { return resident_.size(); }

    const std::list<PageId>& victim_list() const { return victim_order_; }
    bool in_victim_list(PageId page) const { return victim_index_.count(page) != 0; }
    bool erase_from_victim_list(PageId page);

private:
    struct LevelState {
        LevelSlots slots;
        std::deque<int> queue;    // slot order, head = oldest (FIFO family)
        int clock_hand = 0;       // Clock1
        std::size_t occupancy = 0;
        std::vector<int> free_slots;  // min-heap of free slot indexes
    };

    int select_victim(LevelState& level_state, std::uint64_t position);
    int place(PageEntry entry, int level, std::uint64_t sequence);
    void insert_recursive(PageEntry entry, int level, int origin_level,
                          const Access& access, AccessOutcome& outcome);
    void spill_to_victim_list(const PageEntry& entry);

    Policy policy_;
    const HierarchyConfig* config_;
    std::vector<LevelState> levels_;
    std::unordered_map<PageId, Location> resident_;
    std::list<PageId> victim_order_;
    std::unordered_map<PageId, std::list<PageId>::iterator> victim_index_;
    const OptOracle* oracle_ = nullptr;
};

}  // namespace dememory

#endif

#include "dememory/policies.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>

namespace dememory {

namespace {

struct PolicyInfo {
    Policy policy;
    std::string_view name;
};

constexpr std::array<PolicyInfo, 12> kPolicyTable{{
    {Policy::Fifo1, "fifo"},
    {Policy::SecondChance1, "second-chance"},
    {Policy::Clock1, "clock"},
    {Policy::Nru1, "nru"},
    {Policy::Lru1, "lru"},
    {Policy::Nfu1, "nfu"},
    {Policy::Aging1, "aging"},
    {Policy::Opt1, "opt"},
    {Policy::NruN, "nru-n"},
    {Policy::FifoN, "fifo-n"},
    {Policy::AgingN, "aging-n"},
    {Policy::AgingNPerturbed, "aging-n-perturbed"},
}};

constexpr std::array<Policy, 12> kAllPolicies{
    Policy::Fifo1, Policy::SecondChance1, Policy::Clock1,  Policy::Nru1,
    Policy::Lru1,  Policy::Nfu1,          Policy::Aging1,  Policy::Opt1,
    Policy::NruN,  Policy::FifoN,         Policy::AgingN,  Policy::AgingNPerturbed,
};

bool uses_queue(Policy policy) {
    return policy == Policy::Fifo1 || policy == Policy::SecondChance1 ||
           policy == Policy::FifoN;
}

}  // namespace

std::string_view policy_name(Policy policy) {
    for (const auto& info : kPolicyTable)
        if (info.policy == policy) return info.name;
    return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
    for (const auto& info : kPolicyTable)
        if (info.name == name) return info.policy;
    return std::nullopt;
}

std::span<const Policy> all_policies() { return kAllPolicies; }

bool is_multi_level(Policy policy) {
    return policy == Policy::NruN || policy == Policy::FifoN ||
           policy == Policy::AgingN || policy == Policy::AgingNPerturbed;
}

bool uses_aging_counter(Policy policy) {
    return policy == Policy::Aging1 || policy == Policy::AgingN ||
           policy == Policy::AgingNPerturbed;
}

unsigned nru_class(const PageEntry& entry) {
    return 2u * (entry.r_bit ? 1u : 0u) + (entry.m_bit ? 1u : 0u);
}

namespace {

// Lowest slot index minimizing key(entry) over the occupied slots.
template <typename Key>
int min_slot_by(const LevelSlots& slots, Key key) {
    int best = -1;
    for (int slot = 0; slot < static_cast<int>(slots.size()); ++slot) {
        if (!slots[slot]) continue;
        if (best < 0 || key(*slots[slot]) < key(*slots[best])) best = slot;
    }
    if (best < 0) throw std::logic_error("victim selection on an empty level");
    return best;
}

}  // namespace

int nru_select_victim(const LevelSlots& slots) {
    return min_slot_by(slots, [](const PageEntry& e) { return nru_class(e); });
}

int aging_select_victim(const LevelSlots& slots) {
    return min_slot_by(slots, [](const PageEntry& e) { return e.age_counter; });
}

int lru_select_victim(const LevelSlots& slots) {
    return min_slot_by(slots, [](const PageEntry& e) { return e.last_used_stamp; });
}

int nfu_select_victim(const LevelSlots& slots) {
    return min_slot_by(slots, [](const PageEntry& e) { return e.nfu_counter; });
}

int second_chance_select(LevelSlots& slots, std::deque<int>& queue) {
    if (queue.empty()) throw std::logic_error("second chance on an empty queue");
    for (;;) {
        const int head = queue.front();
        queue.pop_front();
        PageEntry& entry = *slots[head];
        if (entry.r_bit) {
            entry.r_bit = false;
            queue.push_back(head);
        } else {
            return head;
        }
    }
}

int clock_select(LevelSlots& slots, int& hand) {
    const int size = static_cast<int>(slots.size());
    while (slots[hand]->r_bit) {
        slots[hand]->r_bit = false;
        hand = (hand + 1) % size;
    }
    const int victim = hand;
    hand = (hand + 1) % size;
    return victim;
}

void aging_tick(LevelSlots& slots, unsigned counter_width_bits) {
    const std::uint64_t msb = std::uint64_t{1} << (counter_width_bits - 1);
    for (auto& slot : slots) {
        if (!slot) continue;
        slot->age_counter = (slot->age_counter >> 1) | (slot->r_bit ? msb : 0);
        slot->r_bit = false;
    }
}

void nfu_tick(LevelSlots& slots) {
    for (auto& slot : slots) {
        if (!slot) continue;
        slot->nfu_counter += slot->r_bit ? 1 : 0;
        slot->r_bit = false;
    }
}

void clear_r_bits(LevelSlots& slots) {
    for (auto& slot : slots)
        if (slot) slot->r_bit = false;
}

int aging_target_level(std::uint64_t counter, int current_level, const HierarchyConfig& config) {
    const int ml = config.num_levels();
    const unsigned bucket = config.counter_width_bits / static_cast<unsigned>(ml);
    assert(bucket >= 1);
    const unsigned zeros = leading_zero_bits(counter, config.counter_width_bits);
    const int raw = static_cast<int>((zeros + bucket - 1) / bucket);
    return std::max(current_level + 1, std::min(raw, ml));
}

int aging_target_level_perturbed(std::uint64_t counter, int current_level,
                                 const HierarchyConfig& config) {
    assert(config.num_levels() == 3);
    int target = aging_target_level(counter, current_level, config);
    if (target == 2)
        target = 3;
    else if (target == 3)
        target = 2;
    return std::max(current_level + 1, std::min(target, config.num_levels()));
}

OptOracle::OptOracle(const ReferenceTrace& trace) {
    for (const Access& access : trace) positions_[access.page].push_back(access.sequence);
}

std::uint64_t OptOracle::next_reference(PageId page, std::uint64_t from) const {
    const auto it = positions_.find(page);
    if (it == positions_.end()) return kNever;
    const auto& positions = it->second;
    const auto pos = std::lower_bound(positions.begin(), positions.end(), from);
    return pos == positions.end() ? kNever : *pos;
}

int opt_select_victim(const LevelSlots& slots, const OptOracle& oracle, std::uint64_t position) {
    int best = -1;
    std::uint64_t best_tag = 0;
    for (int slot = 0; slot < static_cast<int>(slots.size()); ++slot) {
        if (!slots[slot]) continue;
        const std::uint64_t tag = oracle.next_reference(slots[slot]->page, position);
        if (best < 0 || tag > best_tag) {
            best = slot;
            best_tag = tag;
        }
    }
    if (best < 0) throw std::logic_error("victim selection on an empty level");
    return best;
}

PolicyState::PolicyState(Policy policy, const HierarchyConfig& config)
    : policy_(policy), config_(&config) {
    config.validate();
    const int ml = config.num_levels();
    if (is_multi_level(policy) && ml < 2)
        throw std::invalid_argument(std::string(policy_name(policy)) +
                                    ": requires at least 2 memory levels");
    if (!is_multi_level(policy) && ml != 1)
        throw std::invalid_argument(std::string(policy_name(policy)) +
                                    ": requires a single memory level");
    if ((policy == Policy::AgingN || policy == Policy::AgingNPerturbed) &&
        config.counter_width_bits / static_cast<unsigned>(ml) == 0)
        throw std::invalid_argument(std::string(policy_name(policy)) +
                                    ": counter_width_bits must be >= the number of levels");
    if (policy == Policy::AgingNPerturbed && ml != 3)
        throw std::invalid_argument("aging-n-perturbed: requires exactly 3 memory levels");

    levels_.resize(config.levels.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const std::size_t capacity = config.levels[i].capacity_frames;
        levels_[i].slots.resize(capacity);
        levels_[i].free_slots.resize(capacity);
        for (std::size_t slot = 0; slot < capacity; ++slot)
            levels_[i].free_slots[slot] = static_cast<int>(slot);
        std::make_heap(levels_[i].free_slots.begin(), levels_[i].free_slots.end(),
                       std::greater<>{});
    }
}

std::optional<Location> PolicyState::lookup(PageId page) const {
    const auto it = resident_.find(page);
    if (it == resident_.end()) return std::nullopt;
    return it->second;
}

PageEntry PolicyState::remove(int level, int slot) {
    LevelState& state = levels_.at(static_cast<std::size_t>(level - 1));
    auto& cell = state.slots.at(static_cast<std::size_t>(slot));
    if (!cell) throw std::logic_error("remove: slot is empty");
    PageEntry entry = *cell;
    cell.reset();
    --state.occupancy;
    state.free_slots.push_back(slot);
    std::push_heap(state.free_slots.begin(), state.free_slots.end(), std::greater<>{});
    resident_.erase(entry.page);
    const auto queued = std::find(state.queue.begin(), state.queue.end(), slot);
    if (queued != state.queue.end()) state.queue.erase(queued);
    return entry;
}

int PolicyState::place(PageEntry entry, int level, std::uint64_t sequence) {
    LevelState& state = levels_[static_cast<std::size_t>(level - 1)];
    std::pop_heap(state.free_slots.begin(), state.free_slots.end(), std::greater<>{});
    const int slot = state.free_slots.back();
    state.free_slots.pop_back();

    entry.level = level;
    entry.arrival_stamp = sequence;
    resident_[entry.page] = {level, slot};
    state.slots[static_cast<std::size_t>(slot)] = entry;
    ++state.occupancy;
    if (uses_queue(policy_)) state.queue.push_back(slot);
    return slot;
}

void PolicyState::spill_to_victim_list(const PageEntry& entry) {
    victim_order_.push_back(entry.page);
    victim_index_[entry.page] = std::prev(victim_order_.end());
}

int PolicyState::select_victim(LevelState& state, std::uint64_t position) {
    switch (policy_) {
        case Policy::Fifo1: {
            const int head = state.queue.front();
            state.queue.pop_front();
            return head;
        }
        case Policy::SecondChance1:
            return second_chance_select(state.slots, state.queue);
        case Policy::Clock1:
            return clock_select(state.slots, state.clock_hand);
        case Policy::Nru1:
        case Policy::NruN:
            return nru_select_victim(state.slots);
        case Policy::Lru1:
            return lru_select_victim(state.slots);
        case Policy::Nfu1:
            return nfu_select_victim(state.slots);
        case Policy::Aging1:
        case Policy::AgingN:
        case Policy::AgingNPerturbed:
            return aging_select_victim(state.slots);
        case Policy::Opt1:
            return opt_select_victim(state.slots, *oracle_, position);
        case Policy::FifoN:
            break;  // handled in insert_recursive
    }
    throw std::logic_error("select_victim: unreachable");
}

AccessOutcome PolicyState::fault_insert(const Access& access) {
    if (resident_.count(access.page))
        throw std::logic_error("fault_insert: page already resident");
    if (policy_ == Policy::Opt1 && oracle_ == nullptr)
        throw std::logic_error("opt: full trace oracle not attached");

    PageEntry entry;
    entry.page = access.page;
    entry.r_bit = true;
    entry.m_bit = access.kind == AccessKind::Write;
    entry.age_counter =
        uses_aging_counter(policy_) ? std::uint64_t{1} << (config_->counter_width_bits - 1) : 0;
    entry.arrival_stamp = access.sequence;
    entry.last_used_stamp = access.sequence;

    AccessOutcome outcome;
    outcome.hit = false;
    insert_recursive(entry, 1, config_->backing_store_level(), access, outcome);
    return outcome;
}

void PolicyState::insert_recursive(PageEntry entry, int level, int origin_level,
                                   const Access& access, AccessOutcome& outcome) {
    const int ml = config_->num_levels();
    if (level > ml) {
        spill_to_victim_list(entry);
        outcome.migrations.push_back({entry.page, origin_level, config_->backing_store_level()});
        return;
    }

    LevelState& state = levels_[static_cast<std::size_t>(level - 1)];
    if (state.occupancy < state.slots.size()) {
        place(entry, level, access.sequence);
        outcome.migrations.push_back({entry.page, origin_level, level});
        return;
    }

    if (policy_ == Policy::FifoN) {
        const bool any_clear = std::any_of(
            state.slots.begin(), state.slots.end(),
            [](const std::optional<PageEntry>& slot) { return slot && !slot->r_bit; });
        if (!any_clear) {
            // Every page here is freshly referenced; the incoming page itself
            // descends and this level stays untouched.
            insert_recursive(entry, level + 1, origin_level, access, outcome);
            return;
        }
        const int victim_slot = second_chance_select(state.slots, state.queue);
        PageEntry victim = remove(level, victim_slot);
        place(entry, level, access.sequence);
        outcome.migrations.push_back({entry.page, origin_level, level});
        insert_recursive(victim, level + 1, level, access, outcome);
        return;
    }

    const int victim_slot = select_victim(state, access.sequence);
    PageEntry victim = remove(level, victim_slot);
    place(entry, level, access.sequence);
    outcome.migrations.push_back({entry.page, origin_level, level});

    int next_level = level + 1;
    if (policy_ == Policy::AgingN)
        next_level = aging_target_level(victim.age_counter, level, *config_);
    else if (policy_ == Policy::AgingNPerturbed)
        next_level = aging_target_level_perturbed(victim.age_counter, level, *config_);
    insert_recursive(victim, next_level, level, access, outcome);
}

void PolicyState::on_hit(const Access& access) {
    const auto it = resident_.find(access.page);
    if (it == resident_.end()) throw std::logic_error("on_hit: page not resident");
    PageEntry& entry =
        *levels_[static_cast<std::size_t>(it->second.level - 1)]
             .slots[static_cast<std::size_t>(it->second.slot)];
    entry.r_bit = true;
    if (access.kind == AccessKind::Write) entry.m_bit = true;
    entry.last_used_stamp = access.sequence;
}

void PolicyState::on_tick(std::uint64_t global_tick_index) {
    switch (policy_) {
        case Policy::Nru1:
            clear_r_bits(levels_[0].slots);
            break;
        case Policy::NruN:
            // Slower levels tick at a fraction of the global rate.
            for (std::size_t i = 0; i < levels_.size(); ++i)
                if (global_tick_index % config_->levels[i].tick_divisor == 0)
                    clear_r_bits(levels_[i].slots);
            break;
        case Policy::Aging1:
        case Policy::AgingN:
        case Policy::AgingNPerturbed:
            for (auto& level : levels_) aging_tick(level.slots, config_->counter_width_bits);
            break;
        case Policy::Nfu1:
            nfu_tick(levels_[0].slots);
            break;
        default:
            break;
    }
}

const LevelSlots& PolicyState::level_slots(int level) const {
    return levels_.at(static_cast<std::size_t>(level - 1)).slots;
}

std::size_t PolicyState::level_occupancy(int level) const {
    return levels_.at(static_cast<std::size_t>(level - 1)).occupancy;
}

bool PolicyState::erase_from_victim_list(PageId page) {
    const auto it = victim_index_.find(page);
    if (it == victim_index_.end()) return false;
    victim_order_.erase(it->second);
    victim_index_.erase(it);
    return true;
}

}  // namespace dememory

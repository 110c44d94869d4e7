#include "ibsim/events.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ibsim/engine.hpp"

namespace ibsim {

namespace {

// Knuth multiplication method; one uniform_real per trial.
std::uint32_t draw_poisson(double rate, Rng& rng) {
    if (rate <= 0.0) return 0;
    const double limit = std::exp(-rate);
    std::uint32_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform_real();
    } while (p > limit);
    return k - 1;
}

}  // namespace

EventTimeline schedule_events(const SimConfig& cfg, Rng& rng) {
    EventTimeline timeline;
    for (std::uint32_t day = 0; day < cfg.duration_days; ++day) {
        const Tick day_start = static_cast<Tick>(day * cfg.ticks_per_day);
        std::uint32_t n_shocks = cfg.shocks_per_day;
        std::uint32_t n_announcements = cfg.announcements_per_day;
        if (cfg.event_schedule == EventSchedule::Poisson) {
            n_shocks = draw_poisson(cfg.shocks_per_day, rng);
            n_announcements = draw_poisson(cfg.announcements_per_day, rng);
        }
        for (std::uint32_t i = 0; i < n_shocks; ++i) {
            Tick t = day_start + static_cast<Tick>(rng.uniform_index(cfg.ticks_per_day));
            timeline.events.push_back({t, ItemKind::Shock});
        }
        for (std::uint32_t i = 0; i < n_announcements; ++i) {
            Tick t = day_start + static_cast<Tick>(rng.uniform_index(cfg.ticks_per_day));
            timeline.events.push_back({t, ItemKind::Announcement});
        }
    }
    std::stable_sort(timeline.events.begin(), timeline.events.end(),
                     [](const Event& a, const Event& b) { return a.tick < b.tick; });
    return timeline;
}

InfoItem inject_event(SimState& state, const Event& event, Rng& rng) {
    InfoItem item;
    item.item_id = static_cast<ItemId>(state.catalog.size());
    item.kind = event.kind;
    item.created_at = event.tick;
    if (event.kind == ItemKind::Shock) {
        const auto& members = state.community_members;
        item.origin = members[rng.uniform_index(members.size())];
        item.needed_by = Group::Professional;
    } else {
        item.origin = state.network.announcement_source;
        item.needed_by = Group::Community;
    }
    state.catalog.push_back(item);
    state.agents[item.origin].acquire(item.item_id);
    state.group_knowledge[group_index(state.network.group_of(item.origin))]
        .insert(item.item_id);
    ++state.needed_count[group_index(item.needed_by)];
    return item;
}

void write_timeline_csv(std::ostream& out, const std::vector<InfoItem>& catalog) {
    out << "tick,kind,item_id,origin\n";
    for (const InfoItem& item : catalog)
        out << item.created_at << "," << kind_name(item.kind) << ","
            << item.item_id << "," << item.origin << "\n";
}

}  // namespace ibsim

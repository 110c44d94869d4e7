// Event timeline: shocks and announcements placed on the tick axis, and
// the injection of the matching information items at their origin agents.

#pragma once

#include <iosfwd>
#include <vector>

#include "ibsim/config.hpp"
#include "ibsim/rng.hpp"
#include "ibsim/types.hpp"

namespace ibsim {

struct SimState;  // engine.hpp

struct Event {
    Tick tick = 0;
    ItemKind kind = ItemKind::Shock;

    bool operator==(const Event&) const = default;
};

struct EventTimeline {
    std::vector<Event> events;  // sorted by tick; same-day shocks precede
                                // same-tick announcements (insertion order)
};

// Fixed mode: exactly shocks_per_day and announcements_per_day events per
// day, ticks uniform within the day (shock ticks drawn first). Poisson
// mode draws each day's counts from Poisson(rate) instead.
EventTimeline schedule_events(const SimConfig& cfg, Rng& rng);

// Creates the InfoItem for one due event and places it in the origin
// agent's knowledge. Shock origins are drawn uniformly over community
// agents; announcements always originate at the network's
// announcement_source. Injection does not consume processing capacity.
InfoItem inject_event(SimState& state, const Event& event, Rng& rng);

// Debug export of realized injections: tick,kind,item_id,origin.
void write_timeline_csv(std::ostream& out, const std::vector<InfoItem>& catalog);

}  // namespace ibsim

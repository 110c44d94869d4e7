#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ibsim/engine.hpp"
#include "ibsim/events.hpp"

using namespace ibsim;

namespace {

SimConfig tiny_cfg() {
    SimConfig cfg;
    cfg.n_community = 4;
    cfg.n_professional = 4;
    cfg.hierarchy_sizes = {1, 1, 2};
    cfg.informal_ties_m = 1;
    cfg.n_intergroup_ties = 2;
    cfg.shocks_per_day = 3;
    cfg.announcements_per_day = 2;
    cfg.duration_days = 2;
    cfg.ticks_per_day = 10;
    cfg.seed = 21;
    return cfg;
}

}  // namespace

TEST_CASE("fixed schedule: exact daily counts inside day windows, sorted") {
    SimConfig cfg = tiny_cfg();
    Rng rng(3);
    EventTimeline tl = schedule_events(cfg, rng);
    REQUIRE(tl.events.size() == (3 + 2) * 2);
    CHECK(std::is_sorted(tl.events.begin(), tl.events.end(),
                         [](const Event& a, const Event& b) { return a.tick < b.tick; }));
    for (std::uint32_t day = 0; day < 2; ++day) {
        int shocks = 0, anns = 0;
        for (const Event& e : tl.events) {
            if (e.tick < Tick(day * 10) || e.tick >= Tick((day + 1) * 10)) continue;
            (e.kind == ItemKind::Shock ? shocks : anns)++;
        }
        CHECK(shocks == 3);
        CHECK(anns == 2);
    }
}

TEST_CASE("schedule determinism") {
    SimConfig cfg = tiny_cfg();
    Rng r1(9), r2(9);
    CHECK(schedule_events(cfg, r1).events == schedule_events(cfg, r2).events);
}

TEST_CASE("poisson schedule: zero rate stays silent, mean tracks the rate") {
    SimConfig cfg = tiny_cfg();
    cfg.event_schedule = EventSchedule::Poisson;
    cfg.shocks_per_day = 0;
    cfg.announcements_per_day = 6;
    cfg.duration_days = 400;
    Rng rng(17);
    EventTimeline tl = schedule_events(cfg, rng);
    for (const Event& e : tl.events) CHECK(e.kind == ItemKind::Announcement);
    const double per_day = tl.events.size() / 400.0;
    CHECK(std::abs(per_day - 6.0) < 0.5);  // ~6 +/- 5 sigma at 400 days
}

TEST_CASE("injection places items at the right origins") {
    SimConfig cfg = tiny_cfg();
    Rng rng(cfg.seed);
    Network net = assemble_network(cfg, rng);
    const AgentId source = net.announcement_source;
    SimState state = init_state(std::move(net), cfg);

    Rng inj(99);
    InfoItem shock = inject_event(state, Event{0, ItemKind::Shock}, inj);
    CHECK(shock.item_id == 0);
    CHECK(shock.needed_by == Group::Professional);
    CHECK(state.network.group_of(shock.origin) == Group::Community);
    CHECK(state.agents[shock.origin].knows(0));
    CHECK(state.group_knowledge[group_index(Group::Community)].count(0) == 1);
    CHECK(state.needed_count[group_index(Group::Professional)] == 1);

    InfoItem ann = inject_event(state, Event{4, ItemKind::Announcement}, inj);
    CHECK(ann.item_id == 1);
    CHECK(ann.origin == source);
    CHECK(ann.needed_by == Group::Community);
    CHECK(ann.created_at == 4);
    CHECK(state.needed_count[group_index(Group::Community)] == 1);
    REQUIRE(state.catalog.size() == 2);

    // Injection never consumes processing capacity: knowledge grew but no
    // share buffer or ledger entry appeared.
    CHECK(state.ledger.empty());
    for (const AgentState& a : state.agents) CHECK(a.share_buffer.empty());
}

TEST_CASE("timeline csv shape") {
    std::vector<InfoItem> catalog;
    catalog.push_back({0, ItemKind::Shock, 2, 5, Group::Professional});
    catalog.push_back({1, ItemKind::Announcement, 6, 7, Group::Community});
    std::ostringstream out;
    write_timeline_csv(out, catalog);
    CHECK(out.str() ==
          "tick,kind,item_id,origin\n"
          "5,shock,0,2\n"
          "7,announcement,1,6\n");
}

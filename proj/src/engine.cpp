#include "ibsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ibsim/analysis.hpp"

namespace ibsim {

std::optional<double> RunResult::pct_found_mean() const {
    double sum = 0.0;
    int n = 0;
    if (pct_found_communities) {
        sum += *pct_found_communities;
        ++n;
    }
    if (pct_found_professionals) {
        sum += *pct_found_professionals;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

SimState init_state(Network net, const SimConfig& cfg) {
    SimState state;
    state.agents.reserve(net.size());
    auto adj = net.adjacency();
    for (const AgentInfo& info : net.agents) {
        AgentState a;
        a.id = info.id;
        a.group = info.group;
        a.contacts = adj[info.id];
        a.q_values.assign(a.contacts.size(), 1.0);
        state.agents.push_back(std::move(a));
        if (info.group == Group::Community)
            state.community_members.push_back(info.id);
    }
    state.fe_counts.assign(net.size(), 0);
    state.perf_series.reserve(cfg.total_ticks());
    state.network = std::move(net);
    return state;
}

bool fe_account(const TransferRecord& record, const SimConfig& cfg) {
    if (!record.external_to_receiver_group) return false;
    return cfg.fe_novelty == FeNovelty::GroupNew ? record.group_new
                                                 : record.receiver_new;
}

namespace {

double apply_learning(AgentState& collector, AgentId source,
                      const std::vector<ItemId>& pulled,
                      const std::vector<InfoItem>& catalog, const SimConfig& cfg) {
    auto it = std::lower_bound(collector.contacts.begin(), collector.contacts.end(),
                               source);
    const std::size_t idx =
        static_cast<std::size_t>(it - collector.contacts.begin());
    double& q = collector.q_values[idx];
    if (!cfg.reward_per_item) {
        int r = collection_reward(collector, pulled, catalog);
        q = q_update(q, cfg.learning_rate, r);
    } else if (pulled.empty()) {
        q = q_update(q, cfg.learning_rate, 0.0);
    } else {
        for (ItemId item : pulled) {
            int r = catalog[item].needed_by == collector.group ? 1 : 0;
            q = q_update(q, cfg.learning_rate, r);
        }
    }
    return q;
}

}  // namespace

void step(SimState& state, const EventTimeline& timeline, const SimConfig& cfg,
          Rng& rng) {
    const auto& events = timeline.events;
    while (state.next_event < events.size() &&
           events[state.next_event].tick <= state.tick) {
        inject_event(state, events[state.next_event], rng);
        ++state.next_event;
    }

    std::vector<AgentId> order(state.agents.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    for (AgentId collector_id : order) {
        AgentState& collector = state.agents[collector_id];
        if (collector.contacts.empty()) continue;
        const AgentId source_id = choose_source(collector, cfg.mechanism, rng);
        std::vector<ItemId> pulled =
            pull_items(state.agents[source_id], collector, cfg.info_processing_limit);

        auto& receiving_group = state.group_knowledge[group_index(collector.group)];
        for (ItemId item_id : pulled) {
            const InfoItem& item = state.catalog[item_id];
            TransferRecord rec;
            rec.tick = state.tick;
            rec.provider = source_id;
            rec.receiver = collector_id;
            rec.item_id = item_id;
            rec.external_to_receiver_group =
                state.network.group_of(item.origin) != collector.group;
            rec.group_new = receiving_group.count(item_id) == 0;
            rec.receiver_new = true;  // pull_items only hands over unknown items
            rec.fe_awarded = fe_account(rec, cfg);
            if (rec.fe_awarded) ++state.fe_counts[source_id];
            if (rec.group_new && item.needed_by == collector.group)
                ++state.found_count[group_index(collector.group)];
            receiving_group.insert(item_id);
            state.ledger.push_back(rec);
        }
        if (cfg.mechanism == Mechanism::LN) {
            double q = apply_learning(collector, source_id, pulled, state.catalog, cfg);
            if (state.q_trace)
                state.q_trace->push_back({state.tick, collector_id, source_id, q});
        }
    }

    for (AgentState& agent : state.agents)
        refresh_share_buffer(agent, cfg.info_processing_limit);

    std::array<double, 2> perf;
    for (std::size_t g = 0; g < 2; ++g)
        perf[g] = state.needed_count[g] == 0
                      ? std::numeric_limits<double>::quiet_NaN()
                      : 100.0 * state.found_count[g] / state.needed_count[g];
    state.perf_series.push_back(perf);

    ++state.tick;
}

RunResult simulate(Network net, const EventTimeline& timeline,
                   const SimConfig& cfg, Rng& rng,
                   std::vector<QTraceRow>* q_trace) {
    SimState state = init_state(std::move(net), cfg);
    state.q_trace = q_trace;
    const Tick total = cfg.total_ticks();
    while (state.tick < total) step(state, timeline, cfg, rng);

    RunResult result;
    result.config = cfg;
    result.seed = cfg.seed;
    result.candidates = candidate_set(state.network);
    result.candidate_fe.reserve(result.candidates.size());
    for (AgentId id : result.candidates)
        result.candidate_fe.push_back(state.fe_counts[id]);

    const std::size_t comm = group_index(Group::Community);
    const std::size_t prof = group_index(Group::Professional);
    if (state.needed_count[comm] > 0)
        result.pct_found_communities =
            100.0 * state.found_count[comm] / state.needed_count[comm];
    if (state.needed_count[prof] > 0)
        result.pct_found_professionals =
            100.0 * state.found_count[prof] / state.needed_count[prof];

    for (const InfoItem& item : state.catalog)
        (item.kind == ItemKind::Shock ? result.realized_shocks
                                      : result.realized_announcements)++;
    result.catalog = std::move(state.catalog);
    result.ledger = std::move(state.ledger);
    result.perf_series = std::move(state.perf_series);
    return result;
}

RunResult run(const SimConfig& cfg, std::vector<QTraceRow>* q_trace) {
    validate(cfg);
    Rng rng(cfg.seed);
    Network net = assemble_network(cfg, rng);
    EventTimeline timeline = schedule_events(cfg, rng);
    return simulate(std::move(net), timeline, cfg, rng, q_trace);
}

}  // namespace ibsim

// The tick loop: event injection, shuffled agent actions, the transfer
// ledger with FE accounting, and end-of-run retrieval metrics.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "ibsim/agent.hpp"
#include "ibsim/config.hpp"
#include "ibsim/events.hpp"
#include "ibsim/network.hpp"
#include "ibsim/rng.hpp"
#include "ibsim/types.hpp"

namespace ibsim {

inline std::size_t group_index(Group g) {
    return g == Group::Community ? 0 : 1;
}

// One row per LN collection action: the post-update Q toward the source.
struct QTraceRow {
    Tick tick = 0;
    AgentId agent = 0;
    AgentId contact = 0;
    double q = 0.0;
};

struct SimState {
    Tick tick = 0;
    Network network;
    std::vector<AgentState> agents;
    std::vector<AgentId> community_members;  // ascending, for shock origins
    std::vector<InfoItem> catalog;           // item_id = index
    std::array<std::unordered_set<ItemId>, 2> group_knowledge;
    std::vector<TransferRecord> ledger;
    std::vector<std::uint32_t> fe_counts;    // per agent
    std::size_t next_event = 0;              // cursor into the timeline
    // Retrieval accounting per group: items needed so far / found so far.
    std::array<std::uint32_t, 2> needed_count{{0, 0}};
    std::array<std::uint32_t, 2> found_count{{0, 0}};
    std::vector<std::array<double, 2>> perf_series;  // per tick, NaN if no need yet
    std::vector<QTraceRow>* q_trace = nullptr;       // optional diagnostics sink
};

struct RunResult {
    SimConfig config;
    std::uint64_t seed = 0;
    std::vector<AgentId> candidates;          // ascending agent ids
    std::vector<std::uint32_t> candidate_fe;  // parallel to candidates
    std::optional<double> pct_found_communities;
    std::optional<double> pct_found_professionals;
    std::uint32_t realized_shocks = 0;
    std::uint32_t realized_announcements = 0;
    std::vector<InfoItem> catalog;  // realized items in injection order
    std::vector<TransferRecord> ledger;
    std::vector<std::array<double, 2>> perf_series;

    // Mean over the groups that had any external need.
    std::optional<double> pct_found_mean() const;
};

SimState init_state(Network net, const SimConfig& cfg);

// One tick: inject due events, act in shuffled order (one collection per
// agent), then refresh every share buffer.
void step(SimState& state, const EventTimeline& timeline, const SimConfig& cfg,
          Rng& rng);

// FE rule on a populated record: the item is external to the receiver's
// group and novel per the configured novelty mode.
bool fe_account(const TransferRecord& record, const SimConfig& cfg);

// Tick loop over a prepared network and timeline; rng continues the run
// stream. q_trace, when given, collects one row per LN collection action.
RunResult simulate(Network net, const EventTimeline& timeline,
                   const SimConfig& cfg, Rng& rng,
                   std::vector<QTraceRow>* q_trace = nullptr);

// Full run: build network, schedule events, simulate.
RunResult run(const SimConfig& cfg, std::vector<QTraceRow>* q_trace = nullptr);

}  // namespace ibsim

// Per-agent behavior: collection source choice under RC and LN, Q-value
// updates, the pull transfer primitive, and share-buffer upkeep.

#pragma once

#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ibsim/config.hpp"
#include "ibsim/rng.hpp"
#include "ibsim/types.hpp"

namespace ibsim {

struct AgentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AgentState {
    AgentId id = 0;
    Group group = Group::Community;
    std::vector<AgentId> contacts;      // neighbors, ascending id
    std::unordered_set<ItemId> knowledge;
    std::vector<ItemId> acquired;       // knowledge in acquisition order
    std::vector<ItemId> share_buffer;   // newest first, <= processing limit
    std::vector<double> q_values;       // parallel to contacts, init 1.0

    bool knows(ItemId item) const { return knowledge.count(item) != 0; }

    void acquire(ItemId item) {
        knowledge.insert(item);
        acquired.push_back(item);
    }
};

// Eq-style exponential update toward the reward: (1-alpha)*q + alpha*r.
inline double q_update(double q, double alpha, double reward) {
    return (1.0 - alpha) * q + alpha * reward;
}

// RC: uniform over contacts. LN: q_i / sum(q). Throws on zero contacts.
std::vector<double> collection_distribution(const AgentState& agent,
                                            Mechanism mechanism);

// Inverse-CDF sample over the contact list order; consumes exactly one
// uniform_real draw.
AgentId choose_source(const AgentState& agent, Mechanism mechanism, Rng& rng);

// Up to `limit` items from the source's share buffer that the collector
// does not know yet, in buffer order (newest first). Pulled items join the
// collector's knowledge immediately.
std::vector<ItemId> pull_items(const AgentState& source, AgentState& collector,
                               std::uint32_t limit);

// 1 iff at least one pulled item is needed by the collector's group.
int collection_reward(const AgentState& collector,
                      const std::vector<ItemId>& pulled,
                      const std::vector<InfoItem>& catalog);

// share_buffer := the `limit` most recently acquired items, newest first.
void refresh_share_buffer(AgentState& agent, std::uint32_t limit);

}  // namespace ibsim

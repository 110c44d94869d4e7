#include "ibsim/agent.hpp"

#include <algorithm>

namespace ibsim {

std::vector<double> collection_distribution(const AgentState& agent,
                                            Mechanism mechanism) {
    const std::size_t n = agent.contacts.size();
    if (n == 0)
        throw AgentError("agent " + std::to_string(agent.id) +
                         " has no contacts to collect from");
    std::vector<double> p(n);
    if (mechanism == Mechanism::RC) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
    } else {
        double total = 0.0;
        for (double q : agent.q_values) total += q;
        for (std::size_t i = 0; i < n; ++i) p[i] = agent.q_values[i] / total;
    }
    return p;
}

AgentId choose_source(const AgentState& agent, Mechanism mechanism, Rng& rng) {
    std::vector<double> p = collection_distribution(agent, mechanism);
    const double u = rng.uniform_real();
    double cum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        cum += p[i];
        if (u < cum) return agent.contacts[i];
    }
    return agent.contacts.back();  // guards rounding at u ~ 1
}

std::vector<ItemId> pull_items(const AgentState& source, AgentState& collector,
                               std::uint32_t limit) {
    std::vector<ItemId> pulled;
    for (ItemId item : source.share_buffer) {
        if (pulled.size() >= limit) break;
        if (collector.knows(item)) continue;
        collector.acquire(item);
        pulled.push_back(item);
    }
    return pulled;
}

int collection_reward(const AgentState& collector,
                      const std::vector<ItemId>& pulled,
                      const std::vector<InfoItem>& catalog) {
    for (ItemId item : pulled)
        if (catalog[item].needed_by == collector.group) return 1;
    return 0;
}

void refresh_share_buffer(AgentState& agent, std::uint32_t limit) {
    agent.share_buffer.clear();
    const std::size_t n = agent.acquired.size();
    const std::size_t take = std::min<std::size_t>(limit, n);
    for (std::size_t i = 0; i < take; ++i)
        agent.share_buffer.push_back(agent.acquired[n - 1 - i]);
}

}  // namespace ibsim

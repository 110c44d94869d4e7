// Two-group network construction: preferential-attachment informal ties
// inside each group, the professional command hierarchy, and
// degree-proportional inter-group ties.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ibsim/config.hpp"
#include "ibsim/rng.hpp"
#include "ibsim/types.hpp"

namespace ibsim {

enum class EdgeLabel : std::uint8_t { Informal, Formal, InterGroup };

struct Edge {
    AgentId a = 0;  // a < b always (undirected, normalized)
    AgentId b = 0;
    EdgeLabel label = EdgeLabel::Informal;

    bool operator==(const Edge&) const = default;
};

struct AgentInfo {
    AgentId id = 0;
    Group group = Group::Community;
    std::optional<HierarchyLevel> level;  // professionals only
};

struct Network {
    std::vector<AgentInfo> agents;  // dense ids 0..N-1, communities first
    std::vector<Edge> edges;
    AgentId announcement_source = 0;

    std::size_t size() const { return agents.size(); }
    Group group_of(AgentId id) const { return agents[id].group; }
    bool has_edge(AgentId a, AgentId b) const;
    std::vector<std::uint32_t> degrees() const;
    // Neighbor lists in ascending id order; index = agent id.
    std::vector<std::vector<AgentId>> adjacency() const;
};

struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Growth model: seed clique on the first m+1 members, then each later
// member attaches m distinct edges to earlier members, chosen with
// probability proportional to current degree (cumulative walk over the
// member list in given order; duplicate targets are redrawn). Exactly
// |members|*m - m*(m+1)/2 edges.
std::vector<Edge> build_informal_ties(const std::vector<AgentId>& members,
                                      std::uint32_t m, Rng& rng);

// Round-robin tree: tactical i under strategic i%s, operational j under
// tactical j%t. Deterministic, t+o edges. Ids are assigned level by level
// starting at first_id.
std::vector<Edge> build_hierarchy(const HierarchySizes& sizes, AgentId first_id);

// n_ties distinct cross edges. Each endpoint drawn with probability
// proportional to (current degree + 1); already-connected pairs are
// redrawn (both endpoints). Degrees update as ties are placed.
std::vector<Edge> build_intergroup_ties(const Network& net, std::uint32_t n_ties,
                                        Rng& rng);

// Full build in documented RNG order: community informal ties,
// professional informal ties, hierarchy (no RNG), inter-group ties,
// announcement source (uniform over strategic agents). Groups are checked
// for internal connectivity and repaired with extra informal edges if a
// component splits (cannot happen with the growth model above, kept as a
// guard for imported networks).
Network assemble_network(const SimConfig& cfg, Rng& rng);

// Line-oriented text format:
//   network <n_agents> <n_edges>
//   agent <id> <group> <level|->
//   edge <a> <b> <label>
//   announcement_source <id>
void write_network(std::ostream& out, const Network& net);
Network read_network(std::istream& in);

}  // namespace ibsim

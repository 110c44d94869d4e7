#include "ibsim/network.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

namespace ibsim {

namespace {

std::uint64_t pair_key(AgentId a, AgentId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

Edge make_edge(AgentId a, AgentId b, EdgeLabel label) {
    if (a > b) std::swap(a, b);
    return Edge{a, b, label};
}

const char* label_name(EdgeLabel l) {
    switch (l) {
        case EdgeLabel::Informal: return "informal";
        case EdgeLabel::Formal: return "formal";
        default: return "intergroup";
    }
}

EdgeLabel parse_label(const std::string& s) {
    if (s == "informal") return EdgeLabel::Informal;
    if (s == "formal") return EdgeLabel::Formal;
    if (s == "intergroup") return EdgeLabel::InterGroup;
    throw NetworkError("unknown edge label: " + s);
}

// Union-find over agent ids restricted to one group.
struct DisjointSets {
    std::vector<AgentId> parent;
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    AgentId find(AgentId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(AgentId a, AgentId b) { parent[find(a)] = find(b); }
};

}  // namespace

bool Network::has_edge(AgentId a, AgentId b) const {
    for (const Edge& e : edges)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
    return false;
}

std::vector<std::uint32_t> Network::degrees() const {
    std::vector<std::uint32_t> deg(agents.size(), 0);
    for (const Edge& e : edges) {
        ++deg[e.a];
        ++deg[e.b];
    }
    return deg;
}

std::vector<std::vector<AgentId>> Network::adjacency() const {
    std::vector<std::vector<AgentId>> adj(agents.size());
    for (const Edge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::vector<Edge> build_informal_ties(const std::vector<AgentId>& members,
                                      std::uint32_t m, Rng& rng) {
    const std::size_t n = members.size();
    if (m == 0) throw NetworkError("informal ties: m must be at least 1");
    if (n <= m) throw NetworkError("informal ties: group too small for m");

    std::vector<Edge> edges;
    // degree[i] is member-local; members join in list order.
    std::vector<std::uint32_t> degree(n, 0);

    for (std::size_t i = 0; i < m + 1; ++i)
        for (std::size_t j = i + 1; j < m + 1; ++j) {
            edges.push_back(make_edge(members[i], members[j], EdgeLabel::Informal));
            ++degree[i];
            ++degree[j];
        }

    for (std::size_t v = m + 1; v < n; ++v) {
        std::vector<std::size_t> targets;
        while (targets.size() < m) {
            // Cumulative walk over existing members in list order,
            // weighted by current degree.
            std::uint64_t total = 0;
            for (std::size_t i = 0; i < v; ++i) total += degree[i];
            std::uint64_t x = rng.uniform_index(total);
            std::size_t pick = 0;
            for (std::size_t i = 0; i < v; ++i) {
                if (x < degree[i]) {
                    pick = i;
                    break;
                }
                x -= degree[i];
            }
            if (std::find(targets.begin(), targets.end(), pick) != targets.end())
                continue;  // duplicate target, redraw
            targets.push_back(pick);
            edges.push_back(make_edge(members[v], members[pick], EdgeLabel::Informal));
            ++degree[v];
            ++degree[pick];
        }
    }
    return edges;
}

std::vector<Edge> build_hierarchy(const HierarchySizes& sizes, AgentId first_id) {
    const std::uint32_t s = sizes.strategic;
    const std::uint32_t t = sizes.tactical;
    const std::uint32_t o = sizes.operational;
    if (s == 0 && (t > 0 || o > 0))
        throw NetworkError("hierarchy: empty strategic level above a nonempty one");
    if (t == 0 && o > 0)
        throw NetworkError("hierarchy: empty tactical level above a nonempty one");

    std::vector<Edge> edges;
    const AgentId strategic0 = first_id;
    const AgentId tactical0 = first_id + s;
    const AgentId operational0 = first_id + s + t;
    for (std::uint32_t i = 0; i < t; ++i)
        edges.push_back(make_edge(tactical0 + i, strategic0 + i % s, EdgeLabel::Formal));
    for (std::uint32_t j = 0; j < o; ++j)
        edges.push_back(make_edge(operational0 + j, tactical0 + j % t, EdgeLabel::Formal));
    return edges;
}

std::vector<Edge> build_intergroup_ties(const Network& net, std::uint32_t n_ties,
                                        Rng& rng) {
    std::vector<AgentId> community, professional;
    for (const AgentInfo& a : net.agents)
        (a.group == Group::Community ? community : professional).push_back(a.id);
    if (static_cast<std::uint64_t>(n_ties) >
        static_cast<std::uint64_t>(community.size()) * professional.size())
        throw NetworkError("intergroup ties: more ties requested than cross pairs");

    std::vector<std::uint32_t> degree = net.degrees();
    std::unordered_set<std::uint64_t> connected;
    for (const Edge& e : net.edges) connected.insert(pair_key(e.a, e.b));

    // Weight = degree + 1 so zero-degree agents stay reachable.
    auto sample = [&](const std::vector<AgentId>& side) {
        std::uint64_t total = 0;
        for (AgentId id : side) total += degree[id] + 1;
        std::uint64_t x = rng.uniform_index(total);
        for (AgentId id : side) {
            std::uint64_t w = degree[id] + 1;
            if (x < w) return id;
            x -= w;
        }
        return side.back();
    };

    std::vector<Edge> edges;
    const std::uint64_t max_attempts =
        64 + 1024ULL * std::max<std::uint64_t>(1, n_ties);
    std::uint64_t attempts = 0;
    while (edges.size() < n_ties) {
        if (++attempts > max_attempts)
            throw NetworkError("intergroup ties: cannot place distinct cross edges");
        AgentId c = sample(community);
        AgentId p = sample(professional);
        if (connected.count(pair_key(c, p))) continue;  // resample the pair
        connected.insert(pair_key(c, p));
        edges.push_back(make_edge(c, p, EdgeLabel::InterGroup));
        ++degree[c];
        ++degree[p];
    }
    return edges;
}

namespace {

// Joins within-group components with informal edges: representative
// (lowest id) of every later component is linked to the first one's.
void repair_connectivity(Network& net, Group group) {
    std::vector<AgentId> members;
    for (const AgentInfo& a : net.agents)
        if (a.group == group) members.push_back(a.id);
    if (members.empty()) return;

    DisjointSets ds(net.agents.size());
    for (const Edge& e : net.edges)
        if (e.label != EdgeLabel::InterGroup &&
            net.group_of(e.a) == group && net.group_of(e.b) == group)
            ds.unite(e.a, e.b);

    std::map<AgentId, AgentId> component_rep;  // root -> lowest member id
    for (AgentId id : members) {
        AgentId root = ds.find(id);
        auto it = component_rep.find(root);
        if (it == component_rep.end() || id < it->second) component_rep[root] = id;
    }
    if (component_rep.size() <= 1) return;
    AgentId anchor = component_rep.begin()->second;
    for (auto it = std::next(component_rep.begin()); it != component_rep.end(); ++it) {
        net.edges.push_back(make_edge(anchor, it->second, EdgeLabel::Informal));
        ds.unite(anchor, it->second);
    }
}

}  // namespace

Network assemble_network(const SimConfig& cfg, Rng& rng) {
    validate(cfg);
    Network net;
    net.agents.reserve(cfg.total_agents());

    std::vector<AgentId> community, professional;
    for (std::uint32_t i = 0; i < cfg.n_community; ++i) {
        net.agents.push_back({i, Group::Community, std::nullopt});
        community.push_back(i);
    }
    const AgentId prof0 = cfg.n_community;
    for (std::uint32_t i = 0; i < cfg.n_professional; ++i) {
        AgentId id = prof0 + i;
        HierarchyLevel level =
            i < cfg.hierarchy_sizes.strategic ? HierarchyLevel::Strategic
            : i < cfg.hierarchy_sizes.strategic + cfg.hierarchy_sizes.tactical
                ? HierarchyLevel::Tactical
                : HierarchyLevel::Operational;
        net.agents.push_back({id, Group::Professional, level});
        professional.push_back(id);
    }

    auto community_ties = build_informal_ties(community, cfg.informal_ties_m, rng);
    auto professional_ties = build_informal_ties(professional, cfg.informal_ties_m, rng);
    auto formal = build_hierarchy(cfg.hierarchy_sizes, prof0);
    net.edges.insert(net.edges.end(), community_ties.begin(), community_ties.end());
    net.edges.insert(net.edges.end(), professional_ties.begin(), professional_ties.end());
    // A professional pair can hold both an informal tie and a hierarchy
    // edge; keep a single edge and let the formal label win.
    {
        std::map<std::uint64_t, std::size_t> index;
        for (std::size_t i = 0; i < net.edges.size(); ++i)
            index[pair_key(net.edges[i].a, net.edges[i].b)] = i;
        for (const Edge& e : formal) {
            auto it = index.find(pair_key(e.a, e.b));
            if (it != index.end())
                net.edges[it->second].label = EdgeLabel::Formal;
            else
                net.edges.push_back(e);
        }
    }

    auto cross = build_intergroup_ties(net, cfg.n_intergroup_ties, rng);
    net.edges.insert(net.edges.end(), cross.begin(), cross.end());

    repair_connectivity(net, Group::Community);
    repair_connectivity(net, Group::Professional);

    std::uint32_t n_strategic = cfg.hierarchy_sizes.strategic;
    net.announcement_source =
        prof0 + static_cast<AgentId>(rng.uniform_index(n_strategic));
    return net;
}

void write_network(std::ostream& out, const Network& net) {
    out << "network " << net.agents.size() << " " << net.edges.size() << "\n";
    for (const AgentInfo& a : net.agents) {
        out << "agent " << a.id << " " << group_name(a.group) << " "
            << (a.level ? level_name(*a.level) : "-") << "\n";
    }
    for (const Edge& e : net.edges)
        out << "edge " << e.a << " " << e.b << " " << label_name(e.label) << "\n";
    out << "announcement_source " << net.announcement_source << "\n";
}

Network read_network(std::istream& in) {
    Network net;
    std::string tag;
    std::size_t n_agents = 0, n_edges = 0;
    if (!(in >> tag) || tag != "network" || !(in >> n_agents >> n_edges))
        throw NetworkError("network file: bad header");
    for (std::size_t i = 0; i < n_agents; ++i) {
        std::string grp, lvl;
        AgentId id;
        if (!(in >> tag >> id >> grp >> lvl) || tag != "agent")
            throw NetworkError("network file: bad agent line");
        AgentInfo a;
        a.id = id;
        if (grp == "community") a.group = Group::Community;
        else if (grp == "professional") a.group = Group::Professional;
        else throw NetworkError("network file: unknown group " + grp);
        if (lvl == "strategic") a.level = HierarchyLevel::Strategic;
        else if (lvl == "tactical") a.level = HierarchyLevel::Tactical;
        else if (lvl == "operational") a.level = HierarchyLevel::Operational;
        else if (lvl != "-") throw NetworkError("network file: unknown level " + lvl);
        if (id != net.agents.size())
            throw NetworkError("network file: agent ids must be dense and ordered");
        net.agents.push_back(a);
    }
    for (std::size_t i = 0; i < n_edges; ++i) {
        AgentId a, b;
        std::string lbl;
        if (!(in >> tag >> a >> b >> lbl) || tag != "edge")
            throw NetworkError("network file: bad edge line");
        if (a >= n_agents || b >= n_agents || a == b)
            throw NetworkError("network file: invalid edge endpoints");
        net.edges.push_back(make_edge(a, b, parse_label(lbl)));
    }
    if (!(in >> tag >> net.announcement_source) || tag != "announcement_source")
        throw NetworkError("network file: missing announcement_source");
    if (net.announcement_source >= n_agents ||
        net.group_of(net.announcement_source) != Group::Professional)
        throw NetworkError("network file: announcement_source must be professional");
    return net;
}

}  // namespace ibsim

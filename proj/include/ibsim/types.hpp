// Core domain types shared by every module.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ibsim {

using AgentId = std::uint32_t;
using ItemId = std::uint32_t;
using Tick = std::int32_t;

enum class Group : std::uint8_t { Community, Professional };

enum class HierarchyLevel : std::uint8_t { Strategic, Tactical, Operational };

// Shocks originate at a random community agent and are needed by
// professionals; announcements originate at one fixed professional agent
// and are needed by communities.
enum class ItemKind : std::uint8_t { Shock, Announcement };

struct InfoItem {
    ItemId item_id = 0;
    ItemKind kind = ItemKind::Shock;
    AgentId origin = 0;
    Tick created_at = 0;
    Group needed_by = Group::Professional;
};

// One ledger entry per item transferred by a collection action.
struct TransferRecord {
    Tick tick = 0;
    AgentId provider = 0;
    AgentId receiver = 0;
    ItemId item_id = 0;
    bool external_to_receiver_group = false;
    bool group_new = false;
    bool receiver_new = false;
    bool fe_awarded = false;

    bool operator==(const TransferRecord&) const = default;
};

inline Group other_group(Group g) {
    return g == Group::Community ? Group::Professional : Group::Community;
}

inline const char* group_name(Group g) {
    return g == Group::Community ? "community" : "professional";
}

inline const char* kind_name(ItemKind k) {
    return k == ItemKind::Shock ? "shock" : "announcement";
}

inline const char* level_name(HierarchyLevel l) {
    switch (l) {
        case HierarchyLevel::Strategic: return "strategic";
        case HierarchyLevel::Tactical: return "tactical";
        default: return "operational";
    }
}

}  // namespace ibsim

// Simulation configuration: schema, validation, and the key = value
// config-file format (exact field names, lower_snake_case).

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ibsim/types.hpp"

namespace ibsim {

enum class Mechanism : std::uint8_t { RC, LN };

// GroupNew: award an FE only on the first delivery of an item into the
// group that needs it. ReceiverNew: award on every delivery to an agent
// that did not yet hold the item.
enum class FeNovelty : std::uint8_t { GroupNew, ReceiverNew };

enum class EventSchedule : std::uint8_t { Fixed, Poisson };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HierarchySizes {
    std::uint32_t strategic = 2;
    std::uint32_t tactical = 8;
    std::uint32_t operational = 40;

    std::uint32_t total() const { return strategic + tactical + operational; }
    bool operator==(const HierarchySizes&) const = default;
};

struct SimConfig {
    std::uint32_t n_community = 50;
    std::uint32_t n_professional = 50;
    HierarchySizes hierarchy_sizes;
    std::uint32_t informal_ties_m = 2;
    std::uint32_t n_intergroup_ties = 20;
    std::uint32_t shocks_per_day = 10;
    std::uint32_t announcements_per_day = 10;
    std::uint32_t duration_days = 4;
    std::uint32_t ticks_per_day = 144;  // 10-minute steps
    Mechanism mechanism = Mechanism::RC;
    double learning_rate = 0.1;  // used iff mechanism = LN
    std::uint32_t info_processing_limit = 3;
    FeNovelty fe_novelty = FeNovelty::GroupNew;
    EventSchedule event_schedule = EventSchedule::Fixed;
    bool reward_per_item = false;  // default: one reward per collection action
    std::uint64_t seed = 0;

    std::uint32_t total_agents() const { return n_community + n_professional; }
    Tick total_ticks() const { return static_cast<Tick>(duration_days * ticks_per_day); }

    bool operator==(const SimConfig&) const = default;
};

// Throws ConfigError on any violated invariant.
void validate(const SimConfig& cfg);

// key = value text, '#' comments. Unknown keys are rejected.
SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);
std::string serialize_config(const SimConfig& cfg);

const char* mechanism_name(Mechanism m);
const char* novelty_name(FeNovelty n);
const char* schedule_name(EventSchedule s);
Mechanism parse_mechanism(const std::string& s);
FeNovelty parse_novelty(const std::string& s);
EventSchedule parse_schedule(const std::string& s);

}  // namespace ibsim

#include "ibsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ibsim/kv.hpp"

namespace ibsim {

const char* mechanism_name(Mechanism m) { return m == Mechanism::RC ? "RC" : "LN"; }
const char* novelty_name(FeNovelty n) {
    return n == FeNovelty::GroupNew ? "group_new" : "receiver_new";
}
const char* schedule_name(EventSchedule s) {
    return s == EventSchedule::Fixed ? "fixed" : "poisson";
}

Mechanism parse_mechanism(const std::string& s) {
    if (s == "RC" || s == "rc") return Mechanism::RC;
    if (s == "LN" || s == "ln") return Mechanism::LN;
    throw ConfigError("mechanism: expected RC or LN, got '" + s + "'");
}

FeNovelty parse_novelty(const std::string& s) {
    if (s == "group_new") return FeNovelty::GroupNew;
    if (s == "receiver_new") return FeNovelty::ReceiverNew;
    throw ConfigError("fe_novelty: expected group_new or receiver_new, got '" + s + "'");
}

EventSchedule parse_schedule(const std::string& s) {
    if (s == "fixed") return EventSchedule::Fixed;
    if (s == "poisson") return EventSchedule::Poisson;
    throw ConfigError("event_schedule: expected fixed or poisson, got '" + s + "'");
}

void validate(const SimConfig& cfg) {
    if (cfg.n_community == 0) throw ConfigError("n_community: must be positive");
    if (cfg.n_professional == 0) throw ConfigError("n_professional: must be positive");
    if (cfg.hierarchy_sizes.total() != cfg.n_professional)
        throw ConfigError("hierarchy_sizes: must sum to n_professional");
    if (cfg.hierarchy_sizes.strategic == 0)
        throw ConfigError("hierarchy_sizes: strategic level must be non-empty");
    if (cfg.hierarchy_sizes.tactical == 0 && cfg.hierarchy_sizes.operational > 0)
        throw ConfigError("hierarchy_sizes: empty tactical level above operational agents");
    if (cfg.informal_ties_m == 0)
        throw ConfigError("informal_ties_m: must be at least 1");
    if (cfg.n_community <= cfg.informal_ties_m || cfg.n_professional <= cfg.informal_ties_m)
        throw ConfigError("informal_ties_m: each group must have more than m members");
    if (static_cast<std::uint64_t>(cfg.n_intergroup_ties) >
        static_cast<std::uint64_t>(cfg.n_community) * cfg.n_professional)
        throw ConfigError("n_intergroup_ties: exceeds the number of cross pairs");
    if (cfg.duration_days == 0) throw ConfigError("duration_days: must be positive");
    if (cfg.ticks_per_day == 0) throw ConfigError("ticks_per_day: must be positive");
    if (cfg.shocks_per_day > cfg.ticks_per_day * 100 ||
        cfg.announcements_per_day > cfg.ticks_per_day * 100)
        throw ConfigError("event rate implausibly large for the tick resolution");
    if (cfg.mechanism == Mechanism::LN &&
        (cfg.learning_rate <= 0.0 || cfg.learning_rate > 1.0))
        throw ConfigError("learning_rate: required in (0,1] when mechanism = LN");
    if (cfg.info_processing_limit == 0)
        throw ConfigError("info_processing_limit: must be positive");
}

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    bool saw_learning_rate = false;
    for (const kv::Line& ln : kv::parse_lines(text)) {
        const std::string& key = ln.key;
        const std::string& value = ln.value;
        if (key == "n_community") cfg.n_community = kv::parse_u32(key, value);
        else if (key == "n_professional") cfg.n_professional = kv::parse_u32(key, value);
        else if (key == "hierarchy_sizes") {
            auto parts = kv::split_commas(value);
            if (parts.size() != 3)
                throw ConfigError("hierarchy_sizes: expected strategic,tactical,operational");
            cfg.hierarchy_sizes.strategic = kv::parse_u32(key, parts[0]);
            cfg.hierarchy_sizes.tactical = kv::parse_u32(key, parts[1]);
            cfg.hierarchy_sizes.operational = kv::parse_u32(key, parts[2]);
        }
        else if (key == "informal_ties_m") cfg.informal_ties_m = kv::parse_u32(key, value);
        else if (key == "n_intergroup_ties") cfg.n_intergroup_ties = kv::parse_u32(key, value);
        else if (key == "shocks_per_day") cfg.shocks_per_day = kv::parse_u32(key, value);
        else if (key == "announcements_per_day") cfg.announcements_per_day = kv::parse_u32(key, value);
        else if (key == "duration_days") cfg.duration_days = kv::parse_u32(key, value);
        else if (key == "ticks_per_day") cfg.ticks_per_day = kv::parse_u32(key, value);
        else if (key == "mechanism") cfg.mechanism = parse_mechanism(value);
        else if (key == "learning_rate") {
            cfg.learning_rate = kv::parse_real(key, value);
            saw_learning_rate = true;
        }
        else if (key == "info_processing_limit") cfg.info_processing_limit = kv::parse_u32(key, value);
        else if (key == "fe_novelty") cfg.fe_novelty = parse_novelty(value);
        else if (key == "event_schedule") cfg.event_schedule = parse_schedule(value);
        else if (key == "reward_per_item") cfg.reward_per_item = kv::parse_bool(key, value);
        else if (key == "seed") cfg.seed = kv::parse_u64(key, value);
        else throw ConfigError("unknown key '" + key + "'");
    }
    if (cfg.mechanism == Mechanism::LN && !saw_learning_rate)
        throw ConfigError("learning_rate: required when mechanism = LN");
    validate(cfg);
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SimConfig& cfg) {
    char buf[64];
    std::ostringstream out;
    out << "n_community = " << cfg.n_community << "\n";
    out << "n_professional = " << cfg.n_professional << "\n";
    out << "hierarchy_sizes = " << cfg.hierarchy_sizes.strategic << ","
        << cfg.hierarchy_sizes.tactical << "," << cfg.hierarchy_sizes.operational << "\n";
    out << "informal_ties_m = " << cfg.informal_ties_m << "\n";
    out << "n_intergroup_ties = " << cfg.n_intergroup_ties << "\n";
    out << "shocks_per_day = " << cfg.shocks_per_day << "\n";
    out << "announcements_per_day = " << cfg.announcements_per_day << "\n";
    out << "duration_days = " << cfg.duration_days << "\n";
    out << "ticks_per_day = " << cfg.ticks_per_day << "\n";
    out << "mechanism = " << mechanism_name(cfg.mechanism) << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.learning_rate);
    out << "learning_rate = " << buf << "\n";
    out << "info_processing_limit = " << cfg.info_processing_limit << "\n";
    out << "fe_novelty = " << novelty_name(cfg.fe_novelty) << "\n";
    out << "event_schedule = " << schedule_name(cfg.event_schedule) << "\n";
    out << "reward_per_item = " << (cfg.reward_per_item ? "true" : "false") << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

}  // namespace ibsim

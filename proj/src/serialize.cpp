#include "ibsim/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ibsim {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const SimConfig& cfg) {
    ordered_json j;
    j["n_community"] = cfg.n_community;
    j["n_professional"] = cfg.n_professional;
    j["hierarchy_sizes"] = {cfg.hierarchy_sizes.strategic, cfg.hierarchy_sizes.tactical,
                            cfg.hierarchy_sizes.operational};
    j["informal_ties_m"] = cfg.informal_ties_m;
    j["n_intergroup_ties"] = cfg.n_intergroup_ties;
    j["shocks_per_day"] = cfg.shocks_per_day;
    j["announcements_per_day"] = cfg.announcements_per_day;
    j["duration_days"] = cfg.duration_days;
    j["ticks_per_day"] = cfg.ticks_per_day;
    j["mechanism"] = mechanism_name(cfg.mechanism);
    j["learning_rate"] = cfg.learning_rate;
    j["info_processing_limit"] = cfg.info_processing_limit;
    j["fe_novelty"] = novelty_name(cfg.fe_novelty);
    j["event_schedule"] = schedule_name(cfg.event_schedule);
    j["reward_per_item"] = cfg.reward_per_item;
    j["seed"] = cfg.seed;
    return j;
}

SimConfig config_from_json(const ordered_json& j) {
    SimConfig cfg;
    cfg.n_community = j.at("n_community").get<std::uint32_t>();
    cfg.n_professional = j.at("n_professional").get<std::uint32_t>();
    const auto& hs = j.at("hierarchy_sizes");
    if (!hs.is_array() || hs.size() != 3)
        throw SerializeError("hierarchy_sizes: expected a 3-element array");
    cfg.hierarchy_sizes.strategic = hs[0].get<std::uint32_t>();
    cfg.hierarchy_sizes.tactical = hs[1].get<std::uint32_t>();
    cfg.hierarchy_sizes.operational = hs[2].get<std::uint32_t>();
    cfg.informal_ties_m = j.at("informal_ties_m").get<std::uint32_t>();
    cfg.n_intergroup_ties = j.at("n_intergroup_ties").get<std::uint32_t>();
    cfg.shocks_per_day = j.at("shocks_per_day").get<std::uint32_t>();
    cfg.announcements_per_day = j.at("announcements_per_day").get<std::uint32_t>();
    cfg.duration_days = j.at("duration_days").get<std::uint32_t>();
    cfg.ticks_per_day = j.at("ticks_per_day").get<std::uint32_t>();
    cfg.mechanism = parse_mechanism(j.at("mechanism").get<std::string>());
    cfg.learning_rate = j.at("learning_rate").get<double>();
    cfg.info_processing_limit = j.at("info_processing_limit").get<std::uint32_t>();
    cfg.fe_novelty = parse_novelty(j.at("fe_novelty").get<std::string>());
    cfg.event_schedule = parse_schedule(j.at("event_schedule").get<std::string>());
    cfg.reward_per_item = j.at("reward_per_item").get<bool>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

ordered_json optional_pct(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

std::string result_to_json(const RunResult& result) {
    ordered_json j;
    j["format_version"] = 1;
    j["config"] = config_to_json(result.config);
    j["seed"] = result.seed;
    j["candidates"] = result.candidates;
    j["fe_counts"] = result.candidate_fe;
    j["pct_found_communities"] = optional_pct(result.pct_found_communities);
    j["pct_found_professionals"] = optional_pct(result.pct_found_professionals);
    j["pct_found_mean"] = optional_pct(result.pct_found_mean());
    j["realized_shocks"] = result.realized_shocks;
    j["realized_announcements"] = result.realized_announcements;
    j["n_transfers"] = result.ledger.size();
    return j.dump(2) + "\n";
}

RunResult result_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw SerializeError(std::string("result json: ") + e.what());
    }
    try {
        RunResult r;
        r.config = config_from_json(j.at("config"));
        r.seed = j.at("seed").get<std::uint64_t>();
        r.candidates = j.at("candidates").get<std::vector<AgentId>>();
        r.candidate_fe = j.at("fe_counts").get<std::vector<std::uint32_t>>();
        if (r.candidates.size() != r.candidate_fe.size())
            throw SerializeError("candidates and fe_counts differ in length");
        const auto& pc = j.at("pct_found_communities");
        if (!pc.is_null()) r.pct_found_communities = pc.get<double>();
        const auto& pp = j.at("pct_found_professionals");
        if (!pp.is_null()) r.pct_found_professionals = pp.get<double>();
        r.realized_shocks = j.at("realized_shocks").get<std::uint32_t>();
        r.realized_announcements = j.at("realized_announcements").get<std::uint32_t>();
        return r;
    } catch (const SerializeError&) {
        throw;
    } catch (const std::exception& e) {
        throw SerializeError(std::string("result json: ") + e.what());
    }
}

void write_result_json(const std::string& path, const RunResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SerializeError("cannot write " + path);
    out << result_to_json(result);
}

RunResult read_result_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SerializeError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return result_from_json(ss.str());
}

std::string ledger_to_jsonl(const std::vector<TransferRecord>& ledger) {
    std::string out;
    for (const TransferRecord& rec : ledger) {
        ordered_json j;
        j["tick"] = rec.tick;
        j["provider"] = rec.provider;
        j["receiver"] = rec.receiver;
        j["item"] = rec.item_id;
        j["external"] = rec.external_to_receiver_group;
        j["group_new"] = rec.group_new;
        j["receiver_new"] = rec.receiver_new;
        j["fe"] = rec.fe_awarded;
        out += j.dump();
        out += "\n";
    }
    return out;
}

std::vector<TransferRecord> ledger_from_jsonl(const std::string& text) {
    std::vector<TransferRecord> ledger;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ordered_json j = ordered_json::parse(line);
            TransferRecord rec;
            rec.tick = j.at("tick").get<Tick>();
            rec.provider = j.at("provider").get<AgentId>();
            rec.receiver = j.at("receiver").get<AgentId>();
            rec.item_id = j.at("item").get<ItemId>();
            rec.external_to_receiver_group = j.at("external").get<bool>();
            rec.group_new = j.at("group_new").get<bool>();
            rec.receiver_new = j.at("receiver_new").get<bool>();
            rec.fe_awarded = j.at("fe").get<bool>();
            ledger.push_back(rec);
        } catch (const std::exception& e) {
            throw SerializeError("ledger line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return ledger;
}

void write_ledger_jsonl(const std::string& path,
                        const std::vector<TransferRecord>& ledger) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SerializeError("cannot write " + path);
    out << ledger_to_jsonl(ledger);
}

std::vector<TransferRecord> read_ledger_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SerializeError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ledger_from_jsonl(ss.str());
}

}  // namespace ibsim

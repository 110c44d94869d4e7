#include "ibsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "ibsim/kv.hpp"
#include "ibsim/rng.hpp"

namespace ibsim {

namespace {

std::vector<std::uint32_t> parse_u32_list(const std::string& key,
                                          const std::string& value) {
    std::vector<std::uint32_t> out;
    for (const std::string& part : kv::split_commas(value))
        out.push_back(kv::parse_u32(key, part));
    return out;
}

std::vector<Mechanism> parse_mechanism_list(const std::string& value) {
    std::vector<Mechanism> out;
    for (const std::string& part : kv::split_commas(value))
        out.push_back(parse_mechanism(part));
    return out;
}

PairingRule parse_pairing(const std::string& s) {
    if (s == "full_factorial") return PairingRule::FullFactorial;
    if (s == "paired_rates") return PairingRule::PairedRates;
    throw ExperimentError("pairing: expected full_factorial or paired_rates, got '" + s + "'");
}

const char* pairing_name(PairingRule p) {
    return p == PairingRule::FullFactorial ? "full_factorial" : "paired_rates";
}

template <typename T>
std::string join(const std::vector<T>& values,
                 std::string (*fmt)(const T&)) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt(values[i]);
    }
    return out;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (name.empty()) throw ExperimentError("name: required");
    if (mechanisms.empty()) throw ExperimentError("mechanism: axis is empty");
    if (shocks_per_day.empty()) throw ExperimentError("shocks_per_day: axis is empty");
    if (announcements_per_day.empty())
        throw ExperimentError("announcements_per_day: axis is empty");
    if (n_intergroup_ties.empty())
        throw ExperimentError("n_intergroup_ties: axis is empty");
    if (repetitions == 0) throw ExperimentError("repetitions: must be positive");
    if (pairing == PairingRule::PairedRates &&
        shocks_per_day.size() != announcements_per_day.size())
        throw ExperimentError(
            "paired_rates requires equally long shock and announcement lists");
    // Every cell must make a valid SimConfig; probe with the extreme ties axis.
    for (Mechanism m : mechanisms) {
        SimConfig probe = base;
        probe.mechanism = m;
        probe.n_intergroup_ties =
            *std::max_element(n_intergroup_ties.begin(), n_intergroup_ties.end());
        ibsim::validate(probe);
    }
}

std::size_t ExperimentSpec::grid_size() const {
    std::size_t rates = pairing == PairingRule::PairedRates
                            ? shocks_per_day.size()
                            : shocks_per_day.size() * announcements_per_day.size();
    return mechanisms.size() * rates * n_intergroup_ties.size() * repetitions;
}

ExperimentSpec parse_experiment(const std::string& text) {
    ExperimentSpec spec;
    bool saw_learning_rate = false;
    for (const kv::Line& ln : kv::parse_lines(text)) {
        const std::string& key = ln.key;
        const std::string& value = ln.value;
        if (key == "name") spec.name = value;
        else if (key == "mechanism") spec.mechanisms = parse_mechanism_list(value);
        else if (key == "shocks_per_day") spec.shocks_per_day = parse_u32_list(key, value);
        else if (key == "announcements_per_day")
            spec.announcements_per_day = parse_u32_list(key, value);
        else if (key == "n_intergroup_ties")
            spec.n_intergroup_ties = parse_u32_list(key, value);
        else if (key == "pairing") spec.pairing = parse_pairing(value);
        else if (key == "repetitions") spec.repetitions = kv::parse_u32(key, value);
        else if (key == "master_seed") spec.master_seed = kv::parse_u64(key, value);
        else if (key == "seed")
            throw ExperimentError("seed: not allowed here; set master_seed");
        else if (key == "n_community") spec.base.n_community = kv::parse_u32(key, value);
        else if (key == "n_professional")
            spec.base.n_professional = kv::parse_u32(key, value);
        else if (key == "hierarchy_sizes") {
            auto parts = kv::split_commas(value);
            if (parts.size() != 3)
                throw ConfigError("hierarchy_sizes: expected strategic,tactical,operational");
            spec.base.hierarchy_sizes.strategic = kv::parse_u32(key, parts[0]);
            spec.base.hierarchy_sizes.tactical = kv::parse_u32(key, parts[1]);
            spec.base.hierarchy_sizes.operational = kv::parse_u32(key, parts[2]);
        }
        else if (key == "informal_ties_m")
            spec.base.informal_ties_m = kv::parse_u32(key, value);
        else if (key == "duration_days") spec.base.duration_days = kv::parse_u32(key, value);
        else if (key == "ticks_per_day") spec.base.ticks_per_day = kv::parse_u32(key, value);
        else if (key == "learning_rate") {
            spec.base.learning_rate = kv::parse_real(key, value);
            saw_learning_rate = true;
        }
        else if (key == "info_processing_limit")
            spec.base.info_processing_limit = kv::parse_u32(key, value);
        else if (key == "fe_novelty") spec.base.fe_novelty = parse_novelty(value);
        else if (key == "event_schedule") spec.base.event_schedule = parse_schedule(value);
        else if (key == "reward_per_item")
            spec.base.reward_per_item = kv::parse_bool(key, value);
        else throw ExperimentError("unknown key '" + key + "'");
    }
    bool wants_ln = std::any_of(spec.mechanisms.begin(), spec.mechanisms.end(),
                                [](Mechanism m) { return m == Mechanism::LN; });
    if (wants_ln && !saw_learning_rate)
        throw ExperimentError("learning_rate: required when the mechanism axis includes LN");
    spec.validate();
    return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ExperimentError("cannot open experiment file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

std::string serialize_experiment(const ExperimentSpec& spec) {
    char buf[64];
    std::ostringstream out;
    out << "name = " << spec.name << "\n";
    out << "mechanism = "
        << join<Mechanism>(spec.mechanisms,
                           +[](const Mechanism& m) { return std::string(mechanism_name(m)); })
        << "\n";
    auto u32 = +[](const std::uint32_t& v) { return std::to_string(v); };
    out << "shocks_per_day = " << join(spec.shocks_per_day, u32) << "\n";
    out << "announcements_per_day = " << join(spec.announcements_per_day, u32) << "\n";
    out << "n_intergroup_ties = " << join(spec.n_intergroup_ties, u32) << "\n";
    out << "pairing = " << pairing_name(spec.pairing) << "\n";
    out << "repetitions = " << spec.repetitions << "\n";
    out << "master_seed = " << spec.master_seed << "\n";
    out << "n_community = " << spec.base.n_community << "\n";
    out << "n_professional = " << spec.base.n_professional << "\n";
    out << "hierarchy_sizes = " << spec.base.hierarchy_sizes.strategic << ","
        << spec.base.hierarchy_sizes.tactical << ","
        << spec.base.hierarchy_sizes.operational << "\n";
    out << "informal_ties_m = " << spec.base.informal_ties_m << "\n";
    out << "duration_days = " << spec.base.duration_days << "\n";
    out << "ticks_per_day = " << spec.base.ticks_per_day << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", spec.base.learning_rate);
    out << "learning_rate = " << buf << "\n";
    out << "info_processing_limit = " << spec.base.info_processing_limit << "\n";
    out << "fe_novelty = " << novelty_name(spec.base.fe_novelty) << "\n";
    out << "event_schedule = " << schedule_name(spec.base.event_schedule) << "\n";
    out << "reward_per_item = " << (spec.base.reward_per_item ? "true" : "false") << "\n";
    return out.str();
}

std::vector<SimConfig> experiment_grid(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<SimConfig> grid;
    grid.reserve(spec.grid_size());
    auto emit = [&](Mechanism mech, std::uint32_t shocks, std::uint32_t anns,
                    std::uint32_t igts) {
        for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
            SimConfig cfg = spec.base;
            cfg.mechanism = mech;
            cfg.shocks_per_day = shocks;
            cfg.announcements_per_day = anns;
            cfg.n_intergroup_ties = igts;
            cfg.seed = derive_run_seed(spec.master_seed,
                                       static_cast<std::uint64_t>(grid.size()));
            grid.push_back(std::move(cfg));
        }
    };
    for (Mechanism mech : spec.mechanisms) {
        if (spec.pairing == PairingRule::PairedRates) {
            for (std::size_t r = 0; r < spec.shocks_per_day.size(); ++r)
                for (std::uint32_t igts : spec.n_intergroup_ties)
                    emit(mech, spec.shocks_per_day[r], spec.announcements_per_day[r], igts);
        } else {
            for (std::uint32_t shocks : spec.shocks_per_day)
                for (std::uint32_t anns : spec.announcements_per_day)
                    for (std::uint32_t igts : spec.n_intergroup_ties)
                        emit(mech, shocks, anns, igts);
        }
    }
    return grid;
}

std::vector<RunOutcome> run_batch(const std::vector<SimConfig>& grid,
                                  unsigned parallelism, const RunHook& hook) {
    std::vector<RunOutcome> outcomes(grid.size());
    if (grid.empty()) return outcomes;
    if (parallelism == 0) parallelism = std::thread::hardware_concurrency();
    if (parallelism == 0) parallelism = 1;
    parallelism = std::min<unsigned>(parallelism,
                                     static_cast<unsigned>(grid.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                outcomes[i].result = run(grid[i]);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
                outcomes[i].result.config = grid[i];
                outcomes[i].result.seed = grid[i].seed;
            }
            if (hook) hook(i, outcomes[i]);
        }
    };
    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(parallelism);
        for (unsigned t = 0; t < parallelism; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return outcomes;
}

SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw ExperimentError("summarize: empty value list");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    auto rank = [n](double p) {
        std::size_t r = static_cast<std::size_t>(
            std::ceil(p / 100.0 * static_cast<double>(n)));
        if (r < 1) r = 1;
        if (r > n) r = n;
        return r - 1;
    };
    SummaryStats s;
    s.n = n;
    double sum = 0.0;
    for (double v : sorted) sum += v;
    s.mean = sum / static_cast<double>(n);
    s.median = sorted[rank(50.0)];
    s.p5 = sorted[rank(5.0)];
    s.p25 = sorted[rank(25.0)];
    s.p75 = sorted[rank(75.0)];
    s.p95 = sorted[rank(95.0)];
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    return s;
}

}  // namespace ibsim

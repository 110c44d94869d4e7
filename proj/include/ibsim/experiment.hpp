// Experiment grids: axis lists over mechanism / event rates / inter-group
// ties, expanded to seeded SimConfigs and executed as parallel batches.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibsim/config.hpp"
#include "ibsim/engine.hpp"

namespace ibsim {

struct ExperimentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FullFactorial crosses every axis; PairedRates zips the (equal-length)
// shock and announcement lists so both rates move together.
enum class PairingRule : std::uint8_t { FullFactorial, PairedRates };

struct ExperimentSpec {
    std::string name;
    std::vector<Mechanism> mechanisms;
    std::vector<std::uint32_t> shocks_per_day;
    std::vector<std::uint32_t> announcements_per_day;
    std::vector<std::uint32_t> n_intergroup_ties;
    PairingRule pairing = PairingRule::FullFactorial;
    std::uint32_t repetitions = 1;
    std::uint64_t master_seed = 0;
    SimConfig base;  // fixed params: populations, duration, learning rate, limit

    void validate() const;
    std::size_t grid_size() const;
};

// Same key=value format as SimConfig; the axis keys (mechanism,
// shocks_per_day, announcements_per_day, n_intergroup_ties) accept comma
// lists, plus name / pairing / repetitions / master_seed. `seed` is
// rejected: per-run seeds derive from master_seed.
ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);
std::string serialize_experiment(const ExperimentSpec& spec);

// Expansion order: mechanism > shock rate (> announcement rate when
// factorial) > ties > repetition; seeds via derive_run_seed(master, index).
std::vector<SimConfig> experiment_grid(const ExperimentSpec& spec);

struct RunOutcome {
    RunResult result;  // config/seed kept even on failure
    std::string error;  // empty on success
    bool ok() const { return error.empty(); }
};

// Called once per completed run, possibly from several threads at once but
// never twice for the same index; may persist and strip heavy fields
// (ledger, catalog, perf_series) to bound batch memory.
using RunHook = std::function<void(std::size_t index, RunOutcome& outcome)>;

// Executes every config; outcome order equals grid order regardless of
// completion order. parallelism 0 means hardware concurrency.
std::vector<RunOutcome> run_batch(const std::vector<SimConfig>& grid,
                                  unsigned parallelism,
                                  const RunHook& hook = nullptr);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double p5 = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double p95 = 0.0;
    double sd = 0.0;
};

// Nearest-rank percentiles; sd is the sample standard deviation.
SummaryStats summarize(const std::vector<double>& values);

}  // namespace ibsim

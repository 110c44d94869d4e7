// Emergence measurement: FE distributions over IBS candidates, nearest-rank
// percentile thresholds, emergent-IBS identification, and threshold sweeps.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ibsim/network.hpp"
#include "ibsim/types.hpp"

namespace ibsim {

struct RunResult;  // engine.hpp

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FE counts for every IBS candidate of one run, zeros included.
struct FeDistribution {
    std::vector<AgentId> candidates;      // ascending
    std::vector<std::uint32_t> fe_counts; // parallel
};

// Strict counts FE > threshold (top candidate always capturable);
// Inclusive counts FE >= threshold. Sweeps default to Inclusive so a
// bottom-percentile threshold captures the whole candidate pool.
enum class EmergenceRule : std::uint8_t { Strict, Inclusive };

// Per-run thresholds use each run's own candidate FE distribution; Pooled
// derives one threshold per percentile from all runs' counts combined.
enum class ThresholdScope : std::uint8_t { PerRun, Pooled };

struct ThresholdReport {
    std::size_t run_id = 0;
    double percentile = 0.0;
    std::uint32_t threshold = 0;
    std::uint32_t n_emergent = 0;
    std::vector<AgentId> emergent;  // ascending agent ids
    double pct_found_mean = 0.0;    // NaN when the run had no external need
    double pct_found_communities = 0.0;
    double pct_found_professionals = 0.0;
};

struct SweepOptions {
    EmergenceRule rule = EmergenceRule::Inclusive;
    ThresholdScope scope = ThresholdScope::PerRun;
};

// Agents incident to at least one inter-group edge, ascending.
std::vector<AgentId> candidate_set(const Network& net);

FeDistribution fe_distribution(const RunResult& result);

// Nearest-rank percentile: sorted ascending, element at index
// ceil(p/100 * n) (1-based); p = 0 yields the minimum.
std::uint32_t percentile_threshold(const FeDistribution& dist, double p);

std::vector<AgentId> emergent_ibss(const FeDistribution& dist,
                                   std::int64_t threshold,
                                   EmergenceRule rule = EmergenceRule::Strict);

// One report row per run x percentile, in that nesting order.
std::vector<ThresholdReport> threshold_sweep(const std::vector<RunResult>& results,
                                             const std::vector<double>& percentiles,
                                             const SweepOptions& opts = {});

}  // namespace ibsim

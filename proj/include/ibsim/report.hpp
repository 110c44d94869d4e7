// CSV emission for batches (runs.csv, summary.csv), threshold-sweep export,
// and the tidy long-format data behind each figure.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibsim/analysis.hpp"
#include "ibsim/experiment.hpp"

namespace ibsim {

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One row per run: run_id, seed, mechanism, shocks_per_day,
// announcements_per_day, n_igts, n_candidates, pct_found_professionals,
// pct_found_communities, pct_found_mean, then threshold_pXX, n_ibs_pXX per
// requested percentile. Failed runs keep their cell columns and leave the
// metrics empty.
std::string runs_csv(const std::vector<RunOutcome>& outcomes,
                     const std::vector<double>& percentiles,
                     const SweepOptions& opts = {});

// One row per parameter cell x percentile with nearest-rank distribution
// stats of n_ibs and pct_found_mean over the cell's successful runs.
std::string summary_csv(const std::vector<RunOutcome>& outcomes,
                        const std::vector<double>& percentiles,
                        const SweepOptions& opts = {});

// Threshold-sweep export for the analyze subcommand.
std::string sweep_csv(const std::vector<ThresholdReport>& reports);
std::string sweep_json(const std::vector<ThresholdReport>& reports);

// Parsed runs.csv row; percentiles recovered from the header.
struct RunsRow {
    std::size_t run_id = 0;
    std::uint64_t seed = 0;
    Mechanism mechanism = Mechanism::RC;
    std::uint32_t shocks_per_day = 0;
    std::uint32_t announcements_per_day = 0;
    std::uint32_t n_igts = 0;
    std::uint32_t n_candidates = 0;
    std::optional<double> pct_found_professionals;
    std::optional<double> pct_found_communities;
    std::optional<double> pct_found_mean;
    std::vector<double> percentiles;
    std::vector<std::uint32_t> thresholds;  // parallel to percentiles
    std::vector<std::uint32_t> n_ibs;       // parallel to percentiles
    bool failed = false;                    // metrics were empty
};

std::vector<RunsRow> read_runs_csv(const std::string& path);

// Data behind each figure, tidy long format.
// fig3: integer FE histogram over one run's candidates, bins 0..max.
std::string fig3_csv(const RunResult& result);
// fig4 (and the appendix variant): per run x percentile scatter of
// n_ibs against pct_found, keyed by IGT count and mechanism.
std::string fig4_csv(const std::vector<RunsRow>& rows);
// fig5: n_ibs / pct_found distribution stats per mechanism x percentile.
std::string fig5_csv(const std::vector<RunsRow>& rows);
// fig6: the same stats per mechanism x rate cell x percentile.
std::string fig6_csv(const std::vector<RunsRow>& rows);
// fig7 / fig8: turbulence x IGT x mechanism curves (n_ibs and pct_found).
std::string fig7_csv(const std::vector<RunsRow>& rows);
std::string fig8_csv(const std::vector<RunsRow>& rows);

}  // namespace ibsim

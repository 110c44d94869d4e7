#include "ibsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibsim/engine.hpp"

namespace ibsim {

std::vector<AgentId> candidate_set(const Network& net) {
    std::vector<bool> seen(net.size(), false);
    for (const Edge& e : net.edges) {
        if (e.label != EdgeLabel::InterGroup) continue;
        seen[e.a] = true;
        seen[e.b] = true;
    }
    std::vector<AgentId> out;
    for (AgentId id = 0; id < seen.size(); ++id)
        if (seen[id]) out.push_back(id);
    return out;
}

FeDistribution fe_distribution(const RunResult& result) {
    return FeDistribution{result.candidates, result.candidate_fe};
}

std::uint32_t percentile_threshold(const FeDistribution& dist, double p) {
    if (dist.fe_counts.empty())
        throw AnalysisError("percentile threshold over an empty distribution");
    if (p < 0.0 || p > 100.0)
        throw AnalysisError("percentile must lie in [0, 100]");
    std::vector<std::uint32_t> sorted = dist.fe_counts;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // ceil(p/100 * n), snapping products that are integers in exact arithmetic
    // (e.g. p = 14, n = 50) so binary rounding cannot push the rank up by one.
    const double x = p * static_cast<double>(n) / 100.0;
    const double nearest = std::round(x);
    std::size_t rank = std::abs(x - nearest) < 1e-9
                           ? static_cast<std::size_t>(nearest)
                           : static_cast<std::size_t>(std::ceil(x));
    if (rank < 1) rank = 1;   // p = 0 -> minimum
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

std::vector<AgentId> emergent_ibss(const FeDistribution& dist,
                                   std::int64_t threshold, EmergenceRule rule) {
    std::vector<AgentId> out;
    for (std::size_t i = 0; i < dist.candidates.size(); ++i) {
        const std::int64_t fe = dist.fe_counts[i];
        const bool in = rule == EmergenceRule::Strict ? fe > threshold
                                                      : fe >= threshold;
        if (in) out.push_back(dist.candidates[i]);
    }
    return out;
}

std::vector<ThresholdReport> threshold_sweep(const std::vector<RunResult>& results,
                                             const std::vector<double>& percentiles,
                                             const SweepOptions& opts) {
    // Pooled scope shares one distribution across runs for thresholding only.
    FeDistribution pooled;
    if (opts.scope == ThresholdScope::Pooled) {
        for (const RunResult& r : results) {
            pooled.candidates.insert(pooled.candidates.end(), r.candidates.begin(),
                                     r.candidates.end());
            pooled.fe_counts.insert(pooled.fe_counts.end(), r.candidate_fe.begin(),
                                    r.candidate_fe.end());
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<ThresholdReport> reports;
    reports.reserve(results.size() * percentiles.size());
    for (std::size_t run_id = 0; run_id < results.size(); ++run_id) {
        const RunResult& r = results[run_id];
        FeDistribution dist = fe_distribution(r);
        for (double p : percentiles) {
            ThresholdReport rep;
            rep.run_id = run_id;
            rep.percentile = p;
            rep.threshold = percentile_threshold(
                opts.scope == ThresholdScope::Pooled ? pooled : dist, p);
            rep.emergent = emergent_ibss(dist, rep.threshold, opts.rule);
            rep.n_emergent = static_cast<std::uint32_t>(rep.emergent.size());
            rep.pct_found_mean = r.pct_found_mean().value_or(nan);
            rep.pct_found_communities = r.pct_found_communities.value_or(nan);
            rep.pct_found_professionals = r.pct_found_professionals.value_or(nan);
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

}  // namespace ibsim

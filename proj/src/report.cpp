#include "ibsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ibsim {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string plabel(double p) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

std::string opt_cell(const std::optional<double>& v) {
    if (!v || std::isnan(*v)) return "";
    return fmt_g(*v);
}

std::string nan_cell(double v) { return std::isnan(v) ? "" : fmt_g(v); }

// Stats over a possibly-empty value list: empty cells when nothing to summarize.
std::string stats_cells(const std::vector<double>& values) {
    if (values.empty()) return ",,,,,,";
    SummaryStats s = summarize(values);
    std::string out;
    out += fmt_g(s.mean);
    out += ",";
    out += fmt_g(s.median);
    out += ",";
    out += fmt_g(s.p5);
    out += ",";
    out += fmt_g(s.p25);
    out += ",";
    out += fmt_g(s.p75);
    out += ",";
    out += fmt_g(s.p95);
    out += ",";
    out += fmt_g(s.sd);
    return out;
}

std::string stats_header(const char* prefix) {
    std::string hdr;
    for (const char* col : {"mean", "median", "p5", "p25", "p75", "p95", "sd"}) {
        hdr += ",";
        hdr += prefix;
        hdr += "_";
        hdr += col;
    }
    return hdr;
}

struct CellKey {
    Mechanism mechanism;
    std::uint32_t shocks;
    std::uint32_t announcements;
    std::uint32_t igts;
    bool operator<(const CellKey& o) const {
        return std::tie(mechanism, shocks, announcements, igts) <
               std::tie(o.mechanism, o.shocks, o.announcements, o.igts);
    }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string runs_csv(const std::vector<RunOutcome>& outcomes,
                     const std::vector<double>& percentiles,
                     const SweepOptions& opts) {
    std::vector<RunResult> successes;
    std::vector<std::size_t> success_index(outcomes.size(), SIZE_MAX);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].ok()) continue;
        success_index[i] = successes.size();
        successes.push_back(outcomes[i].result);
    }
    std::vector<ThresholdReport> reports =
        threshold_sweep(successes, percentiles, opts);

    std::ostringstream out;
    out << "run_id,seed,mechanism,shocks_per_day,announcements_per_day,n_igts,"
           "n_candidates,pct_found_professionals,pct_found_communities,"
           "pct_found_mean";
    for (double p : percentiles)
        out << ",threshold_p" << plabel(p) << ",n_ibs_p" << plabel(p);
    out << "\n";

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const RunResult& r = outcomes[i].result;
        const SimConfig& cfg = r.config;
        out << i << "," << r.seed << "," << mechanism_name(cfg.mechanism) << ","
            << cfg.shocks_per_day << "," << cfg.announcements_per_day << ","
            << cfg.n_intergroup_ties;
        if (outcomes[i].ok()) {
            out << "," << r.candidates.size() << ","
                << opt_cell(r.pct_found_professionals) << ","
                << opt_cell(r.pct_found_communities) << ","
                << opt_cell(r.pct_found_mean());
            const std::size_t base = success_index[i] * percentiles.size();
            for (std::size_t k = 0; k < percentiles.size(); ++k) {
                const ThresholdReport& rep = reports[base + k];
                out << "," << rep.threshold << "," << rep.n_emergent;
            }
        } else {
            out << ",,,,";
            for (std::size_t k = 0; k < percentiles.size(); ++k) out << ",,";
        }
        out << "\n";
    }
    return out.str();
}

std::string summary_csv(const std::vector<RunOutcome>& outcomes,
                        const std::vector<double>& percentiles,
                        const SweepOptions& opts) {
    std::vector<RunResult> successes;
    std::vector<CellKey> order;
    std::map<CellKey, std::vector<std::size_t>> cells;  // -> success indices
    for (const RunOutcome& o : outcomes) {
        if (!o.ok()) continue;
        const SimConfig& cfg = o.result.config;
        CellKey key{cfg.mechanism, cfg.shocks_per_day, cfg.announcements_per_day,
                    cfg.n_intergroup_ties};
        auto it = cells.find(key);
        if (it == cells.end()) {
            order.push_back(key);
            it = cells.emplace(key, std::vector<std::size_t>{}).first;
        }
        it->second.push_back(successes.size());
        successes.push_back(o.result);
    }
    std::vector<ThresholdReport> reports =
        threshold_sweep(successes, percentiles, opts);

    std::ostringstream out;
    out << "mechanism,shocks_per_day,announcements_per_day,n_igts,percentile,"
           "n_runs,threshold_mean";
    out << stats_header("n_ibs");
    out << stats_header("pct_found");
    out << "\n";

    for (const CellKey& key : order) {
        const std::vector<std::size_t>& members = cells[key];
        for (std::size_t k = 0; k < percentiles.size(); ++k) {
            std::vector<double> n_ibs, pct_found, thresholds;
            for (std::size_t run : members) {
                const ThresholdReport& rep = reports[run * percentiles.size() + k];
                n_ibs.push_back(rep.n_emergent);
                thresholds.push_back(rep.threshold);
                if (!std::isnan(rep.pct_found_mean))
                    pct_found.push_back(rep.pct_found_mean);
            }
            out << mechanism_name(key.mechanism) << "," << key.shocks << ","
                << key.announcements << "," << key.igts << ","
                << plabel(percentiles[k]) << "," << members.size() << ","
                << (thresholds.empty() ? "" : fmt_g(summarize(thresholds).mean)) << ","
                << stats_cells(n_ibs) << "," << stats_cells(pct_found) << "\n";
        }
    }
    return out.str();
}

std::string sweep_csv(const std::vector<ThresholdReport>& reports) {
    std::ostringstream out;
    out << "run_id,percentile,threshold,n_emergent,emergent_ids,pct_found_mean,"
           "pct_found_communities,pct_found_professionals\n";
    for (const ThresholdReport& rep : reports) {
        std::string ids;
        for (std::size_t i = 0; i < rep.emergent.size(); ++i) {
            if (i) ids += ";";
            ids += std::to_string(rep.emergent[i]);
        }
        out << rep.run_id << "," << plabel(rep.percentile) << "," << rep.threshold
            << "," << rep.n_emergent << "," << ids << ","
            << nan_cell(rep.pct_found_mean) << ","
            << nan_cell(rep.pct_found_communities) << ","
            << nan_cell(rep.pct_found_professionals) << "\n";
    }
    return out.str();
}

std::string sweep_json(const std::vector<ThresholdReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ThresholdReport& rep : reports) {
        nlohmann::ordered_json j;
        j["run_id"] = rep.run_id;
        j["percentile"] = rep.percentile;
        j["threshold"] = rep.threshold;
        j["n_emergent"] = rep.n_emergent;
        j["emergent_ids"] = rep.emergent;
        j["pct_found_mean"] =
            std::isnan(rep.pct_found_mean) ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(rep.pct_found_mean);
        j["pct_found_communities"] =
            std::isnan(rep.pct_found_communities)
                ? nlohmann::ordered_json(nullptr)
                : nlohmann::ordered_json(rep.pct_found_communities);
        j["pct_found_professionals"] =
            std::isnan(rep.pct_found_professionals)
                ? nlohmann::ordered_json(nullptr)
                : nlohmann::ordered_json(rep.pct_found_professionals);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<RunsRow> read_runs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ReportError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ReportError(path + ": empty file");

    const std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> fixed = {
        "run_id",      "seed",
        "mechanism",   "shocks_per_day",
        "announcements_per_day", "n_igts",
        "n_candidates", "pct_found_professionals",
        "pct_found_communities", "pct_found_mean"};
    if (header.size() < fixed.size())
        throw ReportError(path + ": truncated header");
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (header[i] != fixed[i])
            throw ReportError(path + ": unexpected column '" + header[i] + "'");

    std::vector<double> percentiles;
    for (std::size_t i = fixed.size(); i < header.size(); i += 2) {
        const std::string& t = header[i];
        if (t.rfind("threshold_p", 0) != 0 || i + 1 >= header.size() ||
            header[i + 1].rfind("n_ibs_p", 0) != 0)
            throw ReportError(path + ": unexpected column '" + t + "'");
        percentiles.push_back(std::stod(t.substr(11)));
    }

    std::vector<RunsRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ReportError(path + ": ragged row at line " + std::to_string(lineno));
        RunsRow row;
        row.run_id = std::stoull(cells[0]);
        row.seed = std::stoull(cells[1]);
        row.mechanism = parse_mechanism(cells[2]);
        row.shocks_per_day = static_cast<std::uint32_t>(std::stoul(cells[3]));
        row.announcements_per_day = static_cast<std::uint32_t>(std::stoul(cells[4]));
        row.n_igts = static_cast<std::uint32_t>(std::stoul(cells[5]));
        row.failed = cells[6].empty();
        row.percentiles = percentiles;
        if (!row.failed) {
            row.n_candidates = static_cast<std::uint32_t>(std::stoul(cells[6]));
            if (!cells[7].empty()) row.pct_found_professionals = std::stod(cells[7]);
            if (!cells[8].empty()) row.pct_found_communities = std::stod(cells[8]);
            if (!cells[9].empty()) row.pct_found_mean = std::stod(cells[9]);
            for (std::size_t k = 0; k < percentiles.size(); ++k) {
                row.thresholds.push_back(
                    static_cast<std::uint32_t>(std::stoul(cells[10 + 2 * k])));
                row.n_ibs.push_back(
                    static_cast<std::uint32_t>(std::stoul(cells[11 + 2 * k])));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string fig3_csv(const RunResult& result) {
    std::uint32_t max_fe = 0;
    for (std::uint32_t fe : result.candidate_fe) max_fe = std::max(max_fe, fe);
    std::vector<std::uint32_t> bins(max_fe + 1, 0);
    for (std::uint32_t fe : result.candidate_fe) ++bins[fe];
    std::ostringstream out;
    out << "fe,n_candidates\n";
    for (std::uint32_t fe = 0; fe <= max_fe; ++fe)
        out << fe << "," << bins[fe] << "\n";
    return out.str();
}

std::string fig4_csv(const std::vector<RunsRow>& rows) {
    std::ostringstream out;
    out << "percentile,n_igts,mechanism,run_id,n_ibs,pct_found_mean\n";
    for (const RunsRow& row : rows) {
        if (row.failed) continue;
        for (std::size_t k = 0; k < row.percentiles.size(); ++k)
            out << plabel(row.percentiles[k]) << "," << row.n_igts << ","
                << mechanism_name(row.mechanism) << "," << row.run_id << ","
                << row.n_ibs[k] << "," << opt_cell(row.pct_found_mean) << "\n";
    }
    return out.str();
}

namespace {

// Shared group-by emitter for figs 5-8. key_cols(row) yields the cell key
// columns; one output row per cell (x percentile when per_percentile).
std::string grouped_stats_csv(const std::vector<RunsRow>& rows,
                              const std::string& key_header,
                              std::string (*key_cols)(const RunsRow&),
                              bool per_percentile, bool with_n_ibs) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const RunsRow*>> groups;
    for (const RunsRow& row : rows) {
        if (row.failed) continue;
        std::string key = key_cols(row);
        auto it = groups.find(key);
        if (it == groups.end()) {
            order.push_back(key);
            it = groups.emplace(key, std::vector<const RunsRow*>{}).first;
        }
        it->second.push_back(&row);
    }

    std::ostringstream out;
    out << key_header;
    if (per_percentile) out << ",percentile";
    out << ",n_runs";
    if (with_n_ibs) out << stats_header("n_ibs");
    out << stats_header("pct_found") << "\n";

    for (const std::string& key : order) {
        const auto& members = groups[key];
        const std::size_t n_pct =
            per_percentile && !members.empty() ? members[0]->percentiles.size() : 1;
        for (std::size_t k = 0; k < n_pct; ++k) {
            std::vector<double> n_ibs, pct_found;
            for (const RunsRow* row : members) {
                if (per_percentile && k < row->n_ibs.size())
                    n_ibs.push_back(row->n_ibs[k]);
                if (row->pct_found_mean) pct_found.push_back(*row->pct_found_mean);
            }
            out << key;
            if (per_percentile) out << "," << plabel(members[0]->percentiles[k]);
            out << "," << members.size();
            if (with_n_ibs) out << "," << stats_cells(n_ibs);
            out << "," << stats_cells(pct_found) << "\n";
        }
    }
    return out.str();
}

}  // namespace

std::string fig5_csv(const std::vector<RunsRow>& rows) {
    return grouped_stats_csv(
        rows, "mechanism",
        +[](const RunsRow& r) { return std::string(mechanism_name(r.mechanism)); },
        /*per_percentile=*/true, /*with_n_ibs=*/true);
}

std::string fig6_csv(const std::vector<RunsRow>& rows) {
    return grouped_stats_csv(
        rows, "mechanism,shocks_per_day,announcements_per_day",
        +[](const RunsRow& r) {
            return std::string(mechanism_name(r.mechanism)) + "," +
                   std::to_string(r.shocks_per_day) + "," +
                   std::to_string(r.announcements_per_day);
        },
        /*per_percentile=*/true, /*with_n_ibs=*/true);
}

std::string fig7_csv(const std::vector<RunsRow>& rows) {
    return grouped_stats_csv(
        rows, "turbulence,n_igts,mechanism",
        +[](const RunsRow& r) {
            return std::to_string(r.shocks_per_day + r.announcements_per_day) + "," +
                   std::to_string(r.n_igts) + "," +
                   std::string(mechanism_name(r.mechanism));
        },
        /*per_percentile=*/true, /*with_n_ibs=*/true);
}

std::string fig8_csv(const std::vector<RunsRow>& rows) {
    return grouped_stats_csv(
        rows, "turbulence,n_igts,mechanism",
        +[](const RunsRow& r) {
            return std::to_string(r.shocks_per_day + r.announcements_per_day) + "," +
                   std::to_string(r.n_igts) + "," +
                   std::string(mechanism_name(r.mechanism));
        },
        /*per_percentile=*/false, /*with_n_ibs=*/false);
}

}  // namespace ibsim

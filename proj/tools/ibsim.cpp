// ibsim: deterministic two-group information-exchange simulator.
// Subcommands: generate-network, run, experiment, analyze, report.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ibsim/analysis.hpp"
#include "ibsim/config.hpp"
#include "ibsim/engine.hpp"
#include "ibsim/events.hpp"
#include "ibsim/experiment.hpp"
#include "ibsim/network.hpp"
#include "ibsim/report.hpp"
#include "ibsim/serialize.hpp"

namespace fs = std::filesystem;
using namespace ibsim;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_thresholds(const std::string& csv) {
    std::vector<double> out;
    std::string cur;
    std::stringstream ss(csv);
    while (std::getline(ss, cur, ',')) {
        try {
            std::size_t pos = 0;
            double p = std::stod(cur, &pos);
            if (pos != cur.size()) throw std::invalid_argument("trailing");
            if (p < 0.0 || p > 100.0) throw std::out_of_range("range");
            out.push_back(p);
        } catch (const std::exception&) {
            throw UsageError("--thresholds: expected percentiles in [0,100], got '" +
                             cur + "'");
        }
    }
    if (out.empty()) throw UsageError("--thresholds: empty list");
    return out;
}

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("IBSIM_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw UsageError(std::string("IBSIM_THREADS: not a number: ") + env);
        }
    }
    return 0;  // hardware concurrency
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string pct_or_dash(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", *v);
    return buf;
}

int cmd_generate_network(const std::string& config_path,
                         std::optional<std::uint64_t> seed,
                         const std::string& out_dir) {
    SimConfig cfg = load_config_file(config_path);
    if (seed) cfg.seed = *seed;
    validate(cfg);
    Rng rng(cfg.seed);
    Network net = assemble_network(cfg, rng);

    fs::create_directories(out_dir);
    fs::path path = fs::path(out_dir) / "network.txt";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_network(out, net);
    std::cout << "seed=" << cfg.seed << " agents=" << net.size()
              << " edges=" << net.edges.size()
              << " announcement_source=" << net.announcement_source << " -> "
              << path.string() << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, bool want_ledger, bool want_timeline,
            bool want_q_trace) {
    SimConfig cfg = load_config_file(config_path);
    if (seed) cfg.seed = *seed;

    std::vector<QTraceRow> q_trace;
    RunResult result = run(cfg, want_q_trace ? &q_trace : nullptr);

    fs::create_directories(out_dir);
    write_result_json((fs::path(out_dir) / "result.json").string(), result);
    if (want_ledger)
        write_ledger_jsonl((fs::path(out_dir) / "ledger.jsonl").string(),
                           result.ledger);
    if (want_timeline) {
        fs::path path = fs::path(out_dir) / "timeline.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_timeline_csv(out, result.catalog);
    }
    if (want_q_trace) {
        std::ostringstream csv;
        csv << "tick,agent,contact,q\n";
        char buf[40];
        for (const QTraceRow& row : q_trace) {
            std::snprintf(buf, sizeof(buf), "%.17g", row.q);
            csv << row.tick << "," << row.agent << "," << row.contact << ","
                << buf << "\n";
        }
        write_text_file(fs::path(out_dir) / "q_trace.csv", csv.str());
    }

    std::cout << "seed=" << result.seed << " candidates=" << result.candidates.size()
              << " pct_found_communities=" << pct_or_dash(result.pct_found_communities)
              << " pct_found_professionals="
              << pct_or_dash(result.pct_found_professionals) << "\n";
    return 0;
}

int cmd_experiment(const std::string& spec_path, std::optional<std::uint64_t> seed,
                   std::optional<std::uint32_t> reps,
                   std::optional<unsigned> threads, const std::string& out_dir,
                   const std::string& thresholds, bool want_ledgers) {
    ExperimentSpec spec = load_experiment(spec_path);
    if (seed) spec.master_seed = *seed;
    if (reps) spec.repetitions = *reps;
    spec.validate();
    const std::vector<double> percentiles = parse_thresholds(thresholds);
    const std::vector<SimConfig> grid = experiment_grid(spec);

    fs::create_directories(out_dir);
    if (want_ledgers) fs::create_directories(fs::path(out_dir) / "ledgers");

    RunHook hook = [&](std::size_t index, RunOutcome& outcome) {
        if (want_ledgers && outcome.ok()) {
            char name[32];
            std::snprintf(name, sizeof(name), "run_%05zu.jsonl", index);
            write_ledger_jsonl((fs::path(out_dir) / "ledgers" / name).string(),
                               outcome.result.ledger);
        }
        // Heavy per-run data is not needed for the batch CSVs.
        outcome.result.ledger.clear();
        outcome.result.ledger.shrink_to_fit();
        outcome.result.catalog.clear();
        outcome.result.catalog.shrink_to_fit();
        outcome.result.perf_series.clear();
        outcome.result.perf_series.shrink_to_fit();
    };

    std::vector<RunOutcome> outcomes =
        run_batch(grid, resolve_threads(threads), hook);

    write_text_file(fs::path(out_dir) / "runs.csv", runs_csv(outcomes, percentiles));
    write_text_file(fs::path(out_dir) / "summary.csv",
                    summary_csv(outcomes, percentiles));

    std::size_t failed = 0;
    for (const RunOutcome& o : outcomes) {
        if (o.ok()) continue;
        ++failed;
        std::cerr << "run " << (&o - outcomes.data()) << " failed: " << o.error
                  << "\n";
    }
    std::cout << "experiment=" << spec.name << " runs=" << outcomes.size()
              << " failed=" << failed << " -> " << out_dir << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& thresholds,
                const std::string& format, const std::string& out_dir, bool pooled,
                bool strict) {
    const std::vector<double> percentiles = parse_thresholds(thresholds);
    std::vector<RunResult> results;
    for (const std::string& input : inputs) {
        fs::path path(input);
        if (fs::is_directory(path)) path /= "result.json";
        if (!fs::exists(path))
            throw UsageError("no such result file: " + path.string());
        results.push_back(read_result_json(path.string()));
    }

    SweepOptions opts;
    opts.scope = pooled ? ThresholdScope::Pooled : ThresholdScope::PerRun;
    opts.rule = strict ? EmergenceRule::Strict : EmergenceRule::Inclusive;
    const std::vector<ThresholdReport> reports =
        threshold_sweep(results, percentiles, opts);

    const std::string text =
        format == "json" ? sweep_json(reports) : sweep_csv(reports);
    if (out_dir.empty()) {
        std::cout << text;
    } else {
        fs::create_directories(out_dir);
        fs::path path = fs::path(out_dir) /
                        (format == "json" ? "thresholds.json" : "thresholds.csv");
        write_text_file(path, text);
        std::cout << "runs=" << results.size() << " -> " << path.string() << "\n";
    }
    return 0;
}

int cmd_report(const std::string& results_dir, const std::string& figure,
               const std::string& out_dir) {
    const fs::path dir(results_dir);
    std::string csv;
    if (figure == "fig3") {
        fs::path input = dir / "result.json";
        if (!fs::exists(input))
            throw UsageError("fig3 needs " + input.string());
        csv = fig3_csv(read_result_json(input.string()));
    } else {
        fs::path input = dir / "runs.csv";
        if (!fs::exists(input))
            throw UsageError(figure + " needs " + input.string());
        const std::vector<RunsRow> rows = read_runs_csv(input.string());
        if (figure == "fig4" || figure == "figB") csv = fig4_csv(rows);
        else if (figure == "fig5") csv = fig5_csv(rows);
        else if (figure == "fig6") csv = fig6_csv(rows);
        else if (figure == "fig7") csv = fig7_csv(rows);
        else if (figure == "fig8") csv = fig8_csv(rows);
        else
            throw UsageError("unknown figure id '" + figure +
                             "' (expected fig3, fig4, figB, fig5, fig6, fig7, fig8)");
    }
    const fs::path out_base = out_dir.empty() ? dir : fs::path(out_dir);
    fs::create_directories(out_base);
    fs::path path = out_base / (figure + ".csv");
    write_text_file(path, csv);
    std::cout << figure << " -> " << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic agent-based simulator of inter-group information "
                 "exchange with Q-learning collection and boundary-spanner "
                 "emergence analysis"};
    app.require_subcommand(1);

    std::string config_path, spec_path, out_dir = ".", analyze_out_dir,
                report_out_dir;
    std::string thresholds = "30,40,50,60,70,80";
    std::string format = "csv";
    std::string results_dir, figure;
    std::vector<std::string> analyze_inputs;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> reps;
    std::optional<unsigned> threads;
    bool want_ledger = false, want_timeline = false, want_q_trace = false;
    bool pooled = false, strict = false;

    CLI::App* gen = app.add_subcommand("generate-network",
                                       "Build a network and write network.txt");
    gen->add_option("--config", config_path, "simulation config file")->required();
    gen->add_option("--seed", seed, "override the config seed");
    gen->add_option("--out-dir", out_dir, "output directory (default .)");

    CLI::App* run_cmd = app.add_subcommand("run", "Execute one simulation run");
    run_cmd->add_option("--config", config_path, "simulation config file")->required();
    run_cmd->add_option("--seed", seed, "override the config seed");
    run_cmd->add_option("--out-dir", out_dir, "output directory (default .)");
    run_cmd->add_flag("--ledger", want_ledger, "also write ledger.jsonl");
    run_cmd->add_flag("--timeline", want_timeline, "also write timeline.csv");
    run_cmd->add_flag("--q-trace", want_q_trace, "also write q_trace.csv (LN only)");

    CLI::App* exp = app.add_subcommand("experiment", "Run an experiment grid");
    exp->add_option("--config", spec_path, "experiment spec file")->required();
    exp->add_option("--seed", seed, "override the master seed");
    exp->add_option("--reps", reps, "override repetitions");
    exp->add_option("--threads", threads,
                    "worker threads (default: IBSIM_THREADS or all cores)");
    exp->add_option("--out-dir", out_dir, "output directory (default .)");
    exp->add_option("--thresholds", thresholds,
                    "comma list of percentile thresholds (default 30,40,50,60,70,80)");
    exp->add_flag("--ledger", want_ledger, "write per-run ledgers under ledgers/");

    CLI::App* ana = app.add_subcommand("analyze",
                                       "Threshold sweep over stored run results");
    ana->add_option("results", analyze_inputs,
                    "result.json files or run directories")
        ->required();
    ana->add_option("--thresholds", thresholds,
                    "comma list of percentile thresholds (default 30,40,50,60,70,80)");
    ana->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    ana->add_option("--out-dir", analyze_out_dir,
                    "write thresholds.<format> here instead of stdout");
    ana->add_flag("--pooled", pooled, "pool FE counts across runs for thresholds");
    ana->add_flag("--strict", strict, "emergent means FE > threshold (default >=)");

    CLI::App* rep = app.add_subcommand("report", "Emit plot-ready figure data");
    rep->add_option("results-dir", results_dir, "directory with runs.csv/result.json")
        ->required();
    rep->add_option("figure", figure, "fig3|fig4|figB|fig5|fig6|fig7|fig8")
        ->required();
    rep->add_option("--out-dir", report_out_dir,
                    "write the figure CSV here (default: results dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate_network(config_path, seed, out_dir);
        if (run_cmd->parsed())
            return cmd_run(config_path, seed, out_dir, want_ledger, want_timeline,
                           want_q_trace);
        if (exp->parsed())
            return cmd_experiment(spec_path, seed, reps, threads, out_dir,
                                  thresholds, want_ledger);
        if (ana->parsed())
            return cmd_analyze(analyze_inputs, thresholds, format, analyze_out_dir,
                               pooled, strict);
        if (rep->parsed())
            return cmd_report(results_dir, figure, report_out_dir);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ExperimentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

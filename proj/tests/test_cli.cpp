#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kBin = IBSIM_BIN_PATH;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_root() {
    return fs::temp_directory_path() / "ibsim_cli_test";
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const fs::path dir = scratch_root();
    fs::create_directories(dir);
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string("\"") + kBin + "\" " + args + " > \"" + out.string() +
           "\" 2> \"" + err.string() + "\"";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_config(const std::string& name, const std::string& extra = "") {
    const fs::path dir = scratch_root();
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << "n_community = 8\n"
           "n_professional = 8\n"
           "hierarchy_sizes = 1,3,4\n"
           "informal_ties_m = 1\n"
           "n_intergroup_ties = 3\n"
           "shocks_per_day = 3\n"
           "announcements_per_day = 3\n"
           "duration_days = 1\n"
           "ticks_per_day = 30\n"
           "seed = 42\n"
        << extra;
    return path;
}

fs::path write_spec(const std::string& name) {
    const fs::path dir = scratch_root();
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << "name = cli_demo\n"
           "mechanism = RC,LN\n"
           "shocks_per_day = 2\n"
           "announcements_per_day = 2\n"
           "n_intergroup_ties = 2,4\n"
           "repetitions = 2\n"
           "master_seed = 7\n"
           "n_community = 8\n"
           "n_professional = 8\n"
           "hierarchy_sizes = 1,3,4\n"
           "informal_ties_m = 1\n"
           "duration_days = 1\n"
           "ticks_per_day = 20\n"
           "learning_rate = 0.1\n";
    return path;
}

}  // namespace

TEST_CASE("help exits 0, bad flags exit 2") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("run --help").code == 0);
    CHECK(run_cli("--no-such-flag").code == 2);
    CHECK(run_cli("run").code == 2);          // --config is required
    CHECK(run_cli("frobnicate").code == 2);   // unknown subcommand
}

TEST_CASE("generate-network writes a deterministic network.txt") {
    const fs::path cfg = write_config("net.cfg");
    const fs::path out_a = scratch_root() / "net_a";
    const fs::path out_b = scratch_root() / "net_b";

    CliResult a = run_cli("generate-network --config \"" + cfg.string() +
                          "\" --out-dir \"" + out_a.string() + "\"");
    CHECK(a.code == 0);
    CHECK(a.out.find("agents=16") != std::string::npos);
    const std::string net_a = slurp(out_a / "network.txt");
    CHECK(net_a.rfind("network 16 ", 0) == 0);

    CliResult b = run_cli("generate-network --config \"" + cfg.string() +
                          "\" --out-dir \"" + out_b.string() + "\"");
    CHECK(b.code == 0);
    CHECK(slurp(out_b / "network.txt") == net_a);

    // A seed override changes the build.
    CliResult c = run_cli("generate-network --config \"" + cfg.string() +
                          "\" --seed 43 --out-dir \"" + out_b.string() + "\"");
    CHECK(c.code == 0);
    CHECK(slurp(out_b / "network.txt") != net_a);
}

TEST_CASE("run produces result.json and optional artifacts, byte-stable") {
    const fs::path cfg = write_config("run.cfg");
    const fs::path out_a = scratch_root() / "run_a";
    const fs::path out_b = scratch_root() / "run_b";

    CliResult a = run_cli("run --config \"" + cfg.string() + "\" --ledger --timeline --out-dir \"" +
                          out_a.string() + "\"");
    CHECK(a.code == 0);
    CHECK(a.out.find("seed=42") != std::string::npos);
    CHECK(fs::exists(out_a / "result.json"));
    CHECK(fs::exists(out_a / "ledger.jsonl"));
    CHECK(fs::exists(out_a / "timeline.csv"));
    CHECK(slurp(out_a / "timeline.csv").rfind("tick,kind,item_id,origin\n", 0) == 0);

    CliResult b = run_cli("run --config \"" + cfg.string() + "\" --ledger --out-dir \"" +
                          out_b.string() + "\"");
    CHECK(b.code == 0);
    CHECK(slurp(out_b / "result.json") == slurp(out_a / "result.json"));
    CHECK(slurp(out_b / "ledger.jsonl") == slurp(out_a / "ledger.jsonl"));
}

TEST_CASE("q-trace file appears for LN runs and stays empty for RC") {
    const fs::path ln_cfg = write_config("ln.cfg", "mechanism = LN\nlearning_rate = 0.1\n");
    const fs::path out_ln = scratch_root() / "run_ln";
    CliResult a = run_cli("run --config \"" + ln_cfg.string() + "\" --q-trace --out-dir \"" +
                          out_ln.string() + "\"");
    CHECK(a.code == 0);
    const std::string trace = slurp(out_ln / "q_trace.csv");
    CHECK(trace.rfind("tick,agent,contact,q\n", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') > 1);  // has data rows

    const fs::path rc_cfg = write_config("rc.cfg");
    const fs::path out_rc = scratch_root() / "run_rc";
    CliResult b = run_cli("run --config \"" + rc_cfg.string() + "\" --q-trace --out-dir \"" +
                          out_rc.string() + "\"");
    CHECK(b.code == 0);
    CHECK(slurp(out_rc / "q_trace.csv") == "tick,agent,contact,q\n");
}

TEST_CASE("run errors: missing or invalid config exits 2") {
    CHECK(run_cli("run --config /nonexistent/conf").code == 2);
    const fs::path bad = write_config("bad.cfg", "info_processing_limit = 0\n");
    CHECK(run_cli("run --config \"" + bad.string() + "\"").code == 2);
}

TEST_CASE("experiment batches are thread-count invariant") {
    const fs::path spec = write_spec("exp.cfg");
    const fs::path out_1 = scratch_root() / "exp_1";
    const fs::path out_4 = scratch_root() / "exp_4";

    CliResult a = run_cli("experiment --config \"" + spec.string() +
                          "\" --threads 1 --out-dir \"" + out_1.string() + "\"");
    CHECK(a.code == 0);
    CHECK(a.out.find("runs=8") != std::string::npos);
    CHECK(a.out.find("failed=0") != std::string::npos);
    CHECK(fs::exists(out_1 / "runs.csv"));
    CHECK(fs::exists(out_1 / "summary.csv"));

    CliResult b = run_cli("experiment --config \"" + spec.string() +
                          "\" --threads 4 --out-dir \"" + out_4.string() + "\"");
    CHECK(b.code == 0);
    CHECK(slurp(out_4 / "runs.csv") == slurp(out_1 / "runs.csv"));
    CHECK(slurp(out_4 / "summary.csv") == slurp(out_1 / "summary.csv"));

    // IBSIM_THREADS is honored (and validated) when --threads is absent.
    const fs::path out_env = scratch_root() / "exp_env";
    CliResult c = run_cli("experiment --config \"" + spec.string() +
                          "\" --out-dir \"" + out_env.string() + "\"",
                          "IBSIM_THREADS=2");
    CHECK(c.code == 0);
    CHECK(slurp(out_env / "runs.csv") == slurp(out_1 / "runs.csv"));
    CHECK(run_cli("experiment --config \"" + spec.string() + "\"",
                  "IBSIM_THREADS=abc").code == 2);
}

TEST_CASE("experiment flags: reps override and per-run ledgers") {
    const fs::path spec = write_spec("exp2.cfg");
    const fs::path out = scratch_root() / "exp_led";
    CliResult a = run_cli("experiment --config \"" + spec.string() +
                          "\" --reps 1 --threads 2 --ledger --out-dir \"" +
                          out.string() + "\"");
    CHECK(a.code == 0);
    CHECK(a.out.find("runs=4") != std::string::npos);
    for (int i = 0; i < 4; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "run_%05d.jsonl", i);
        CHECK(fs::exists(out / "ledgers" / name));
    }
}

TEST_CASE("analyze sweeps stored results from files or directories") {
    const fs::path cfg = write_config("ana.cfg");
    const fs::path run_dir = scratch_root() / "ana_run";
    REQUIRE(run_cli("run --config \"" + cfg.string() + "\" --out-dir \"" +
                    run_dir.string() + "\"").code == 0);

    CliResult direct = run_cli("analyze \"" + run_dir.string() +
                               "\" --thresholds 50,90");
    CHECK(direct.code == 0);
    CHECK(direct.out.rfind("run_id,percentile,threshold,n_emergent,emergent_ids",
                           0) == 0);

    const fs::path out = scratch_root() / "ana_out";
    CliResult json = run_cli("analyze \"" + (run_dir / "result.json").string() +
                             "\" --thresholds 50,90 --format json --out-dir \"" +
                             out.string() + "\"");
    CHECK(json.code == 0);
    CHECK(fs::exists(out / "thresholds.json"));
    CHECK(slurp(out / "thresholds.json").rfind("[", 0) == 0);

    CHECK(run_cli("analyze /nonexistent/result.json").code == 2);
    CHECK(run_cli("analyze \"" + run_dir.string() + "\" --thresholds 200").code == 2);
    CHECK(run_cli("analyze \"" + run_dir.string() + "\" --format yaml").code == 2);
}

TEST_CASE("report emits figure data and rejects unknown figure ids") {
    const fs::path cfg = write_config("rep.cfg");
    const fs::path run_dir = scratch_root() / "rep_run";
    REQUIRE(run_cli("run --config \"" + cfg.string() + "\" --out-dir \"" +
                    run_dir.string() + "\"").code == 0);
    CliResult f3 = run_cli("report \"" + run_dir.string() + "\" fig3");
    CHECK(f3.code == 0);
    CHECK(slurp(run_dir / "fig3.csv").rfind("fe,n_candidates\n", 0) == 0);

    const fs::path spec = write_spec("rep_exp.cfg");
    const fs::path exp_dir = scratch_root() / "rep_exp";
    REQUIRE(run_cli("experiment --config \"" + spec.string() +
                    "\" --threads 2 --out-dir \"" + exp_dir.string() + "\"")
                .code == 0);
    for (const char* fig : {"fig4", "fig5", "fig6", "fig7", "fig8", "figB"}) {
        CliResult r = run_cli("report \"" + exp_dir.string() + "\" " +
                              std::string(fig));
        CHECK(r.code == 0);
        CHECK(fs::exists(exp_dir / (std::string(fig) + ".csv")));
    }

    CHECK(run_cli("report \"" + exp_dir.string() + "\" fig99").code == 2);
    CHECK(run_cli("report \"" + (scratch_root() / "void").string() + "\" fig4").code == 2);
}

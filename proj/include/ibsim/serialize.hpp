// JSON serialization of run results and transfer ledgers, plus the readers
// used by the analyze subcommand.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ibsim/engine.hpp"

namespace ibsim {

struct SerializeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// result.json: config echo, seed, candidate FE distribution, retrieval
// metrics (null when a group had no external need), realized event counts.
std::string result_to_json(const RunResult& result);
RunResult result_from_json(const std::string& text);

void write_result_json(const std::string& path, const RunResult& result);
RunResult read_result_json(const std::string& path);

// ledger.jsonl: one transfer record per line, ledger order.
std::string ledger_to_jsonl(const std::vector<TransferRecord>& ledger);
std::vector<TransferRecord> ledger_from_jsonl(const std::string& text);

void write_ledger_jsonl(const std::string& path,
                        const std::vector<TransferRecord>& ledger);
std::vector<TransferRecord> read_ledger_jsonl(const std::string& path);

}  // namespace ibsim

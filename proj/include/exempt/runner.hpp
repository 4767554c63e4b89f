#pragma once

#include "exempt/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace exempt {

struct RunConfig {
    std::string endpoint; // e.g. http://localhost:8080/v1
    std::string model;
    double temperature = 0.0;
    int max_output_tokens = 16384;
    int concurrency = 4;
    int max_attempts = 3;
    int backoff_ms = 250;
    std::string api_key; // empty = no Authorization header
    bool include_dev = false;
};

struct RunSummary {
    std::size_t requested = 0; // instances in scope
    std::size_t skipped = 0;   // already answered in the output file
    std::size_t answered = 0;  // newly recorded this run
    std::size_t failed = 0;    // retries exhausted, left unanswered
};

// Submits each in-scope instance's prompt to a chat-completion endpoint and
// appends {"instance_id", "raw_text"} records to out_file. Idempotent and
// resumable: instances already present in out_file are skipped, so reruns
// after an interruption converge to exactly one record per instance.
// Throws AuthError on 401/403; transient failures retry with backoff and are
// counted in `failed` once attempts run out.
RunSummary run_dataset(const TaskDataset& dataset, const RunConfig& config,
                       const std::filesystem::path& out_file);

} // namespace exempt

#pragma once

#include "exempt/dataset.hpp"
#include "exempt/estate.hpp"
#include "exempt/money.hpp"
#include "exempt/response.hpp"
#include "exempt/statute.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exempt {

// A predicted dollar amount counts as correct within a 5% relative error
// band around the gold amount, stabilized by epsilon = one dollar so that
// zero-valued golds are well behaved: |y_hat - y| / (y + 1$) < 0.05.
// Computed exactly in integer cents.
inline constexpr Cents kToleranceEpsilonCents = 100;

bool within_tolerance(Cents predicted, Cents gold);

// The stabilized absolute relative error itself; MARE averages this.
double stabilized_are(Cents predicted, Cents gold);

struct SampleScore {
    std::string instance_id;
    std::string split;
    bool format_valid = false;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::optional<double> are;           // dollar-valued tasks only
    std::optional<bool> schedule_valid;  // OE only
    std::optional<bool> exact;           // OE: valid and optimal within tolerance
};

struct MetricReport {
    std::string dataset;
    std::string task;
    std::string variant;
    std::size_t scored = 0;
    std::size_t malformed = 0;
    double malformed_rate = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::optional<double> mare;
    std::optional<double> valid_rate; // OE
    std::optional<double> exact_rate; // OE
    std::vector<SampleScore> samples;
};

// Scores one parsed response against the stored gold payload. The case and
// corpus back the Task OE legality check; other tasks score against gold
// alone.
SampleScore score_sample(Task task, const ParsedResponse& parsed, const nlohmann::ordered_json& gold,
                         const Case& c, const Corpus& corpus);

// Aggregates score_sample over the dataset's test split (dev included on
// request). Instances without a response are scored as invalid format.
MetricReport evaluate_run(const TaskDataset& dataset,
                          const std::map<std::string, std::string>& responses,
                          bool include_dev = false);

nlohmann::ordered_json report_to_json(const MetricReport& report, bool with_samples = false);

// Fixed-width text table over one or more report JSON documents.
std::string render_report_table(const std::vector<nlohmann::ordered_json>& reports);

} // namespace exempt

#pragma once

#include "exempt/money.hpp"
#include "exempt/task.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exempt {

// One parsed model response. format_valid=false means the payload is empty
// and the sample scores zero; parse problems never throw.
struct ParsedResponse {
    Task task = Task::AE;
    bool format_valid = false;

    std::vector<std::string> jurisdictions; // AE

    struct CitationAmount {
        std::string citation;
        Cents amount = 0;
    };
    std::vector<std::pair<std::string, std::vector<std::string>>> ec;    // description -> citations
    std::vector<std::pair<std::string, std::vector<CitationAmount>>> ev; // description -> (citation, max)
    std::vector<std::pair<std::string, Cents>> na;                       // jurisdiction -> amount
    std::vector<std::pair<std::string, std::vector<CitationAmount>>> oe; // description -> claims
};

// extract_final_answer + the task-specific payload parser in one step.
ParsedResponse parse_response(Task task, std::string_view raw_text);

// Parser for pre-extracted answer text (the suffix after the marker).
ParsedResponse parse_payload(Task task, std::string_view answer_text);

} // namespace exempt

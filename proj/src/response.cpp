#include "exempt/response.hpp"

#include "exempt/errors.hpp"
#include "exempt/normalize.hpp"

#include "json.hpp"

namespace exempt {

using nlohmann::ordered_json;

const char* task_name(Task t) {
    switch (t) {
    case Task::AE: return "AE";
    case Task::EC: return "EC";
    case Task::EV: return "EV";
    case Task::NA: return "NA";
    case Task::OE: return "OE";
    }
    return "?";
}

Task task_from_name(const std::string& name) {
    std::string up = ascii_lower(name);
    if (up == "ae") return Task::AE;
    if (up == "ec") return Task::EC;
    if (up == "ev") return Task::EV;
    if (up == "na") return Task::NA;
    if (up == "oe") return Task::OE;
    throw UsageError("unknown task name: " + name);
}

namespace {

std::optional<Cents> amount_from_json(const ordered_json& v) {
    if (v.is_number_integer()) return v.get<std::int64_t>() * 100;
    if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>()) * 100;
    if (v.is_number_float()) return static_cast<Cents>(std::llround(v.get<double>() * 100.0));
    if (v.is_string()) return parse_money(v.get<std::string>());
    return std::nullopt;
}

std::optional<ParsedResponse::CitationAmount> entry_from_json(const ordered_json& v,
                                                              const char* amount_key) {
    if (!v.is_object() || !v.contains("citation")) return std::nullopt;
    ParsedResponse::CitationAmount entry;
    if (!v.at("citation").is_string()) return std::nullopt;
    entry.citation = v.at("citation").get<std::string>();
    const char* keys[] = {amount_key, "claim_value", "max_value", "amount", "value"};
    for (const char* key : keys) {
        if (v.contains(key)) {
            auto amount = amount_from_json(v.at(key));
            if (!amount) return std::nullopt;
            entry.amount = *amount;
            return entry;
        }
    }
    return std::nullopt;
}

bool parse_json_payload(Task task, std::string_view answer, ParsedResponse& out) {
    auto blob = extract_balanced_json(answer);
    if (!blob) return false;
    ordered_json doc = ordered_json::parse(*blob, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return false;

    for (const auto& [key, value] : doc.items()) {
        switch (task) {
        case Task::EC: {
            std::vector<std::string> citations;
            if (value.is_string()) {
                citations.push_back(value.get<std::string>());
            } else if (value.is_array()) {
                for (const auto& cite : value) {
                    if (!cite.is_string()) return false;
                    citations.push_back(cite.get<std::string>());
                }
            } else {
                return false;
            }
            out.ec.emplace_back(key, std::move(citations));
            break;
        }
        case Task::EV:
        case Task::OE: {
            std::vector<ParsedResponse::CitationAmount> entries;
            const char* amount_key = task == Task::EV ? "max_value" : "claim_value";
            if (value.is_object()) {
                auto entry = entry_from_json(value, amount_key);
                if (!entry) return false;
                entries.push_back(std::move(*entry));
            } else if (value.is_array()) {
                for (const auto& item : value) {
                    auto entry = entry_from_json(item, amount_key);
                    if (!entry) return false;
                    entries.push_back(std::move(*entry));
                }
            } else {
                return false;
            }
            if (task == Task::EV) {
                out.ev.emplace_back(key, std::move(entries));
            } else {
                out.oe.emplace_back(key, std::move(entries));
            }
            break;
        }
        case Task::NA: {
            auto amount = amount_from_json(value);
            if (!amount) return false;
            out.na.emplace_back(key, *amount);
            break;
        }
        case Task::AE:
            return false;
        }
    }
    return true;
}

} // namespace

ParsedResponse parse_payload(Task task, std::string_view answer_text) {
    ParsedResponse out;
    out.task = task;
    std::string answer = trim(answer_text);
    if (answer.empty()) return out;

    if (task == Task::AE) {
        // Comma-separated jurisdiction names; brackets from the instruction
        // template are tolerated.
        std::string cleaned;
        for (char c : answer) {
            if (c == '[' || c == ']' || c == '"' || c == '\'') continue;
            cleaned.push_back(c == '\n' ? ',' : c);
        }
        size_t pos = 0;
        while (pos <= cleaned.size()) {
            size_t comma = cleaned.find(',', pos);
            std::string token = trim(cleaned.substr(pos, comma == std::string::npos
                                                             ? std::string::npos
                                                             : comma - pos));
            if (!token.empty()) out.jurisdictions.push_back(token);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        out.format_valid = !out.jurisdictions.empty();
        return out;
    }

    out.format_valid = parse_json_payload(task, answer, out);
    if (!out.format_valid) {
        out.ec.clear();
        out.ev.clear();
        out.na.clear();
        out.oe.clear();
    }
    return out;
}

ParsedResponse parse_response(Task task, std::string_view raw_text) {
    auto answer = extract_final_answer(raw_text);
    if (!answer) {
        ParsedResponse out;
        out.task = task;
        return out; // marker missing: invalid format
    }
    return parse_payload(task, *answer);
}

} // namespace exempt

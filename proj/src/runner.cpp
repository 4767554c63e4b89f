#include "exempt/runner.hpp"

#include "exempt/errors.hpp"

#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace exempt {

using nlohmann::ordered_json;

namespace {

struct Endpoint {
    std::string host_port; // scheme://host:port
    std::string path;      // request path
};

Endpoint parse_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw UsageError("endpoint must include a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    ep.host_port = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string base = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!base.empty() && base.back() == '/') base.pop_back();
    if (base.size() >= 17 && base.compare(base.size() - 17, 17, "/chat/completions") == 0) {
        ep.path = base;
    } else {
        ep.path = base + "/chat/completions";
    }
    return ep;
}

std::string response_text(const std::string& body) {
    ordered_json doc = ordered_json::parse(body, nullptr, false);
    if (doc.is_discarded()) throw EndpointError("endpoint returned non-JSON body");
    try {
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception&) {
        throw EndpointError("endpoint response missing choices[0].message.content");
    }
}

} // namespace

RunSummary run_dataset(const TaskDataset& dataset, const RunConfig& config,
                       const std::filesystem::path& out_file) {
    const Endpoint endpoint = parse_endpoint(config.endpoint);

    std::set<std::string> answered;
    if (std::filesystem::exists(out_file)) {
        for (const auto& [id, text] : load_responses(out_file)) answered.insert(id);
    }

    std::vector<const TaskInstance*> pending;
    RunSummary summary;
    for (const auto& inst : dataset.instances) {
        if (inst.split == "dev" && !config.include_dev) continue;
        ++summary.requested;
        if (answered.count(inst.instance_id)) {
            ++summary.skipped;
            continue;
        }
        pending.push_back(&inst);
    }

    std::ofstream out(out_file, std::ios::binary | std::ios::app);
    if (!out) throw OutputNotWritable("cannot open responses file: " + out_file.string());

    std::mutex write_mutex;
    std::atomic<size_t> next{0};
    std::atomic<size_t> ok{0}, bad{0};
    std::atomic<bool> auth_failed{false};

    auto worker = [&]() {
        httplib::Client client(endpoint.host_port);
        client.set_connection_timeout(10);
        client.set_read_timeout(600);
        if (!config.api_key.empty()) client.set_bearer_token_auth(config.api_key);

        while (true) {
            size_t index = next.fetch_add(1);
            if (index >= pending.size() || auth_failed.load()) return;
            const TaskInstance& inst = *pending[index];

            ordered_json request;
            request["model"] = config.model;
            request["messages"] = ordered_json::array(
                {{{"role", "user"}, {"content", assemble_prompt(dataset, inst)}}});
            request["temperature"] = config.temperature;
            request["max_tokens"] = config.max_output_tokens;
            const std::string body = request.dump();

            bool recorded = false;
            for (int attempt = 0; attempt < config.max_attempts && !recorded; ++attempt) {
                if (attempt > 0) {
                    std::this_thread::sleep_for(
                        std::chrono::milliseconds(config.backoff_ms * (1 << (attempt - 1))));
                }
                auto res = client.Post(endpoint.path, body, "application/json");
                if (!res) continue; // connection-level failure, retry
                if (res->status == 401 || res->status == 403) {
                    auth_failed.store(true);
                    return;
                }
                if (res->status == 429 || res->status >= 500) continue;
                if (res->status != 200) break; // unretryable request error
                std::string text;
                try {
                    text = response_text(res->body);
                } catch (const EndpointError&) {
                    break;
                }
                ordered_json record;
                record["instance_id"] = inst.instance_id;
                record["raw_text"] = text;
                std::lock_guard<std::mutex> lock(write_mutex);
                out << record.dump() << '\n';
                out.flush();
                recorded = true;
            }
            (recorded ? ok : bad).fetch_add(1);
        }
    };

    int threads = std::max(1, config.concurrency);
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (auth_failed.load()) throw AuthError("endpoint rejected the API key (401/403)");

    summary.answered = ok.load();
    summary.failed = bad.load();
    return summary;
}

} // namespace exempt

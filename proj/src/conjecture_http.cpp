#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "soscert/conjecture.hpp"

namespace soscert {

namespace {

using nlohmann::json;

// "http://host:port/path" -> (base, path)
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

std::vector<std::string> extract_texts(const json& body) {
    std::vector<std::string> texts;
    if (body.contains("choices") && body["choices"].is_array()) {
        for (auto& choice : body["choices"]) {
            if (choice.contains("message") && choice["message"].contains("content"))
                texts.push_back(choice["message"]["content"].get<std::string>());
            else if (choice.contains("text"))
                texts.push_back(choice["text"].get<std::string>());
        }
    } else if (body.contains("content") && body["content"].is_string()) {
        texts.push_back(body["content"].get<std::string>());
    } else if (body.contains("text") && body["text"].is_string()) {
        texts.push_back(body["text"].get<std::string>());
    }
    return texts;
}

}  // namespace

std::vector<ConjectureCandidate> HttpSource::propose(const ConjectureRequest& req) {
    auto [base, path] = split_url(cfg_.url);
    httplib::Client client(base);
    client.set_connection_timeout(static_cast<time_t>(cfg_.request_timeout_s));
    client.set_read_timeout(static_cast<time_t>(cfg_.request_timeout_s));

    httplib::Headers headers;
    if (const char* token = std::getenv(cfg_.token_env.c_str()); token && *token)
        headers.emplace(cfg_.auth_header, std::string("Bearer ") + token);

    json request = {
        {"model", cfg_.model},
        {"temperature", cfg_.temperature},
        {"n", cfg_.candidates_per_call},
        {"messages", json::array({json{{"role", "user"}, {"content", build_prompt(req.f)}}})},
    };
    const std::string body = request.dump();

    Deadline deadline = req.timeout_s > 0 ? Deadline::in_seconds(req.timeout_s) : Deadline::none();
    std::vector<ConjectureCandidate> out;
    std::size_t arrival = 0;
    while (static_cast<int>(out.size()) < req.budget_k && !deadline.expired()) {
        httplib::Result res;
        int attempts = 0;
        do {
            res = client.Post(path, headers, body, "application/json");
        } while (!res && ++attempts <= cfg_.max_retries && !deadline.expired());
        if (!res) throw std::runtime_error("http source: transport failure after retries");
        if (res->status != 200)
            throw std::runtime_error("http source: status " + std::to_string(res->status));

        json parsed = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_discarded())
            throw std::runtime_error("http source: response body is not JSON");
        auto texts = extract_texts(parsed);
        if (texts.empty()) throw std::runtime_error("http source: no completion text in response");
        for (auto& t : texts) {
            if (static_cast<int>(out.size()) >= req.budget_k) break;
            // malformed completions are retained with theta = +inf
            out.push_back(score_candidate(req.f, t, tag(), arrival++));
        }
    }
    return out;
}

}  // namespace soscert

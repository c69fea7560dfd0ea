#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "skeptic/live_backend.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace skeptic {

using nlohmann::json;

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path prefix, possibly empty
};

SplitUrl split_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("endpoint URL must include a scheme: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

class HttplibTransport : public HttpTransport {
public:
    HttplibTransport(const std::string& base_url, std::chrono::seconds timeout)
        : url_(split_url(base_url)), timeout_(timeout) {}

    HttpResult post(const std::string& path, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers) override {
        // httplib clients are not safe for concurrent use; one per request.
        httplib::Client client(url_.origin);
        client.set_connection_timeout(timeout_.count(), 0);
        client.set_read_timeout(timeout_.count(), 0);
        client.set_write_timeout(timeout_.count(), 0);
        httplib::Headers hs;
        for (const auto& [k, v] : headers) hs.emplace(k, v);
        auto res = client.Post(url_.prefix + path, hs, body, "application/json");
        if (!res)
            throw TransportError("HTTP transport failure: " +
                                 httplib::to_string(res.error()));
        HttpResult out;
        out.status = res->status;
        out.body = res->body;
        for (const auto& [k, v] : res->headers) {
            std::string key = k;
            std::transform(key.begin(), key.end(), key.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            out.headers[key] = v;
        }
        return out;
    }

private:
    SplitUrl url_;
    std::chrono::seconds timeout_;
};

bool retryable_status(int status) {
    return status == 408 || status == 409 || status == 429 || status >= 500;
}

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url,
                                                      std::chrono::seconds timeout) {
    return std::make_unique<HttplibTransport>(base_url, timeout);
}

LiveBackend::LiveBackend(LiveConfig config, std::unique_ptr<HttpTransport> transport,
                         Clock clock, Sleeper sleeper, JitterSource jitter)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      clock_(std::move(clock)),
      sleeper_(std::move(sleeper)),
      jitter_(std::move(jitter)),
      bucket_tokens_(config_.rate_limit.burst) {
    if (!transport_) transport_ = make_httplib_transport(config_.base_url, config_.timeout);
    if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
    if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (!jitter_) {
        auto rng = std::make_shared<std::mt19937_64>(std::random_device{}());
        jitter_ = [rng] {
            return static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
        };
    }
    bucket_refilled_ = clock_();
}

std::string LiveBackend::wire_payload(const ChatRequest& request) const {
    json messages = json::array();
    for (const ChatMessage& m : request.messages) {
        json content = json::array();
        for (const MessagePart& p : m.parts) {
            if (p.type == MessagePart::Type::Text) {
                content.push_back({{"type", "text"}, {"text", p.text}});
            } else {
                content.push_back(
                    {{"type", "image_url"},
                     {"image_url",
                      {{"url", "data:" + p.media_type + ";base64," + p.data_b64}}}});
            }
        }
        messages.push_back({{"role", m.role}, {"content", std::move(content)}});
    }
    json payload{{"model", request.model}, {"messages", std::move(messages)}};
    if (config_.supports_sampling_params) {
        if (request.temperature) payload["temperature"] = *request.temperature;
        if (request.max_output_tokens) payload["max_tokens"] = *request.max_output_tokens;
    }
    return payload.dump();
}

void LiveBackend::acquire_rate_token() {
    const double per_ms = config_.rate_limit.requests_per_minute / 60000.0;
    while (true) {
        std::chrono::milliseconds wait{0};
        {
            std::lock_guard lock(bucket_mutex_);
            auto now = clock_();
            auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(now - bucket_refilled_);
            bucket_refilled_ = now;
            bucket_tokens_ = std::min(static_cast<double>(config_.rate_limit.burst),
                                      bucket_tokens_ + elapsed.count() * per_ms);
            if (bucket_tokens_ >= 1.0) {
                bucket_tokens_ -= 1.0;
                return;
            }
            wait = std::chrono::milliseconds(
                static_cast<long>(std::ceil((1.0 - bucket_tokens_) / per_ms)));
        }
        sleeper_(wait);
    }
}

std::chrono::milliseconds LiveBackend::backoff_delay(int attempt,
                                                     const HttpResult* result) const {
    if (result && result->status == 429) {
        auto it = result->headers.find("retry-after");
        if (it != result->headers.end()) {
            char* end = nullptr;
            double seconds = std::strtod(it->second.c_str(), &end);
            if (end != it->second.c_str() && seconds >= 0)
                return std::min(std::chrono::milliseconds(static_cast<long>(seconds * 1000)),
                                std::chrono::milliseconds(30000));
        }
    }
    double delay = static_cast<double>(config_.retry.base_delay.count()) *
                   std::pow(2.0, attempt - 1);
    delay = std::min(delay, static_cast<double>(config_.retry.max_delay.count()));
    delay *= 1.0 - config_.retry.jitter * jitter_();
    return std::chrono::milliseconds(static_cast<long>(delay));
}

ChatResponse LiveBackend::complete(const ChatRequest& request) {
    const std::string body = wire_payload(request);
    std::vector<std::pair<std::string, std::string>> headers;
    if (!config_.api_key.empty())
        headers.emplace_back("Authorization", "Bearer " + config_.api_key);

    const auto started = clock_();
    std::string last_error;
    bool last_was_rate_limit = false;
    for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
        acquire_rate_token();
        HttpResult result;
        bool transport_failed = false;
        try {
            result = transport_->post("/chat/completions", body, headers);
        } catch (const TransportError& e) {
            transport_failed = true;
            last_error = e.what();
        }
        if (!transport_failed && result.status >= 200 && result.status < 300) {
            json j = json::parse(result.body, nullptr, false);
            if (j.is_discarded() || !j.contains("choices") || j["choices"].empty() ||
                !j["choices"][0].contains("message"))
                throw MalformedResponseError("unusable chat completion payload: " +
                                             result.body.substr(0, 200));
            ChatResponse resp;
            resp.origin = Origin::Live;
            resp.attempts = attempt;
            resp.sampling_params_omitted = !config_.supports_sampling_params &&
                                           (request.temperature || request.max_output_tokens);
            const json& message = j["choices"][0]["message"];
            if (message.contains("content") && message["content"].is_string())
                resp.text = message["content"].get<std::string>();
            if (j.contains("usage")) {
                resp.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
                resp.usage.completion_tokens = j["usage"].value("completion_tokens", 0L);
            }
            resp.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                clock_() - started);
            return resp;
        }
        if (!transport_failed) {
            last_was_rate_limit = result.status == 429;
            last_error = "HTTP " + std::to_string(result.status) + ": " +
                         result.body.substr(0, 200);
            if (!retryable_status(result.status)) throw TransportError(last_error);
        }
        if (attempt < config_.retry.max_attempts)
            sleeper_(backoff_delay(attempt, transport_failed ? nullptr : &result));
    }
    if (last_was_rate_limit)
        throw RateLimitedError("rate limited after " +
                               std::to_string(config_.retry.max_attempts) +
                               " attempts: " + last_error);
    throw TransportError("request failed after " +
                         std::to_string(config_.retry.max_attempts) +
                         " attempts: " + last_error);
}

}  // namespace skeptic

#pragma once

#include "skeptic/gateway.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <string>

namespace skeptic {

struct HttpResult {
    int status = 0;
    std::string body;
    std::map<std::string, std::string> headers;  // lowercase keys
};

// Transport seam: the real implementation speaks HTTPS via cpp-httplib;
// tests inject fault-producing doubles. Throws TransportError on
// network-level failure.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResult post(const std::string& path, const std::string& body,
                            const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url,
                                                      std::chrono::seconds timeout);

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{500};
    std::chrono::milliseconds max_delay{8000};
    double jitter = 0.5;  // delay is scaled by (1 - jitter * u), u uniform in [0,1)
};

struct RateLimit {
    double requests_per_minute = 60.0;
    int burst = 10;
};

struct LiveConfig {
    std::string base_url;  // e.g. https://api.openai.com/v1
    std::string api_key;
    std::string model;
    bool supports_sampling_params = true;  // omit temperature/max tokens when false
    bool vision = true;
    RetryPolicy retry;
    RateLimit rate_limit;
    std::chrono::seconds timeout{120};
};

// Live chat-completions client: token-bucket rate limiting, exponential
// backoff with jitter on transient failures, typed errors. Clock, sleeper
// and jitter source are injectable for deterministic tests.
class LiveBackend : public Backend {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;
    using Sleeper = std::function<void(std::chrono::milliseconds)>;
    using JitterSource = std::function<double()>;

    explicit LiveBackend(LiveConfig config, std::unique_ptr<HttpTransport> transport = nullptr,
                         Clock clock = {}, Sleeper sleeper = {}, JitterSource jitter = {});

    ChatResponse complete(const ChatRequest& request) override;
    bool supports_vision() const override { return config_.vision; }

    // The wire-format JSON body for a request; exposed for protocol tests.
    std::string wire_payload(const ChatRequest& request) const;

private:
    void acquire_rate_token();
    std::chrono::milliseconds backoff_delay(int attempt,
                                            const HttpResult* result) const;

    LiveConfig config_;
    std::unique_ptr<HttpTransport> transport_;
    Clock clock_;
    Sleeper sleeper_;
    JitterSource jitter_;

    std::mutex bucket_mutex_;
    double bucket_tokens_;
    std::chrono::steady_clock::time_point bucket_refilled_;
};

}  // namespace skeptic

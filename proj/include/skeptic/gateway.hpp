#pragma once

#include "skeptic/errors.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace skeptic {

struct MessagePart {
    enum class Type { Text, Image };
    Type type = Type::Text;
    std::string text;        // Text parts
    std::string media_type;  // Image parts, e.g. "image/jpeg"
    std::string data_b64;    // Image parts, base64 payload
};

MessagePart text_part(std::string text);
MessagePart image_part(std::string media_type, std::string data_b64);

struct ChatMessage {
    std::string role = "user";
    std::vector<MessagePart> parts;
};

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    std::optional<double> temperature;
    std::optional<int> max_output_tokens;

    // Canonical serialization (sorted keys, no whitespace); the fingerprint
    // is the SHA-256 of it and survives any serialize/parse round trip.
    nlohmann::json canonical_json() const;
    std::string fingerprint() const;
    static ChatRequest from_canonical_json(const nlohmann::json& j);

    // Concatenated text parts, newest message last. Used by scripted doubles
    // and prompt audits.
    std::string joined_text() const;
};

struct Usage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
};

enum class Origin { Live, Cache, Script };
std::string to_string(Origin origin);

struct ChatResponse {
    std::string text;
    Usage usage;
    std::chrono::milliseconds latency{0};
    Origin origin = Origin::Script;
    int attempts = 1;
    bool sampling_params_omitted = false;
};

// Uniform chat-completion access. Handles are safe to share across threads.
class Backend {
public:
    virtual ~Backend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
    virtual bool supports_vision() const { return true; }
};

// Deterministic test/replay backend. Fingerprint mode serves recorded
// responses by request fingerprint; sequence mode serves them in recording
// order regardless of the request (for hand-written fixtures).
class ScriptedBackend : public Backend {
public:
    enum class Mode { Fingerprint, Sequence };

    explicit ScriptedBackend(Mode mode = Mode::Fingerprint)
        : mode_(mode), mutex_(std::make_unique<std::mutex>()) {}
    ScriptedBackend(ScriptedBackend&&) = default;
    ScriptedBackend& operator=(ScriptedBackend&&) = default;

    // Loads a transcript file (one JSON record per line). Records with
    // fingerprints load in fingerprint mode; records without load in
    // sequence mode; mixing the two is an error.
    static ScriptedBackend from_file(const std::string& path);

    void add(const std::string& fingerprint, std::string response_text);
    void add_next(std::string response_text);  // sequence mode

    ChatResponse complete(const ChatRequest& request) override;
    Mode mode() const { return mode_; }
    std::size_t size() const;

private:
    Mode mode_;
    mutable std::unique_ptr<std::mutex> mutex_;
    std::map<std::string, std::string> by_fingerprint_;
    std::vector<std::string> sequence_;
    std::size_t cursor_ = 0;
};

// Adapter for programmatic doubles: the callback sees the full request and
// returns the response text.
class CallbackBackend : public Backend {
public:
    using Handler = std::function<std::string(const ChatRequest&)>;
    explicit CallbackBackend(Handler handler) : handler_(std::move(handler)) {}
    ChatResponse complete(const ChatRequest& request) override;

private:
    Handler handler_;
};

// Serves repeated fingerprints from memory. Cache keys include the trigger
// catalog hash so prompt edits invalidate entries.
class CachingBackend : public Backend {
public:
    CachingBackend(std::shared_ptr<Backend> inner, std::string catalog_hash);
    ChatResponse complete(const ChatRequest& request) override;
    bool supports_vision() const override { return inner_->supports_vision(); }
    std::size_t hits() const { return hits_; }

private:
    std::shared_ptr<Backend> inner_;
    std::string catalog_hash_;
    std::mutex mutex_;
    std::map<std::string, ChatResponse> entries_;
    std::size_t hits_ = 0;
};

// Serialized append access to one transcript file; several recording
// backends (external and internal role) can share a writer.
class TranscriptWriter {
public:
    explicit TranscriptWriter(std::string path);  // truncates
    void append(const ChatRequest& request, const ChatResponse& response);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mutex_;
};

// Tees every (fingerprint, canonical request, response) to a line-delimited
// transcript file that ScriptedBackend can replay.
class RecordingBackend : public Backend {
public:
    RecordingBackend(std::shared_ptr<Backend> inner, const std::string& path);
    RecordingBackend(std::shared_ptr<Backend> inner,
                     std::shared_ptr<TranscriptWriter> writer);
    ChatResponse complete(const ChatRequest& request) override;
    bool supports_vision() const override { return inner_->supports_vision(); }

private:
    std::shared_ptr<Backend> inner_;
    std::shared_ptr<TranscriptWriter> writer_;
};

}  // namespace skeptic

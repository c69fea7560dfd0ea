#include "skeptic/gateway.hpp"

#include "skeptic/hash.hpp"

#include <algorithm>
#include <fstream>

namespace skeptic {

using nlohmann::json;

MessagePart text_part(std::string text) {
    MessagePart p;
    p.type = MessagePart::Type::Text;
    p.text = std::move(text);
    return p;
}

MessagePart image_part(std::string media_type, std::string data_b64) {
    MessagePart p;
    p.type = MessagePart::Type::Image;
    p.media_type = std::move(media_type);
    p.data_b64 = std::move(data_b64);
    return p;
}

json ChatRequest::canonical_json() const {
    json msgs = json::array();
    for (const ChatMessage& m : messages) {
        json parts = json::array();
        for (const MessagePart& p : m.parts) {
            if (p.type == MessagePart::Type::Text) {
                parts.push_back({{"type", "text"}, {"text", p.text}});
            } else {
                parts.push_back({{"type", "image"},
                                 {"media_type", p.media_type},
                                 {"data_b64", p.data_b64}});
            }
        }
        msgs.push_back({{"role", m.role}, {"parts", std::move(parts)}});
    }
    json j{{"model", model}, {"messages", std::move(msgs)}};
    if (temperature) j["temperature"] = *temperature;
    if (max_output_tokens) j["max_output_tokens"] = *max_output_tokens;
    return j;
}

std::string ChatRequest::fingerprint() const { return sha256_hex(canonical_json().dump()); }

ChatRequest ChatRequest::from_canonical_json(const json& j) {
    ChatRequest r;
    r.model = j.at("model").get<std::string>();
    if (j.contains("temperature")) r.temperature = j.at("temperature").get<double>();
    if (j.contains("max_output_tokens"))
        r.max_output_tokens = j.at("max_output_tokens").get<int>();
    for (const json& m : j.at("messages")) {
        ChatMessage msg;
        msg.role = m.at("role").get<std::string>();
        for (const json& p : m.at("parts")) {
            if (p.at("type") == "text") {
                msg.parts.push_back(text_part(p.at("text").get<std::string>()));
            } else {
                msg.parts.push_back(image_part(p.at("media_type").get<std::string>(),
                                               p.at("data_b64").get<std::string>()));
            }
        }
        r.messages.push_back(std::move(msg));
    }
    return r;
}

std::string ChatRequest::joined_text() const {
    std::string out;
    for (const ChatMessage& m : messages)
        for (const MessagePart& p : m.parts)
            if (p.type == MessagePart::Type::Text) {
                if (!out.empty()) out += "\n";
                out += p.text;
            }
    return out;
}

std::string to_string(Origin origin) {
    switch (origin) {
        case Origin::Live: return "live";
        case Origin::Cache: return "cache";
        case Origin::Script: return "script";
    }
    return "unknown";
}

ScriptedBackend ScriptedBackend::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw GatewayError("cannot read transcript file: " + path);
    std::vector<std::pair<std::optional<std::string>, std::string>> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw GatewayError("transcript " + path + ": line " +
                               std::to_string(line_no) + " is not valid JSON");
        std::optional<std::string> fp;
        if (j.contains("fingerprint")) fp = j.at("fingerprint").get<std::string>();
        std::string text;
        if (j.contains("response") && j.at("response").contains("text"))
            text = j.at("response").at("text").get<std::string>();
        else if (j.contains("text"))
            text = j.at("text").get<std::string>();
        else
            throw GatewayError("transcript " + path + ": line " +
                               std::to_string(line_no) + " has no response text");
        records.emplace_back(std::move(fp), std::move(text));
    }
    bool all_fp = std::all_of(records.begin(), records.end(),
                              [](const auto& r) { return r.first.has_value(); });
    bool none_fp = std::none_of(records.begin(), records.end(),
                                [](const auto& r) { return r.first.has_value(); });
    if (!all_fp && !none_fp)
        throw GatewayError("transcript " + path +
                           " mixes fingerprinted and sequence records");
    ScriptedBackend backend(all_fp ? Mode::Fingerprint : Mode::Sequence);
    for (auto& [fp, text] : records) {
        if (fp)
            backend.add(*fp, std::move(text));
        else
            backend.add_next(std::move(text));
    }
    return backend;
}

void ScriptedBackend::add(const std::string& fingerprint, std::string response_text) {
    std::lock_guard lock(*mutex_);
    by_fingerprint_[fingerprint] = std::move(response_text);
}

void ScriptedBackend::add_next(std::string response_text) {
    std::lock_guard lock(*mutex_);
    sequence_.push_back(std::move(response_text));
}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
    std::lock_guard lock(*mutex_);
    ChatResponse resp;
    resp.origin = Origin::Script;
    if (mode_ == Mode::Fingerprint) {
        auto it = by_fingerprint_.find(request.fingerprint());
        if (it == by_fingerprint_.end())
            throw UnknownFingerprintError("no scripted response for fingerprint " +
                                          request.fingerprint());
        resp.text = it->second;
    } else {
        if (cursor_ >= sequence_.size())
            throw UnknownFingerprintError("scripted sequence is exhausted after " +
                                          std::to_string(sequence_.size()) + " calls");
        resp.text = sequence_[cursor_++];
    }
    return resp;
}

std::size_t ScriptedBackend::size() const {
    std::lock_guard lock(*mutex_);
    return mode_ == Mode::Fingerprint ? by_fingerprint_.size() : sequence_.size();
}

ChatResponse CallbackBackend::complete(const ChatRequest& request) {
    ChatResponse resp;
    resp.origin = Origin::Script;
    resp.text = handler_(request);
    return resp;
}

CachingBackend::CachingBackend(std::shared_ptr<Backend> inner, std::string catalog_hash)
    : inner_(std::move(inner)), catalog_hash_(std::move(catalog_hash)) {}

ChatResponse CachingBackend::complete(const ChatRequest& request) {
    const std::string key = catalog_hash_ + ":" + request.fingerprint();
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            ++hits_;
            ChatResponse resp = it->second;
            resp.origin = Origin::Cache;
            resp.latency = std::chrono::milliseconds(0);
            return resp;
        }
    }
    ChatResponse resp = inner_->complete(request);
    std::lock_guard lock(mutex_);
    entries_.emplace(key, resp);
    return resp;
}

TranscriptWriter::TranscriptWriter(std::string path) : path_(std::move(path)) {
    std::ofstream out(path_, std::ios::trunc);
    if (!out.good()) throw GatewayError("cannot write transcript file: " + path_);
}

void TranscriptWriter::append(const ChatRequest& request, const ChatResponse& response) {
    json record{{"fingerprint", request.fingerprint()},
                {"request", request.canonical_json()},
                {"response", json{{"text", response.text}}}};
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out.good()) throw GatewayError("cannot append to transcript file: " + path_);
    out << record.dump() << "\n";
}

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> inner, const std::string& path)
    : RecordingBackend(std::move(inner), std::make_shared<TranscriptWriter>(path)) {}

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> inner,
                                   std::shared_ptr<TranscriptWriter> writer)
    : inner_(std::move(inner)), writer_(std::move(writer)) {}

ChatResponse RecordingBackend::complete(const ChatRequest& request) {
    ChatResponse resp = inner_->complete(request);
    writer_->append(request, resp);
    return resp;
}

}  // namespace skeptic

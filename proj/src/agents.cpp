#include "skeptic/agents.hpp"

#include "skeptic/hash.hpp"

#include <stdexcept>

namespace skeptic {

namespace {

const std::string kProtocolReminder =
    "Your previous reply did not follow the protocol. Reply again using exactly the\n"
    "VERDICT: / CONDITION: / REASON: lines. An EPOCHE verdict must include a\n"
    "CONDITION line naming the single missing sufficient condition.";

ChatRequest with_settings(const CallSettings& settings) {
    ChatRequest r;
    r.model = settings.model;
    r.temperature = settings.temperature;
    r.max_output_tokens = settings.max_output_tokens;
    return r;
}

}  // namespace

ChatRequest build_media_request(const CallSettings& settings, const MediaInput& media,
                                const std::string& prompt_text) {
    ChatRequest r = with_settings(settings);
    ChatMessage m;
    m.parts.push_back(text_part(prompt_text));
    for (const Frame& frame : media.frames)
        m.parts.push_back(image_part(frame.media_type, base64_encode(frame.bytes)));
    r.messages.push_back(std::move(m));
    return r;
}

ChatRequest build_text_request(const CallSettings& settings, const std::string& prompt_text) {
    ChatRequest r = with_settings(settings);
    ChatMessage m;
    m.parts.push_back(text_part(prompt_text));
    r.messages.push_back(std::move(m));
    return r;
}

ParsedExternalOutput external_reason(Backend& backend, const MediaInput& media,
                                     const Trigger& trigger, const CallSettings& settings) {
    if (media.frames.empty()) throw MediaError("media input carries no frames");
    if (!backend.supports_vision())
        throw ConfigError("the external skeptic backend must support visual inputs");
    ChatRequest request = build_media_request(settings, media, trigger.text);
    ParsedExternalOutput out;
    out.call.fingerprint = request.fingerprint();
    out.call.response = backend.complete(request);
    out.raw_text = out.call.response.text;
    out.statements = parse_statement_list(out.raw_text);
    return out;
}

ParsedInternalOutput internal_verify(Backend& backend, const std::string& statement,
                                     const CallSettings& settings) {
    if (statement.empty()) throw std::invalid_argument("statement must not be empty");
    const std::string prompt = trigger_catalog(TriggerKind::Internal).text +
                               "\n\nSkeptical claim under review:\n" + statement;
    ParsedInternalOutput out;
    std::optional<ParsedVerdict> verdict;
    for (int round = 0; round < 2; ++round) {
        ChatRequest request = build_text_request(
            settings, round == 0 ? prompt : prompt + "\n\n" + kProtocolReminder);
        CallMeta meta;
        meta.fingerprint = request.fingerprint();
        meta.response = backend.complete(request);
        out.raw_text = meta.response.text;
        out.calls.push_back(std::move(meta));
        verdict = parse_verdict(out.raw_text);
        bool usable = verdict.has_value() &&
                      (verdict->flag != RawFlag::Epoche ||
                       (verdict->condition && !verdict->condition->empty()));
        if (usable) break;
        verdict.reset();
    }
    if (!verdict) {
        // Conservative downgrade: an unusable judgment never becomes epoche.
        out.flag = RawFlag::Invalid;
        out.reasoning = "unparseable internal verdict; downgraded to invalid: " +
                        normalize_whitespace(out.raw_text);
        return out;
    }
    out.flag = verdict->flag;
    out.reasoning = verdict->reasoning;
    if (out.flag == RawFlag::Epoche) out.condition = verdict->condition;
    return out;
}

ReflectiveResult generate_reflective_trigger(Backend& backend, const std::string& r_ex,
                                             const std::string& r_in,
                                             const std::string& condition,
                                             const CallSettings& settings) {
    if (condition.empty())
        throw std::invalid_argument("a reflective trigger needs a non-empty condition");
    const std::string prompt =
        fill_template(reflective_request_template(),
                      {{"claim", r_ex}, {"reasoning", r_in}, {"condition", condition}});
    ChatRequest request = build_text_request(settings, prompt);
    ReflectiveResult out;
    out.call.fingerprint = request.fingerprint();
    out.call.response = backend.complete(request);
    std::string text = normalize_whitespace(out.call.response.text);
    if (text.empty()) text = "Examine the visual input for: " + condition;
    out.trigger = make_reflective_trigger(std::move(text));
    return out;
}

}  // namespace skeptic

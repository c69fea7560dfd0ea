#pragma once

#include "skeptic/gateway.hpp"
#include "skeptic/logic_tree.hpp"
#include "skeptic/media.hpp"
#include "skeptic/parsing.hpp"
#include "skeptic/triggers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skeptic {

// Per-role request parameters. Model ids are opaque strings; sampling
// settings ride along on every request.
struct CallSettings {
    std::string model;
    double temperature = 0.0;
    int max_output_tokens = 700;
};

struct CallMeta {
    std::string fingerprint;
    ChatResponse response;
};

struct ParsedExternalOutput {
    std::vector<std::string> statements;
    std::string raw_text;
    CallMeta call;
};

struct ParsedInternalOutput {
    RawFlag flag = RawFlag::Invalid;
    std::string reasoning;
    std::optional<std::string> condition;  // present iff flag == Epoche
    std::string raw_text;
    std::vector<CallMeta> calls;  // two entries when the protocol retry fired
};

struct ReflectiveResult {
    Trigger trigger;
    CallMeta call;
};

// Builds the single-user-message request for a media prompt: the trigger
// text first, then one image part per frame.
ChatRequest build_media_request(const CallSettings& settings, const MediaInput& media,
                                const std::string& prompt_text);

ChatRequest build_text_request(const CallSettings& settings, const std::string& prompt_text);

// External Skeptic pass: one vision request, response segmented into
// indivisible statements.
ParsedExternalOutput external_reason(Backend& backend, const MediaInput& media,
                                     const Trigger& trigger, const CallSettings& settings);

// Internal Skeptic pass over one statement (text only). Protocol violations
// get one clarifying retry; a still-unusable reply downgrades to Invalid, so
// an epochē flag always carries its condition.
ParsedInternalOutput internal_verify(Backend& backend, const std::string& statement,
                                     const CallSettings& settings);

// Single-shot generation of the reflective trigger asking for more visual
// information about the missing condition.
ReflectiveResult generate_reflective_trigger(Backend& backend, const std::string& r_ex,
                                             const std::string& r_in,
                                             const std::string& condition,
                                             const CallSettings& settings);

}  // namespace skeptic

#include "skeptic/triggers.hpp"

#include "skeptic/errors.hpp"
#include "skeptic/hash.hpp"

#include <sstream>

namespace skeptic {

namespace {

const std::string kDefaultText =
    "You are shown a visual input. Describe what you see and reason about it step by step.\n"
    "Then decide whether the visual input is a real capture or AI-generated content.\n"
    "End your reply with one final line in exactly this form:\n"
    "ANSWER: REAL\n"
    "or\n"
    "ANSWER: AI";

const std::string kNeutralText =
    "You are shown a visual input that could be either a real capture or AI-generated\n"
    "content; both are equally plausible a priori. Examine it carefully and list the\n"
    "observations that are most informative about its authenticity.\n"
    "Write each observation as one numbered line (\"1.\", \"2.\", ...). Each line must\n"
    "contain exactly one self-contained observation about one visual element. Do not\n"
    "write anything before or after the list.";

const std::string kSkepticExternalText =
    "You are an External Skeptic examining a visual input. Do not trust it: treat it as\n"
    "deceptive generated content no matter how plausible it looks. Question the\n"
    "authenticity of everything you see and hunt for evidence of generation: physical\n"
    "impossibilities, inconsistent lighting or shadows, texture and boundary artifacts,\n"
    "temporal glitches, anatomical or geometric errors, implausible text or reflections.\n"
    "Write each suspicious finding as one numbered line (\"1.\", \"2.\", ...). Each line\n"
    "must contain exactly one self-contained, indivisible skeptical claim about one\n"
    "visual element. Do not write anything before or after the list.";

const std::string kInternalText =
    "You are an Internal Skeptic. You receive one skeptical claim that was raised\n"
    "against a visual input you cannot see. Treat the claim as invalid until proven:\n"
    "question its logic, its physical plausibility, and whether what it describes is\n"
    "actually evidence of AI generation rather than a natural occurrence.\n"
    "Reply using exactly this protocol:\n"
    "VERDICT: VALID    (the claim is logically sound evidence of generation)\n"
    "VERDICT: INVALID  (the claim is unsound, irrelevant, or describes something natural)\n"
    "VERDICT: EPOCHE   (judgment must be suspended until one missing fact is clarified)\n"
    "If and only if the verdict is EPOCHE, add one line:\n"
    "CONDITION: <the single sufficient condition that would settle the claim>\n"
    "Always end with one line:\n"
    "REASON: <the reasoning behind your verdict>";

const std::string kReflectiveRequestTemplate =
    "A skeptical claim about a visual input could not be judged because one sufficient\n"
    "condition is missing. Write one short instruction for a visual examiner, asking it\n"
    "to inspect the visual input for exactly that missing condition and to report what\n"
    "it finds as new skeptical claims. Reply with the instruction only.\n"
    "Skeptical claim: {claim}\n"
    "Verifier reasoning: {reasoning}\n"
    "Missing condition: {condition}";

const std::string kElementExtractionTemplate =
    "Extract the unique visual elements mentioned in the following text. A visual\n"
    "element is a concrete thing or visual property that can be seen (for example\n"
    "\"hands\", \"shadow direction\", \"background text\"). Write one element per numbered\n"
    "line (\"1.\", \"2.\", ...), each a short noun phrase, without duplicates and without\n"
    "any text before or after the list.\n"
    "Text:\n"
    "{text}";

const std::string kCatalogVersion = "v1";

}  // namespace

std::string to_string(TriggerKind kind) {
    switch (kind) {
        case TriggerKind::Default: return "default";
        case TriggerKind::Neutral: return "neutral";
        case TriggerKind::SkepticExternal: return "skeptic-external";
        case TriggerKind::Internal: return "internal";
        case TriggerKind::Reflective: return "reflective";
        case TriggerKind::Composed: return "composed";
    }
    return "unknown";
}

Trigger trigger_catalog(TriggerKind kind) {
    switch (kind) {
        case TriggerKind::Default: return {TriggerKind::Default, kDefaultText, "", ""};
        case TriggerKind::Neutral: return {TriggerKind::Neutral, kNeutralText, "", ""};
        case TriggerKind::SkepticExternal:
            return {TriggerKind::SkepticExternal, kSkepticExternalText, "", ""};
        case TriggerKind::Internal: return {TriggerKind::Internal, kInternalText, "", ""};
        default:
            throw ConfigError("trigger kind '" + to_string(kind) +
                              "' is not a catalog member");
    }
}

Trigger compose_external_trigger(const Trigger& base,
                                 const std::optional<Trigger>& reflective) {
    if (base.kind != TriggerKind::SkepticExternal && base.kind != TriggerKind::Neutral)
        throw ConfigError("composition base must be the skeptic-external or neutral trigger");
    if (!reflective) return base;
    if (reflective->kind != TriggerKind::Reflective)
        throw ConfigError("composition part must be a reflective trigger");
    Trigger out;
    out.kind = TriggerKind::Composed;
    out.base_text = base.text;
    out.reflective_text = reflective->text;
    out.text = base.text + std::string(kComposeSeparator) + reflective->text;
    return out;
}

Trigger make_reflective_trigger(std::string text) {
    return {TriggerKind::Reflective, std::move(text), "", ""};
}

const std::string& reflective_request_template() { return kReflectiveRequestTemplate; }
const std::string& element_extraction_template() { return kElementExtractionTemplate; }

std::string fill_template(std::string_view tpl,
                          const std::vector<std::pair<std::string, std::string>>& values) {
    std::string out(tpl);
    for (const auto& [key, value] : values) {
        const std::string needle = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(needle, pos)) != std::string::npos) {
            out.replace(pos, needle.size(), value);
            pos += value.size();
        }
    }
    return out;
}

const std::string& catalog_version() { return kCatalogVersion; }

std::string render_catalog() {
    std::ostringstream out;
    out << "# Trigger catalog, version " << kCatalogVersion << "\n"
        << "#\n"
        << "# Each block below is the exact prompt text sent to a model backend, keyed\n"
        << "# by kind and version. The internal trigger fixes the line protocol the\n"
        << "# output parsers rely on (VERDICT: / CONDITION: / REASON:); the external\n"
        << "# and neutral triggers fix the numbered-list protocol for statements.\n"
        << "# Editing any block changes the catalog hash recorded in traces.\n";
    auto block = [&out](const std::string& name, const std::string& text) {
        out << "\n[" << name << "@" << kCatalogVersion << "]\n" << text << "\n";
    };
    block("default", kDefaultText);
    block("neutral", kNeutralText);
    block("skeptic-external", kSkepticExternalText);
    block("internal", kInternalText);
    block("reflective-request", kReflectiveRequestTemplate);
    block("element-extraction", kElementExtractionTemplate);
    return out.str();
}

const std::string& catalog_hash() {
    static const std::string hash = sha256_hex(render_catalog());
    return hash;
}

}  // namespace skeptic

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skeptic {

enum class TriggerKind { Default, Neutral, SkepticExternal, Internal, Reflective, Composed };

std::string to_string(TriggerKind kind);

// A prompt text of a known kind. Composed triggers keep their two parts so
// the concatenation can be audited. Texts never change after construction.
struct Trigger {
    TriggerKind kind = TriggerKind::Default;
    std::string text;
    std::string base_text;        // Composed only
    std::string reflective_text;  // Composed only
};

// Canonical trigger text for a catalog kind (Default, Neutral,
// SkepticExternal or Internal). The texts are versioned constants; edits
// bump the catalog version.
Trigger trigger_catalog(TriggerKind kind);

// Separator used by trigger composition.
inline constexpr std::string_view kComposeSeparator = "\n\n";

// Base trigger unchanged when no reflective part is given; otherwise a
// Composed trigger "base <sep> reflective". The base must be SkepticExternal
// or Neutral, the reflective part Reflective.
Trigger compose_external_trigger(const Trigger& base,
                                 const std::optional<Trigger>& reflective);

Trigger make_reflective_trigger(std::string text);

// Prompt templates used by single-shot generation calls. Placeholders in
// {braces} are filled with fill_template.
const std::string& reflective_request_template();
const std::string& element_extraction_template();

std::string fill_template(std::string_view tpl,
                          const std::vector<std::pair<std::string, std::string>>& values);

// Version tag and the rendered human-readable catalog document shipped as
// data/trigger_catalog.txt. The hash pins traces and cache keys to exact
// prompt versions.
const std::string& catalog_version();
std::string render_catalog();
const std::string& catalog_hash();

}  // namespace skeptic

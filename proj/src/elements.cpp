#include "skeptic/elements.hpp"

#include "skeptic/parsing.hpp"
#include "skeptic/triggers.hpp"

#include <algorithm>
#include <stdexcept>

namespace skeptic {

std::string normalize_element(const std::string& phrase) {
    std::string out = normalize_whitespace(phrase);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    while (!out.empty() && (out.back() == '.' || out.back() == ',')) out.pop_back();
    return out;
}

ElementSet make_element_set(const std::vector<std::string>& phrases,
                            ElementSet::Source source) {
    ElementSet set;
    set.source = source;
    set.raw_count = static_cast<int>(phrases.size());
    for (const std::string& phrase : phrases) {
        std::string normalized = normalize_element(phrase);
        if (!normalized.empty()) set.elements.insert(std::move(normalized));
    }
    return set;
}

ElementSet extract_visual_elements(Backend& backend, const std::string& text,
                                   const CallSettings& settings,
                                   ElementSet::Source source) {
    if (text.empty()) throw std::invalid_argument("extraction needs a non-empty text");
    ChatRequest request = build_text_request(
        settings, fill_template(element_extraction_template(), {{"text", text}}));
    ChatResponse response = backend.complete(request);
    return make_element_set(parse_statement_list(response.text), source);
}

std::pair<double, double> element_recall_precision(const ElementSet& reasoning,
                                                   const ElementSet& ground_truth) {
    std::size_t intersection = 0;
    for (const std::string& element : ground_truth.elements)
        intersection += reasoning.elements.count(element);
    const double inter = static_cast<double>(intersection);
    const double recall =
        ground_truth.elements.empty() ? 0.0 : inter / ground_truth.elements.size();
    const double precision =
        reasoning.elements.empty() ? 0.0 : inter / reasoning.elements.size();
    return {recall, precision};
}

}  // namespace skeptic

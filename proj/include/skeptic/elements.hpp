#pragma once

#include "skeptic/agents.hpp"
#include "skeptic/gateway.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace skeptic {

// Unique visual elements extracted from a free-form text, normalized to
// case-folded single-spaced phrases.
struct ElementSet {
    enum class Source { Reasoning, GroundTruth };
    Source source = Source::Reasoning;
    std::set<std::string> elements;
    int raw_count = 0;  // phrases parsed before normalization and dedup
};

std::string normalize_element(const std::string& phrase);

ElementSet make_element_set(const std::vector<std::string>& phrases,
                            ElementSet::Source source);

// One extraction call against a text-only backend; the reply's list items
// become the normalized element set. An empty extraction is legal.
ElementSet extract_visual_elements(Backend& backend, const std::string& text,
                                   const CallSettings& settings,
                                   ElementSet::Source source = ElementSet::Source::Reasoning);

// (recall, precision) of the reasoning elements against the ground truth:
// recall = |E_GT ∩ E_R| / |E_GT|, precision = |E_GT ∩ E_R| / |E_R|, with
// 0/0 defined as 0. Exact match over normalized phrases.
std::pair<double, double> element_recall_precision(const ElementSet& reasoning,
                                                   const ElementSet& ground_truth);

}  // namespace skeptic

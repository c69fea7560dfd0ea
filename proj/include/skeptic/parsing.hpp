#pragma once

#include "skeptic/logic_tree.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skeptic {

// Collapses runs of whitespace to single spaces and trims the ends.
std::string normalize_whitespace(std::string_view text);

// Splits model output into statements. Numbered ("1.", "2)"), lettered
// ("a.", "B)") and bullet ("-", "*", "•") items are recognized; wrapped
// lines are merged into their item; duplicates (after whitespace
// normalization) are dropped. Output with no markers at all becomes one
// statement; blank input becomes none. Total function.
std::vector<std::string> parse_statement_list(std::string_view raw);

struct ParsedVerdict {
    RawFlag flag = RawFlag::Invalid;
    std::string reasoning;
    std::optional<std::string> condition;
};

// Finds a "VERDICT:" line (case-insensitive) mapping VALID/INVALID/EPOCHE to
// the flag, plus an optional "CONDITION:" line; everything else is the
// reasoning. Returns nullopt when no verdict line exists.
std::optional<ParsedVerdict> parse_verdict(std::string_view raw);

// Extracts the final "ANSWER: REAL|AI" line of a zero-shot reply. A missing
// or unreadable answer counts as REAL (the trust default).
Decision parse_zero_shot_answer(std::string_view raw);

}  // namespace skeptic

#include "skeptic/parsing.hpp"

#include <algorithm>
#include <cctype>

namespace skeptic {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string ascii_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

// If the line opens with a list marker, returns the text after it.
std::optional<std::string_view> strip_list_marker(std::string_view line) {
    std::string_view s = trim(line);
    if (s.empty()) return std::nullopt;
    // bullets: -, *, and U+2022
    if (s.front() == '-' || s.front() == '*') {
        std::string_view rest = s.substr(1);
        if (rest.empty() || is_space(rest.front())) return trim(rest);
        return std::nullopt;
    }
    if (s.size() >= 3 && s.substr(0, 3) == "\xe2\x80\xa2") return trim(s.substr(3));
    // numbered: 12. or 12)
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) {
        std::string_view rest = s.substr(i + 1);
        if (rest.empty() || is_space(rest.front())) return trim(rest);
    }
    // lettered: a. or B)
    if (std::isalpha(static_cast<unsigned char>(s.front())) && s.size() >= 2 &&
        (s[1] == '.' || s[1] == ')')) {
        std::string_view rest = s.substr(2);
        if (rest.empty() || is_space(rest.front())) return trim(rest);
    }
    return std::nullopt;
}

// Returns the value after "LABEL:" when the line carries that label,
// tolerating leading markdown decoration around the label.
std::optional<std::string_view> labeled_value(std::string_view line, std::string_view label) {
    std::string_view s = trim(line);
    while (!s.empty() && (s.front() == '*' || s.front() == '#' || s.front() == '>'))
        s.remove_prefix(1);
    s = trim(s);
    if (s.size() < label.size()) return std::nullopt;
    if (ascii_upper(s.substr(0, label.size())) != label) return std::nullopt;
    std::string_view rest = s.substr(label.size());
    rest = trim(rest);
    if (rest.empty() || rest.front() != ':') return std::nullopt;
    rest.remove_prefix(1);
    std::string_view value = trim(rest);
    while (!value.empty() && (value.front() == '*' || value.front() == '#'))
        value.remove_prefix(1);
    while (!value.empty() && (value.back() == '*' || value.back() == '#'))
        value.remove_suffix(1);
    return trim(value);
}

}  // namespace

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> parse_statement_list(std::string_view raw) {
    auto lines = split_lines(raw);
    bool any_marker =
        std::any_of(lines.begin(), lines.end(),
                    [](std::string_view l) { return strip_list_marker(l).has_value(); });
    if (!any_marker) {
        std::string whole = normalize_whitespace(raw);
        if (whole.empty()) return {};
        return {whole};
    }

    std::vector<std::string> items;
    std::string current;
    bool in_item = false;
    auto flush = [&]() {
        if (!in_item) return;
        std::string normalized = normalize_whitespace(current);
        if (!normalized.empty() &&
            std::find(items.begin(), items.end(), normalized) == items.end())
            items.push_back(std::move(normalized));
        current.clear();
        in_item = false;
    };
    for (std::string_view line : lines) {
        if (auto rest = strip_list_marker(line)) {
            flush();
            current.assign(rest->begin(), rest->end());
            in_item = true;
        } else if (in_item && !trim(line).empty()) {
            current.push_back(' ');
            current.append(trim(line));
        }
        // text before the first marker is preamble, not a statement
    }
    flush();
    return items;
}

std::optional<ParsedVerdict> parse_verdict(std::string_view raw) {
    auto lines = split_lines(raw);
    std::optional<RawFlag> flag;
    std::optional<std::string> condition;
    std::vector<std::string_view> reasoning_lines;
    for (std::string_view line : lines) {
        if (!flag) {
            if (auto value = labeled_value(line, "VERDICT")) {
                std::string token = ascii_upper(*value);
                token.erase(std::find_if(token.begin(), token.end(),
                                         [](unsigned char c) { return !std::isalpha(c); }),
                            token.end());
                if (token == "VALID")
                    flag = RawFlag::Valid;
                else if (token == "INVALID")
                    flag = RawFlag::Invalid;
                else if (token.starts_with("EPOCH"))
                    flag = RawFlag::Epoche;
                continue;
            }
        }
        if (!condition) {
            if (auto value = labeled_value(line, "CONDITION")) {
                if (!value->empty()) condition = std::string(*value);
                continue;
            }
        }
        reasoning_lines.push_back(line);
    }
    if (!flag) return std::nullopt;
    ParsedVerdict out;
    out.flag = *flag;
    out.condition = std::move(condition);
    std::string reasoning;
    for (std::string_view line : reasoning_lines) {
        std::string_view body = line;
        if (auto value = labeled_value(line, "REASON"))
            body = *value;
        else if (auto value2 = labeled_value(line, "REASONING"))
            body = *value2;
        if (trim(body).empty()) continue;
        if (!reasoning.empty()) reasoning.push_back('\n');
        reasoning.append(trim(body));
    }
    out.reasoning = std::move(reasoning);
    return out;
}

Decision parse_zero_shot_answer(std::string_view raw) {
    auto lines = split_lines(raw);
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        if (auto value = labeled_value(*it, "ANSWER")) {
            std::string token = ascii_upper(*value);
            if (token.starts_with("AI")) return Decision::AiGenerated;
            return Decision::Real;
        }
    }
    return Decision::Real;
}

}  // namespace skeptic

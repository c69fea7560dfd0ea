#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skeptic {

// Tree address: the root is the empty sequence ε, the j-th child of a node
// appends j (j >= 1). Ordering is element-wise on the path, so a parent
// sorts immediately before its subtree.
class UlamHarrisCode {
public:
    UlamHarrisCode() = default;  // root ε
    explicit UlamHarrisCode(std::vector<int> path);

    static UlamHarrisCode root() { return {}; }

    UlamHarrisCode child(int j) const;
    UlamHarrisCode parent() const;  // throws TreeError on the root

    int depth() const { return static_cast<int>(path_.size()); }
    bool is_root() const { return path_.empty(); }
    const std::vector<int>& path() const { return path_; }

    // Non-strict prefix test: every code is an ancestor-or-self of itself.
    bool is_prefix_of(const UlamHarrisCode& other) const;

    // Dotted rendering: "ε" for the root, else "2" or "2.1".
    std::string str() const;
    static std::optional<UlamHarrisCode> parse(std::string_view text);

    friend auto operator<=>(const UlamHarrisCode&, const UlamHarrisCode&) = default;

private:
    std::vector<int> path_;
};

inline const char* kRootCodeText = "\xce\xb5";  // "ε"

}  // namespace skeptic

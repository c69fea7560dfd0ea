#include "skeptic/ulam_harris.hpp"

#include "skeptic/errors.hpp"

#include <charconv>

namespace skeptic {

UlamHarrisCode::UlamHarrisCode(std::vector<int> path) : path_(std::move(path)) {
    for (int p : path_) {
        if (p < 1) throw TreeError("Ulam-Harris path entries must be >= 1");
    }
}

UlamHarrisCode UlamHarrisCode::child(int j) const {
    if (j < 1) throw TreeError("child index must be >= 1");
    std::vector<int> p = path_;
    p.push_back(j);
    UlamHarrisCode out;
    out.path_ = std::move(p);
    return out;
}

UlamHarrisCode UlamHarrisCode::parent() const {
    if (is_root()) throw TreeError("the root has no parent");
    UlamHarrisCode out;
    out.path_.assign(path_.begin(), path_.end() - 1);
    return out;
}

bool UlamHarrisCode::is_prefix_of(const UlamHarrisCode& other) const {
    if (path_.size() > other.path_.size()) return false;
    return std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::string UlamHarrisCode::str() const {
    if (is_root()) return kRootCodeText;
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(path_[i]);
    }
    return out;
}

std::optional<UlamHarrisCode> UlamHarrisCode::parse(std::string_view text) {
    if (text == kRootCodeText) return UlamHarrisCode::root();
    if (text.empty()) return std::nullopt;
    std::vector<int> path;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t dot = text.find('.', pos);
        std::string_view part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || value < 1) return std::nullopt;
        path.push_back(value);
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
        if (pos == text.size()) return std::nullopt;  // trailing dot
    }
    return UlamHarrisCode(std::move(path));
}

}  // namespace skeptic

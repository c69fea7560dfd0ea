#include "skeptic/manifest.hpp"

#include "skeptic/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

namespace skeptic {

using nlohmann::json;

std::string to_string(Label label) { return label == Label::Ai ? "ai" : "real"; }

Label label_from_string(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (text == "real") return Label::Real;
    if (text == "ai") return Label::Ai;
    throw ManifestError("unknown label token: " + text);
}

std::vector<SampleRecord> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ManifestError("cannot read manifest: " + path);
    const auto base_dir = std::filesystem::path(path).parent_path();
    std::vector<SampleRecord> records;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ManifestError(path + ": line " + std::to_string(line_no) +
                                " is not valid JSON");
        auto context = path + ": line " + std::to_string(line_no);
        if (!j.contains("id")) throw ManifestError(context + " is missing the id field");
        if (!j.contains("media")) throw ManifestError(context + " is missing the media field");
        if (!j.contains("label")) throw ManifestError(context + " is missing the label field");
        SampleRecord record;
        record.id = j.at("id").get<std::string>();
        if (!seen.insert(record.id).second)
            throw ManifestError(context + ": duplicate id '" + record.id + "'");
        std::filesystem::path media = j.at("media").get<std::string>();
        record.media_path = media.is_absolute() ? media.string() : (base_dir / media).string();
        record.label = label_from_string(j.at("label").get<std::string>());
        if (j.contains("reason") && !j.at("reason").is_null())
            record.reason = j.at("reason").get<std::string>();
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<SampleRecord> subsample(const std::vector<SampleRecord>& records,
                                    double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ManifestError("subsample fraction must lie in (0, 1]");
    if (fraction == 1.0 || records.empty()) return records;
    const auto count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(records.size())));
    std::vector<std::size_t> indices(records.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    // Hand-rolled Fisher-Yates: std::shuffle is implementation-defined, and
    // the selection must be reproducible across platforms.
    std::mt19937_64 rng(seed);
    for (std::size_t i = indices.size() - 1; i > 0; --i)
        std::swap(indices[i], indices[rng() % (i + 1)]);
    indices.resize(std::min(count, indices.size()));
    std::sort(indices.begin(), indices.end());
    std::vector<SampleRecord> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(records[i]);
    return out;
}

}  // namespace skeptic

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skeptic {

enum class Label { Real, Ai };
std::string to_string(Label label);
Label label_from_string(std::string text);  // throws ManifestError

// One labeled media sample of an evaluation manifest.
struct SampleRecord {
    std::string id;
    std::string media_path;
    Label label = Label::Real;
    std::optional<std::string> reason;  // ground-truth reason, when the set has one
};

// Line-delimited JSON manifest: {"id", "media", "label", "reason"?} per line.
// Relative media paths resolve against the manifest's directory. Duplicate
// ids, unknown labels and missing fields are errors.
std::vector<SampleRecord> load_manifest(const std::string& path);

// Deterministic subsample: the same fraction and seed always select the same
// records, returned in manifest order. fraction must lie in (0, 1].
std::vector<SampleRecord> subsample(const std::vector<SampleRecord>& records,
                                    double fraction, std::uint64_t seed);

}  // namespace skeptic

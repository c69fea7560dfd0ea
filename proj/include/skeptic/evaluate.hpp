#pragma once

#include "skeptic/elements.hpp"
#include "skeptic/engine.hpp"
#include "skeptic/manifest.hpp"
#include "skeptic/metrics.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace skeptic {

struct BackendPair {
    std::shared_ptr<Backend> external;
    std::shared_ptr<Backend> internal;
};

// Backends per sample; live runs return the same shared pair every time,
// replay runs may route samples to different transcripts.
using BackendFactory = std::function<BackendPair(const SampleRecord&)>;

// Media loading seam; the default reads from disk via load_media.
using MediaLoader = std::function<MediaInput(const SampleRecord&)>;

MediaLoader disk_media_loader(int frame_count);

struct SampleOutcome {
    std::string id;
    Label label = Label::Real;
    bool failed = false;
    std::string error;
    std::optional<Decision> decision;
    int valid_count = 0;
};

// Mean-per-sample and globally pooled element overlap, reported side by
// side (the aggregation choice is not obvious, so both are first-class).
struct ElementReport {
    int samples = 0;
    double mean_recall = 0.0;
    double mean_precision = 0.0;
    double pooled_recall = 0.0;
    double pooled_precision = 0.0;
};

struct EvalResult {
    ConfusionCounts counts;  // failed samples excluded
    Metrics metrics;
    std::vector<SampleOutcome> outcomes;       // manifest order
    std::vector<VerificationTrace> traces;     // manifest order, aligned
    std::vector<std::string> failures;         // "id: error"
};

// Runs the engine once per record with bounded parallelism and aggregates
// the confusion counts. Individual failures are collected, never fatal.
EvalResult evaluate(const BackendFactory& backends, const MediaLoader& media_loader,
                    const std::vector<SampleRecord>& records, const EngineConfig& config,
                    int max_parallel);

// Element recall/precision of each sample's depth-1 reasoning against its
// ground-truth reason, using one extraction backend for both sides. Samples
// without a reason or without a verdict are skipped.
ElementReport element_metrics(Backend& extractor, const CallSettings& settings,
                              const std::vector<SampleRecord>& records,
                              const std::vector<VerificationTrace>& traces);

}  // namespace skeptic

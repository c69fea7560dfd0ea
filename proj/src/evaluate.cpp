#include "skeptic/evaluate.hpp"

#include "skeptic/parallel.hpp"

namespace skeptic {

MediaLoader disk_media_loader(int frame_count) {
    return [frame_count](const SampleRecord& record) {
        return load_media(record.media_path, frame_count);
    };
}

EvalResult evaluate(const BackendFactory& backends, const MediaLoader& media_loader,
                    const std::vector<SampleRecord>& records, const EngineConfig& config,
                    int max_parallel) {
    config.validate();
    if (max_parallel < 1) throw ConfigError("max parallel must be >= 1");

    struct PerSample {
        SampleOutcome outcome;
        VerificationTrace trace;
    };
    auto results = parallel_map(
        records,
        [&](const SampleRecord& record) {
            PerSample out;
            out.outcome.id = record.id;
            out.outcome.label = record.label;
            try {
                MediaInput media = media_loader(record);
                BackendPair pair = backends(record);
                out.trace = run_verification(*pair.external, *pair.internal, media, config);
                if (out.trace.status != "ok") {
                    out.outcome.failed = true;
                    out.outcome.error = out.trace.error;
                } else {
                    out.outcome.decision = out.trace.verdict->decision;
                    out.outcome.valid_count = out.trace.verdict->valid_count;
                }
            } catch (const std::exception& e) {
                out.outcome.failed = true;
                out.outcome.error = e.what();
                out.trace.status = "failed";
                out.trace.error = e.what();
                out.trace.config = config;
                out.trace.media.source = record.media_path;
            }
            return out;
        },
        max_parallel);

    EvalResult result;
    for (PerSample& sample : results) {
        if (sample.outcome.failed)
            result.failures.push_back(sample.outcome.id + ": " + sample.outcome.error);
        else
            result.counts.add(sample.outcome.label, *sample.outcome.decision);
        result.outcomes.push_back(std::move(sample.outcome));
        result.traces.push_back(std::move(sample.trace));
    }
    result.metrics = compute_metrics(result.counts);
    return result;
}

namespace {

// The reasoning text R of a finished run: the depth-1 statements in order.
std::string initial_reasoning_text(const VerificationTrace& trace) {
    std::string out;
    for (const auto& [code, node] : trace.tree.nodes()) {
        if (code.depth() != 1) continue;
        if (!out.empty()) out += "\n";
        out += node.statement;
    }
    return out;
}

}  // namespace

ElementReport element_metrics(Backend& extractor, const CallSettings& settings,
                              const std::vector<SampleRecord>& records,
                              const std::vector<VerificationTrace>& traces) {
    if (records.size() != traces.size())
        throw ConfigError("element metrics need one trace per record");
    ElementReport report;
    double pooled_intersection = 0;
    double pooled_gt = 0;
    double pooled_reasoning = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SampleRecord& record = records[i];
        const VerificationTrace& trace = traces[i];
        if (!record.reason || record.reason->empty()) continue;
        if (trace.status != "ok" || !trace.verdict) continue;
        const std::string reasoning = initial_reasoning_text(trace);
        if (reasoning.empty()) continue;
        ElementSet e_r = extract_visual_elements(extractor, reasoning, settings,
                                                 ElementSet::Source::Reasoning);
        ElementSet e_gt = extract_visual_elements(extractor, *record.reason, settings,
                                                  ElementSet::Source::GroundTruth);
        auto [recall, precision] = element_recall_precision(e_r, e_gt);
        report.mean_recall += recall;
        report.mean_precision += precision;
        ++report.samples;
        for (const std::string& element : e_gt.elements)
            pooled_intersection += e_r.elements.count(element);
        pooled_gt += static_cast<double>(e_gt.elements.size());
        pooled_reasoning += static_cast<double>(e_r.elements.size());
    }
    if (report.samples > 0) {
        report.mean_recall /= report.samples;
        report.mean_precision /= report.samples;
    }
    report.pooled_recall = pooled_gt == 0 ? 0.0 : pooled_intersection / pooled_gt;
    report.pooled_precision =
        pooled_reasoning == 0 ? 0.0 : pooled_intersection / pooled_reasoning;
    return report;
}

}  // namespace skeptic

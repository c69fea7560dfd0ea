#pragma once

#include "skeptic/agents.hpp"
#include "skeptic/gateway.hpp"
#include "skeptic/logic_tree.hpp"
#include "skeptic/media.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skeptic {

// Full is the complete loop; ExternalOnly takes the skeptic's statements at
// face value; InternalOnly runs the verification loop over a neutral
// reasoner; ZeroShot is a single default-prompt call.
enum class EngineMode { Full, ExternalOnly, InternalOnly, ZeroShot };

std::string to_string(EngineMode mode);
EngineMode engine_mode_from_string(const std::string& text);

struct Sampling {
    double temperature = 0.0;
    int max_output_tokens = 700;
};

struct EngineConfig {
    int depth_bound = 3;
    int branch_cap = 5;
    int node_budget = 200;
    int threshold = 1;
    int max_parallel_calls = 4;
    EngineMode mode = EngineMode::Full;
    Sampling sampling;
    int frame_count = 8;  // video sampling
    std::string external_model = "external-skeptic";
    std::string internal_model = "internal-skeptic";

    void validate() const;  // throws ConfigError
};

struct MediaDescriptor {
    MediaKind kind = MediaKind::Image;
    std::string source;
    int frame_count = 0;
};

struct CallRecord {
    std::string purpose;  // "expand:2", "verify:2.1", "reflect:2", "zero-shot"
    std::string fingerprint;
    std::string origin;
    long latency_ms = 0;
    int attempts = 1;
    long prompt_tokens = 0;
    long completion_tokens = 0;
    bool sampling_params_omitted = false;
};

struct TraceAccounting {
    int backend_calls = 0;
    // Sum of backend-call latencies. Scripted calls report zero, which keeps
    // replayed traces byte-identical.
    long wall_ms = 0;
    bool sampling_params_omitted = false;
};

// One document per verification: the finished tree, the verdict, and the
// full backend-call audit trail.
struct VerificationTrace {
    EngineConfig config;
    std::string catalog_hash;
    MediaDescriptor media;
    ReasoningTree tree{1, 1, 1};
    std::optional<Verdict> verdict;
    std::vector<CallRecord> calls;
    TraceAccounting accounting;
    std::string status = "ok";  // "ok" | "failed"
    std::string error;
};

// Runs the verification loop for one media input. Backend failures after
// retries mark the trace failed and keep the partial tree; exhausted depth
// or node budgets are not failures (the tree resolves conservatively).
VerificationTrace run_verification(Backend& external, Backend& internal,
                                const MediaInput& media, const EngineConfig& config);

}  // namespace skeptic

#include "skeptic/engine.hpp"

#include "skeptic/parallel.hpp"
#include "skeptic/parsing.hpp"
#include "skeptic/triggers.hpp"

namespace skeptic {

std::string to_string(EngineMode mode) {
    switch (mode) {
        case EngineMode::Full: return "full";
        case EngineMode::ExternalOnly: return "external-only";
        case EngineMode::InternalOnly: return "internal-only";
        case EngineMode::ZeroShot: return "zero-shot";
    }
    return "unknown";
}

EngineMode engine_mode_from_string(const std::string& text) {
    if (text == "full") return EngineMode::Full;
    if (text == "external-only") return EngineMode::ExternalOnly;
    if (text == "internal-only") return EngineMode::InternalOnly;
    if (text == "zero-shot") return EngineMode::ZeroShot;
    throw ConfigError("unknown engine mode: " + text);
}

void EngineConfig::validate() const {
    if (mode != EngineMode::ZeroShot) {
        if (depth_bound < 1) throw ConfigError("depth bound must be >= 1");
        if (threshold < 1) throw ConfigError("threshold must be >= 1");
    }
    if (branch_cap < 1) throw ConfigError("branch cap must be >= 1");
    if (node_budget < 1) throw ConfigError("node budget must be >= 1");
    if (max_parallel_calls < 1) throw ConfigError("max parallel calls must be >= 1");
    if (frame_count < 1) throw ConfigError("frame count must be >= 1");
    if (sampling.max_output_tokens < 1) throw ConfigError("max output tokens must be >= 1");
}

namespace {

struct EngineRun {
    Backend& external;
    Backend& internal;
    const MediaInput& media;
    const EngineConfig& config;
    VerificationTrace trace;

    CallSettings external_settings() const {
        return {config.external_model, config.sampling.temperature,
                config.sampling.max_output_tokens};
    }
    CallSettings internal_settings() const {
        return {config.internal_model, config.sampling.temperature,
                config.sampling.max_output_tokens};
    }

    void record(const std::string& purpose, const CallMeta& meta) {
        CallRecord r;
        r.purpose = purpose;
        r.fingerprint = meta.fingerprint;
        r.origin = to_string(meta.response.origin);
        r.latency_ms = static_cast<long>(meta.response.latency.count());
        r.attempts = meta.response.attempts;
        r.prompt_tokens = meta.response.usage.prompt_tokens;
        r.completion_tokens = meta.response.usage.completion_tokens;
        r.sampling_params_omitted = meta.response.sampling_params_omitted;
        trace.calls.push_back(std::move(r));
    }

    // Verifies the given nodes (bounded parallelism), committing flags and
    // call records in code order.
    void verify_nodes(const std::vector<UlamHarrisCode>& codes) {
        auto results = parallel_map(
            codes,
            [this](const UlamHarrisCode& code) {
                return internal_verify(internal, trace.tree.node(code).statement,
                                       internal_settings());
            },
            config.max_parallel_calls);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            ParsedInternalOutput& out = results[i];
            for (const CallMeta& meta : out.calls) record("verify:" + codes[i].str(), meta);
            trace.tree.assign_raw_flag(codes[i], out.flag, out.reasoning, out.condition);
            trace.tree.node_mut(codes[i]).flag_call = out.calls.back().fingerprint;
        }
    }

    // Depth-1 expansion with the given base trigger; returns the new codes.
    std::vector<UlamHarrisCode> expand_root(const Trigger& base) {
        auto out = external_reason(external, media, base, external_settings());
        record("expand:" + UlamHarrisCode::root().str(), out.call);
        auto children = trace.tree.add_children(UlamHarrisCode::root(), out.statements);
        for (const auto& code : children)
            trace.tree.node_mut(code).statement_call = out.call.fingerprint;
        return children;
    }

    // One frontier wave: reflective trigger + re-expansion per epochē node
    // (parallel), committed in code order, then child verification.
    void expand_wave(const Trigger& base, const std::vector<UlamHarrisCode>& frontier) {
        struct WaveResult {
            ReflectiveResult reflective;
            ParsedExternalOutput expansion;
        };
        auto results = parallel_map(
            frontier,
            [this, &base](const UlamHarrisCode& code) {
                const LogicNode& node = trace.tree.node(code);
                WaveResult r{generate_reflective_trigger(internal, node.statement,
                                                         node.internal_reasoning,
                                                         node.condition.value_or(""),
                                                         internal_settings()),
                             {}};
                Trigger composed = compose_external_trigger(base, r.reflective.trigger);
                r.expansion = external_reason(external, media, composed, external_settings());
                return r;
            },
            config.max_parallel_calls);

        std::vector<UlamHarrisCode> fresh;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const UlamHarrisCode& code = frontier[i];
            WaveResult& r = results[i];
            record("reflect:" + code.str(), r.reflective.call);
            record("expand:" + code.str(), r.expansion.call);
            LogicNode& node = trace.tree.node_mut(code);
            node.reflective_trigger = r.reflective.trigger.text;
            node.reflective_call = r.reflective.call.fingerprint;
            auto children = trace.tree.add_children(code, r.expansion.statements);
            for (const auto& child : children)
                trace.tree.node_mut(child).statement_call = r.expansion.call.fingerprint;
            fresh.insert(fresh.end(), children.begin(), children.end());
        }
        verify_nodes(fresh);
    }

    // Full and InternalOnly share this loop; they differ in the base trigger.
    void run_loop(const Trigger& base) {
        verify_nodes(expand_root(base));
        while (true) {
            auto frontier = trace.tree.expandable_frontier();
            if (frontier.empty()) break;
            if (trace.tree.statement_count() >= trace.tree.node_budget()) {
                // Budget spent: seal the remaining epochē nodes childless so
                // they resolve Invalid, and issue no further calls.
                for (const auto& code : frontier) trace.tree.add_children(code, {});
                continue;
            }
            expand_wave(base, frontier);
        }
        trace.tree.resolve();
        trace.verdict = trace.tree.decide(config.threshold);
    }

    void run_external_only() {
        auto children = expand_root(trigger_catalog(TriggerKind::SkepticExternal));
        for (const auto& code : children)
            trace.tree.assign_raw_flag(code, RawFlag::Valid,
                                       "accepted unverified (external-only mode)",
                                       std::nullopt);
        trace.tree.resolve();
        // Positive iff the skeptic produced any statement at all.
        trace.verdict = trace.tree.decide(1);
    }

    void run_zero_shot() {
        if (media.frames.empty()) throw MediaError("media input carries no frames");
        ChatRequest request = build_media_request(external_settings(), media,
                                                  trigger_catalog(TriggerKind::Default).text);
        CallMeta meta;
        meta.fingerprint = request.fingerprint();
        meta.response = external.complete(request);
        record("zero-shot", meta);
        Decision answer = parse_zero_shot_answer(meta.response.text);
        std::string statement = normalize_whitespace(meta.response.text);
        if (statement.empty()) statement = "(empty reply)";
        auto children = trace.tree.add_children(UlamHarrisCode::root(), {statement});
        trace.tree.assign_raw_flag(children[0],
                                   answer == Decision::AiGenerated ? RawFlag::Valid
                                                                   : RawFlag::Invalid,
                                   "zero-shot answer", std::nullopt);
        LogicNode& node = trace.tree.node_mut(children[0]);
        node.statement_call = meta.fingerprint;
        node.flag_call = meta.fingerprint;
        trace.tree.resolve();
        trace.verdict = trace.tree.decide(1);
    }
};

}  // namespace

VerificationTrace run_verification(Backend& external, Backend& internal,
                                const MediaInput& media, const EngineConfig& config) {
    config.validate();
    EngineRun run{external, internal, media, config, {}};
    run.trace.config = config;
    run.trace.catalog_hash = catalog_hash();
    run.trace.media = {media.kind, media.source, static_cast<int>(media.frames.size())};
    run.trace.tree = config.mode == EngineMode::ZeroShot
                         ? ReasoningTree(1, 1, 1)
                         : ReasoningTree(config.depth_bound, config.branch_cap,
                                         config.node_budget);
    try {
        switch (config.mode) {
            case EngineMode::Full:
                run.run_loop(trigger_catalog(TriggerKind::SkepticExternal));
                break;
            case EngineMode::InternalOnly:
                run.run_loop(trigger_catalog(TriggerKind::Neutral));
                break;
            case EngineMode::ExternalOnly: run.run_external_only(); break;
            case EngineMode::ZeroShot: run.run_zero_shot(); break;
        }
    } catch (const GatewayError& e) {
        run.trace.status = "failed";
        run.trace.error = e.what();
    }
    for (const CallRecord& call : run.trace.calls) {
        run.trace.accounting.wall_ms += call.latency_ms;
        run.trace.accounting.sampling_params_omitted |= call.sampling_params_omitted;
    }
    run.trace.accounting.backend_calls = static_cast<int>(run.trace.calls.size());
    return run.trace;
}

}  // namespace skeptic

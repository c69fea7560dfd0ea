#include "skeptic/trace_io.hpp"

#include "skeptic/errors.hpp"

#include <fstream>

namespace skeptic {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "skeptic-trace/v1";

json config_to_json(const EngineConfig& c) {
    return json{{"branch_cap", c.branch_cap},
                {"depth_bound", c.depth_bound},
                {"external_model", c.external_model},
                {"frame_count", c.frame_count},
                {"internal_model", c.internal_model},
                {"max_output_tokens", c.sampling.max_output_tokens},
                {"max_parallel_calls", c.max_parallel_calls},
                {"mode", to_string(c.mode)},
                {"node_budget", c.node_budget},
                {"temperature", c.sampling.temperature},
                {"threshold", c.threshold}};
}

EngineConfig config_from_json(const json& j) {
    EngineConfig c;
    c.branch_cap = j.at("branch_cap").get<int>();
    c.depth_bound = j.at("depth_bound").get<int>();
    c.external_model = j.at("external_model").get<std::string>();
    c.frame_count = j.at("frame_count").get<int>();
    c.internal_model = j.at("internal_model").get<std::string>();
    c.sampling.max_output_tokens = j.at("max_output_tokens").get<int>();
    c.max_parallel_calls = j.at("max_parallel_calls").get<int>();
    c.mode = engine_mode_from_string(j.at("mode").get<std::string>());
    c.node_budget = j.at("node_budget").get<int>();
    c.sampling.temperature = j.at("temperature").get<double>();
    c.threshold = j.at("threshold").get<int>();
    return c;
}

json node_to_json(const LogicNode& n) {
    json j = json::object();
    j["child_count"] = n.child_count;
    j["expanded"] = n.expanded;
    if (!n.code.is_root()) j["statement"] = n.statement;
    if (n.raw_flag) j["raw_flag"] = flag_to_int(*n.raw_flag);
    if (n.resolved_flag) j["resolved_flag"] = flag_to_int(*n.resolved_flag);
    if (!n.internal_reasoning.empty()) j["internal_reasoning"] = n.internal_reasoning;
    if (n.condition) j["condition"] = *n.condition;
    if (n.reflective_trigger) j["reflective_trigger"] = *n.reflective_trigger;
    json calls = json::object();
    if (n.statement_call) calls["statement"] = *n.statement_call;
    if (n.flag_call) calls["flag"] = *n.flag_call;
    if (n.reflective_call) calls["reflective"] = *n.reflective_call;
    if (!calls.empty()) j["calls"] = std::move(calls);
    return j;
}

LogicNode node_from_json(const UlamHarrisCode& code, const json& j) {
    LogicNode n;
    n.code = code;
    n.child_count = j.at("child_count").get<int>();
    n.expanded = j.at("expanded").get<bool>();
    if (j.contains("statement")) n.statement = j.at("statement").get<std::string>();
    if (j.contains("raw_flag")) n.raw_flag = flag_from_int(j.at("raw_flag").get<int>());
    if (j.contains("resolved_flag"))
        n.resolved_flag = flag_from_int(j.at("resolved_flag").get<int>());
    if (j.contains("internal_reasoning"))
        n.internal_reasoning = j.at("internal_reasoning").get<std::string>();
    if (j.contains("condition")) n.condition = j.at("condition").get<std::string>();
    if (j.contains("reflective_trigger"))
        n.reflective_trigger = j.at("reflective_trigger").get<std::string>();
    if (j.contains("calls")) {
        const json& calls = j.at("calls");
        if (calls.contains("statement"))
            n.statement_call = calls.at("statement").get<std::string>();
        if (calls.contains("flag")) n.flag_call = calls.at("flag").get<std::string>();
        if (calls.contains("reflective"))
            n.reflective_call = calls.at("reflective").get<std::string>();
    }
    return n;
}

json verdict_to_json(const Verdict& v) {
    json chains = json::object();
    for (const auto& [initial, chain] : v.chains) {
        json path = json::array();
        for (const auto& code : chain) path.push_back(code.str());
        chains[initial.str()] = std::move(path);
    }
    json valid_initial = json::array();
    for (const auto& code : v.valid_initial) valid_initial.push_back(code.str());
    return json{{"chains", std::move(chains)},
                {"decision", to_string(v.decision)},
                {"threshold", v.threshold},
                {"valid_count", v.valid_count},
                {"valid_initial", std::move(valid_initial)}};
}

UlamHarrisCode parse_code(const std::string& text) {
    auto code = UlamHarrisCode::parse(text);
    if (!code) throw TreeError("bad node key in trace: " + text);
    return *code;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.threshold = j.at("threshold").get<int>();
    v.valid_count = j.at("valid_count").get<int>();
    const std::string decision = j.at("decision").get<std::string>();
    if (decision == "AI_GENERATED")
        v.decision = Decision::AiGenerated;
    else if (decision == "REAL")
        v.decision = Decision::Real;
    else
        throw TreeError("bad decision in trace: " + decision);
    for (const json& code : j.at("valid_initial"))
        v.valid_initial.push_back(parse_code(code.get<std::string>()));
    for (const auto& [key, chain] : j.at("chains").items()) {
        std::vector<UlamHarrisCode> path;
        for (const json& code : chain) path.push_back(parse_code(code.get<std::string>()));
        v.chains.emplace(parse_code(key), std::move(path));
    }
    return v;
}

json call_to_json(const CallRecord& c) {
    return json{{"attempts", c.attempts},
                {"completion_tokens", c.completion_tokens},
                {"fingerprint", c.fingerprint},
                {"latency_ms", c.latency_ms},
                {"origin", c.origin},
                {"prompt_tokens", c.prompt_tokens},
                {"purpose", c.purpose},
                {"sampling_params_omitted", c.sampling_params_omitted}};
}

CallRecord call_from_json(const json& j) {
    CallRecord c;
    c.attempts = j.at("attempts").get<int>();
    c.completion_tokens = j.at("completion_tokens").get<long>();
    c.fingerprint = j.at("fingerprint").get<std::string>();
    c.latency_ms = j.at("latency_ms").get<long>();
    c.origin = j.at("origin").get<std::string>();
    c.prompt_tokens = j.at("prompt_tokens").get<long>();
    c.purpose = j.at("purpose").get<std::string>();
    c.sampling_params_omitted = j.at("sampling_params_omitted").get<bool>();
    return c;
}

}  // namespace

json trace_to_json(const VerificationTrace& trace) {
    json nodes = json::object();
    for (const auto& [code, node] : trace.tree.nodes())
        nodes[code.str()] = node_to_json(node);
    json j{{"accounting",
            json{{"backend_calls", trace.accounting.backend_calls},
                 {"sampling_params_omitted", trace.accounting.sampling_params_omitted},
                 {"wall_ms", trace.accounting.wall_ms}}},
           {"catalog_hash", trace.catalog_hash},
           {"config", config_to_json(trace.config)},
           {"media",
            json{{"frame_count", trace.media.frame_count},
                 {"kind", to_string(trace.media.kind)},
                 {"source", trace.media.source}}},
           {"nodes", std::move(nodes)},
           {"schema", kSchema},
           {"status", trace.status}};
    json calls = json::array();
    for (const CallRecord& call : trace.calls) calls.push_back(call_to_json(call));
    j["calls"] = std::move(calls);
    if (trace.verdict) j["verdict"] = verdict_to_json(*trace.verdict);
    if (!trace.error.empty()) j["error"] = trace.error;
    return j;
}

VerificationTrace trace_from_json(const json& j) {
    if (j.value("schema", "") != kSchema)
        throw TreeError("unsupported trace schema: " + j.value("schema", "<missing>"));
    VerificationTrace trace;
    trace.config = config_from_json(j.at("config"));
    trace.catalog_hash = j.at("catalog_hash").get<std::string>();
    const json& media = j.at("media");
    trace.media.frame_count = media.at("frame_count").get<int>();
    trace.media.kind =
        media.at("kind").get<std::string>() == "video" ? MediaKind::Video : MediaKind::Image;
    trace.media.source = media.at("source").get<std::string>();
    trace.status = j.at("status").get<std::string>();
    if (j.contains("error")) trace.error = j.at("error").get<std::string>();
    if (j.contains("verdict")) trace.verdict = verdict_from_json(j.at("verdict"));
    for (const json& call : j.at("calls")) trace.calls.push_back(call_from_json(call));
    const json& accounting = j.at("accounting");
    trace.accounting.backend_calls = accounting.at("backend_calls").get<int>();
    trace.accounting.wall_ms = accounting.at("wall_ms").get<long>();
    trace.accounting.sampling_params_omitted =
        accounting.at("sampling_params_omitted").get<bool>();

    std::vector<LogicNode> nodes;
    for (const auto& [key, node] : j.at("nodes").items())
        nodes.push_back(node_from_json(parse_code(key), node));
    const bool resolved = trace.verdict.has_value();
    const bool zero_shot = trace.config.mode == EngineMode::ZeroShot;
    trace.tree = ReasoningTree::restore(zero_shot ? 1 : trace.config.depth_bound,
                                        zero_shot ? 1 : trace.config.branch_cap,
                                        zero_shot ? 1 : trace.config.node_budget,
                                        std::move(nodes), resolved);
    return trace;
}

std::string trace_to_string(const VerificationTrace& trace) {
    return trace_to_json(trace).dump(2) + "\n";
}

void write_trace(const VerificationTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw Error("cannot write trace file: " + path);
    out << trace_to_string(trace);
}

VerificationTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw Error("cannot read trace file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error("trace file is not valid JSON: " + path);
    return trace_from_json(j);
}

}  // namespace skeptic

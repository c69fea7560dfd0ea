#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skeptic/engine.hpp"
#include "skeptic/trace_io.hpp"
#include "support/doubles.hpp"

#include <algorithm>

using namespace skeptic;
using namespace skeptic::testing;

namespace {

MediaInput fake_image(const std::string& name = "sample.png") {
    MediaInput media;
    media.kind = MediaKind::Image;
    media.source = name;
    media.frames.push_back({"image/png", "\x89PNG bytes of " + name});
    return media;
}

ScriptPlan mixed_plan() {
    // A valid, B invalid, C epoche resolved valid through one child.
    ScriptPlan plan;
    plan.initial = {"stmt A", "stmt B", "stmt C"};
    plan.verdicts["stmt A"] = valid_reply("physically impossible shadow");
    plan.verdicts["stmt B"] = invalid_reply("perfectly normal bokeh");
    plan.verdicts["stmt C"] = epoche_reply("lighting direction");
    plan.expansions["stmt C"] = {"stmt C1"};
    plan.verdicts["stmt C1"] = valid_reply("confirmed inconsistency");
    return plan;
}

int count_calls(const VerificationTrace& trace, const std::string& prefix) {
    return static_cast<int>(
        std::count_if(trace.calls.begin(), trace.calls.end(),
                      [&prefix](const CallRecord& c) { return c.purpose.starts_with(prefix); }));
}

}  // namespace

TEST_CASE("full mode: mixed fixture verifies to m=2 and AI_GENERATED") {
    CallbackBackend backend(make_plan_handler(mixed_plan()));
    EngineConfig config;
    VerificationTrace trace = run_verification(backend, backend, fake_image(), config);

    CHECK(trace.status == "ok");
    REQUIRE(trace.verdict.has_value());
    CHECK(trace.verdict->valid_count == 2);
    CHECK(trace.verdict->decision == Decision::AiGenerated);
    CHECK(trace.verdict->valid_initial.size() == 2);

    const auto c3 = UlamHarrisCode({3});
    const LogicNode& node3 = trace.tree.node(c3);
    CHECK(node3.raw_flag == RawFlag::Epoche);
    CHECK(node3.resolved_flag == RawFlag::Valid);
    CHECK(node3.condition == "lighting direction");
    REQUIRE(node3.reflective_trigger.has_value());
    CHECK(node3.reflective_trigger->find("Probe further") != std::string::npos);
    CHECK(trace.tree.node(UlamHarrisCode({3, 1})).resolved_flag == RawFlag::Valid);

    SUBCASE("chains back-trace through the deepest valid descendant") {
        auto chain = trace.verdict->chains.at(c3);
        REQUIRE(chain.size() == 3);
        CHECK(chain[0] == UlamHarrisCode({3, 1}));
        CHECK(chain[2] == UlamHarrisCode::root());
    }
    SUBCASE("every node references the calls that produced it") {
        for (const auto& [code, node] : trace.tree.nodes()) {
            if (code.is_root()) continue;
            REQUIRE(node.statement_call.has_value());
            REQUIRE(node.flag_call.has_value());
            auto in_calls = [&trace](const std::string& fp) {
                return std::any_of(trace.calls.begin(), trace.calls.end(),
                                   [&fp](const CallRecord& c) { return c.fingerprint == fp; });
            };
            CHECK(in_calls(*node.statement_call));
            CHECK(in_calls(*node.flag_call));
        }
    }
    SUBCASE("call log is committed in code order") {
        std::vector<std::string> purposes;
        for (const auto& call : trace.calls) purposes.push_back(call.purpose);
        CHECK(purposes == std::vector<std::string>{
                              "expand:\xce\xb5", "verify:1", "verify:2", "verify:3",
                              "reflect:3", "expand:3", "verify:3.1"});
    }
    SUBCASE("m=2 against M=2 is still positive, M=3 is REAL") {
        EngineConfig strict = config;
        strict.threshold = 3;
        CallbackBackend again(make_plan_handler(mixed_plan()));
        auto t2 = run_verification(again, again, fake_image(), strict);
        CHECK(t2.verdict->decision == Decision::Real);
    }
}

TEST_CASE("full mode: all-invalid verdicts yield REAL with empty Y") {
    ScriptPlan plan;
    plan.initial = {"a", "b"};
    plan.verdicts["a"] = invalid_reply();
    plan.verdicts["b"] = invalid_reply();
    CallbackBackend backend(make_plan_handler(plan));
    auto trace = run_verification(backend, backend, fake_image(), {});
    CHECK(trace.verdict->valid_count == 0);
    CHECK(trace.verdict->decision == Decision::Real);
    CHECK(trace.verdict->valid_initial.empty());
}

TEST_CASE("adversarial all-epoche script stays within depth 3 and decides REAL") {
    RequestLog log;
    CallbackBackend::Handler handler = [&log](const ChatRequest& r) {
        log.note(r);
        const std::string text = r.joined_text();
        if (text.find("Skeptical claim under review:\n") != std::string::npos)
            return epoche_reply("yet another missing fact");
        if (text.find("Missing condition:") != std::string::npos)
            return std::string("Probe further: anything");
        return numbered({"x1", "x2", "x3"});
    };
    CallbackBackend backend(handler);
    EngineConfig config;
    config.branch_cap = 3;
    VerificationTrace trace = run_verification(backend, backend, fake_image(), config);

    CHECK(trace.status == "ok");
    CHECK(trace.verdict->valid_count == 0);
    CHECK(trace.verdict->decision == Decision::Real);

    int max_depth = 0;
    int epoche_count = 0;
    for (const auto& [code, node] : trace.tree.nodes()) {
        max_depth = std::max(max_depth, code.depth());
        if (node.raw_flag == RawFlag::Epoche) ++epoche_count;
    }
    CHECK(max_depth == 3);
    CHECK(trace.tree.statement_count() == 3 + 9 + 27);

    SUBCASE("no expansion call targets a depth-3 node") {
        for (const auto& call : trace.calls) {
            if (!call.purpose.starts_with("expand:")) continue;
            auto code = UlamHarrisCode::parse(call.purpose.substr(7));
            REQUIRE(code.has_value());
            CHECK(code->depth() < 3);
        }
    }
    SUBCASE("call accounting stays within the budget bound") {
        int nodes = trace.tree.statement_count();
        CHECK(trace.accounting.backend_calls ==
              static_cast<int>(trace.calls.size()));
        CHECK(trace.accounting.backend_calls <= 1 + nodes + 2 * epoche_count);
        // exactly: 1 root expansion + 39 verifies + 12 expanded nodes * 2
        CHECK(trace.accounting.backend_calls == 1 + 39 + 2 * 12);
    }
}

TEST_CASE("node budget exhaustion seals the frontier without extra calls") {
    CallbackBackend::Handler handler = [](const ChatRequest& r) {
        const std::string text = r.joined_text();
        if (text.find("Skeptical claim under review:\n") != std::string::npos)
            return epoche_reply("missing fact");
        if (text.find("Missing condition:") != std::string::npos)
            return std::string("Probe further: anything");
        return numbered({"x1", "x2", "x3"});
    };
    CallbackBackend backend(handler);
    EngineConfig config;
    config.branch_cap = 3;
    config.node_budget = 4;
    VerificationTrace trace = run_verification(backend, backend, fake_image(), config);

    CHECK(trace.status == "ok");  // budget exhaustion is not an error
    CHECK(trace.tree.statement_count() == 4);
    CHECK(trace.verdict->decision == Decision::Real);
    for (const auto& [code, node] : trace.tree.nodes())
        if (node.raw_flag == RawFlag::Epoche) CHECK(node.resolved_flag == RawFlag::Invalid);
}

TEST_CASE("mode containment: zero-shot and external-only issue exactly one call") {
    SUBCASE("zero-shot, AI answer") {
        ScriptPlan plan;
        plan.zero_shot_reply = "The texture repeats unnaturally.\nANSWER: AI";
        CallbackBackend backend(make_plan_handler(plan));
        EngineConfig config;
        config.mode = EngineMode::ZeroShot;
        auto trace = run_verification(backend, backend, fake_image(), config);
        CHECK(trace.calls.size() == 1);
        CHECK(trace.calls[0].purpose == "zero-shot");
        CHECK(trace.verdict->decision == Decision::AiGenerated);
        CHECK(trace.verdict->valid_count == 1);
    }
    SUBCASE("zero-shot, missing answer line counts as REAL") {
        ScriptPlan plan;
        plan.zero_shot_reply = "I cannot commit to a structured reply.";
        CallbackBackend backend(make_plan_handler(plan));
        EngineConfig config;
        config.mode = EngineMode::ZeroShot;
        auto trace = run_verification(backend, backend, fake_image(), config);
        CHECK(trace.calls.size() == 1);
        CHECK(trace.verdict->decision == Decision::Real);
    }
    SUBCASE("external-only is positive on any statement, without verification") {
        CallbackBackend backend(make_plan_handler(mixed_plan()));
        EngineConfig config;
        config.mode = EngineMode::ExternalOnly;
        config.threshold = 2;  // ignored: any statement is positive
        auto trace = run_verification(backend, backend, fake_image(), config);
        CHECK(trace.calls.size() == 1);
        CHECK(trace.verdict->decision == Decision::AiGenerated);
        CHECK(trace.verdict->valid_count == 3);
        CHECK(count_calls(trace, "verify:") == 0);
    }
    SUBCASE("external-only with no statements trusts the input") {
        ScriptPlan plan;  // empty initial list
        CallbackBackend backend(make_plan_handler(plan));
        EngineConfig config;
        config.mode = EngineMode::ExternalOnly;
        auto trace = run_verification(backend, backend, fake_image(), config);
        CHECK(trace.verdict->decision == Decision::Real);
    }
}

TEST_CASE("internal-only mode runs the loop over the neutral trigger") {
    RequestLog log;
    ScriptPlan plan;
    plan.initial = {"n1", "n2"};
    plan.verdicts["n1"] = epoche_reply("close-up of the edge");
    plan.verdicts["n2"] = invalid_reply();
    plan.expansions["n1"] = {"n1a"};
    plan.verdicts["n1a"] = valid_reply();
    CallbackBackend backend(make_plan_handler(plan, &log));
    EngineConfig config;
    config.mode = EngineMode::InternalOnly;
    auto trace = run_verification(backend, backend, fake_image(), config);

    CHECK(trace.verdict->valid_count == 1);
    const std::string first_expand =
        log.text_for(trace.calls.at(0).fingerprint);
    CHECK(first_expand.find("both are equally plausible") != std::string::npos);
    CHECK(first_expand.find("External Skeptic") == std::string::npos);
}

TEST_CASE("composed triggers carry the stored reflective text as suffix") {
    RequestLog log;
    CallbackBackend backend(make_plan_handler(mixed_plan(), &log));
    auto trace = run_verification(backend, backend, fake_image(), {});
    const std::string base = trigger_catalog(TriggerKind::SkepticExternal).text;
    int audited = 0;
    for (const auto& [code, node] : trace.tree.nodes()) {
        if (!node.expanded || code.is_root()) continue;
        REQUIRE(node.reflective_trigger.has_value());
        for (const auto& call : trace.calls) {
            if (call.purpose != "expand:" + code.str()) continue;
            const std::string request_text = log.text_for(call.fingerprint);
            CHECK(request_text.starts_with(base));
            CHECK(request_text.ends_with(*node.reflective_trigger));
            CHECK(request_text ==
                  base + std::string(kComposeSeparator) + *node.reflective_trigger);
            ++audited;
        }
    }
    CHECK(audited == 1);
}

TEST_CASE("determinism: identical runs produce byte-identical traces") {
    ScriptPlan plan;
    plan.initial = {"p", "q", "r", "s"};
    plan.verdicts["p"] = epoche_reply("one");
    plan.verdicts["q"] = epoche_reply("two");
    plan.verdicts["r"] = valid_reply();
    plan.verdicts["s"] = invalid_reply();
    plan.expansions["p"] = {"p1", "p2"};
    plan.expansions["q"] = {"q1"};
    plan.verdicts["p1"] = invalid_reply();
    plan.verdicts["p2"] = valid_reply();
    plan.verdicts["q1"] = epoche_reply("three");
    plan.expansions["q1"] = {};
    EngineConfig config;
    config.max_parallel_calls = 4;  // exercise the worker pool

    auto run_once = [&] {
        CallbackBackend backend(make_plan_handler(plan));
        return trace_to_string(run_verification(backend, backend, fake_image(), config));
    };
    std::string first = run_once();
    CHECK_FALSE(first.empty());
    for (int i = 0; i < 5; ++i) CHECK(run_once() == first);
}

TEST_CASE("backend exhaustion marks the trace failed with a partial tree") {
    ScriptPlan plan = mixed_plan();
    CallbackBackend::Handler handler =
        [inner = make_plan_handler(plan)](const ChatRequest& r) -> std::string {
            if (r.joined_text().find("stmt B") != std::string::npos &&
                r.joined_text().find("under review") != std::string::npos)
                throw TransportError("gateway gave up after retries");
            return inner(r);
        };
    CallbackBackend backend(std::move(handler));
    auto trace = run_verification(backend, backend, fake_image(), {});
    CHECK(trace.status == "failed");
    CHECK(trace.error.find("gave up") != std::string::npos);
    CHECK_FALSE(trace.verdict.has_value());
    CHECK(trace.tree.statement_count() == 3);  // depth-1 statements landed
}

TEST_CASE("engine validates its configuration") {
    CallbackBackend backend([](const ChatRequest&) { return ""; });
    EngineConfig bad;
    bad.depth_bound = 0;
    CHECK_THROWS_AS(run_verification(backend, backend, fake_image(), bad), ConfigError);
    EngineConfig bad2;
    bad2.threshold = 0;
    CHECK_THROWS_AS(run_verification(backend, backend, fake_image(), bad2), ConfigError);
    // zero-shot ignores depth/threshold
    EngineConfig zs;
    zs.mode = EngineMode::ZeroShot;
    zs.depth_bound = 0;
    zs.threshold = 0;
    CHECK_NOTHROW(run_verification(backend, backend, fake_image(), zs));
}

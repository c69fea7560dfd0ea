// skeptic: command-line front end for the authenticity-verification engine.

#include <CLI11.hpp>

#include "skeptic/engine.hpp"
#include "skeptic/evaluate.hpp"
#include "skeptic/live_backend.hpp"
#include "skeptic/manifest.hpp"
#include "skeptic/trace_io.hpp"
#include "skeptic/triggers.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace skeptic;

namespace {

// Exit codes: 0 ok, 1 unexpected, 2 config, 3 media, 4 backend, 5 manifest,
// 6 trace. Verdicts never affect the exit code.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMedia = 3;
constexpr int kExitBackend = 4;
constexpr int kExitManifest = 5;
constexpr int kExitTrace = 6;

struct Options {
    std::string mode = "full";
    int depth = 3;
    int branch_cap = 5;
    int node_budget = 200;
    int threshold = 1;
    int max_parallel = 4;
    int frames = 8;
    double temperature = 0.0;
    int max_output_tokens = 700;
    std::string transcript;
    std::string record_path;
    std::string out_dir = "skeptic-out";
    bool cache = false;

    std::string media_path;     // verify / record
    std::string manifest_path;  // evaluate / ablate / sweep
    double fraction = 1.0;
    std::uint64_t seed = 0;
    bool elements = false;
    std::string traces_dir;  // sweep
    int m_min = 1;
    int m_max = 0;  // 0: derive from the stored traces
    std::string trace_path;  // inspect
    std::string config_file;
};

void add_engine_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--mode", opt.mode, "full | external-only | internal-only | zero-shot")
        ->check(CLI::IsMember({"full", "external-only", "internal-only", "zero-shot"}))
        ->capture_default_str();
    cmd->add_option("--depth", opt.depth, "reasoning tree depth bound N")
        ->capture_default_str();
    cmd->add_option("--branch-cap", opt.branch_cap, "max children per expansion")
        ->capture_default_str();
    cmd->add_option("--node-budget", opt.node_budget, "global cap on statement nodes")
        ->capture_default_str();
    cmd->add_option("--threshold", opt.threshold, "decision threshold M")
        ->capture_default_str();
    cmd->add_option("--max-parallel", opt.max_parallel, "parallel backend calls / workers")
        ->capture_default_str();
    cmd->add_option("--frames", opt.frames, "frames sampled per video")
        ->capture_default_str();
    cmd->add_option("--temperature", opt.temperature, "sampling temperature")
        ->capture_default_str();
    cmd->add_option("--max-output-tokens", opt.max_output_tokens, "output token cap")
        ->capture_default_str();
    cmd->add_option("--transcript", opt.transcript, "replay transcript instead of live calls");
    cmd->add_option("--record", opt.record_path, "tee every backend call to this transcript");
    cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    cmd->add_flag("--cache", opt.cache, "reuse responses for repeated request fingerprints");
    cmd->add_option("--config", opt.config_file,
                    "flat key=value config file (flags given on the command line win)");
}

// Key=value config document; '#' starts a comment. Applied before flag
// parsing so explicit flags take precedence.
void apply_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in.good()) throw ConfigError("cannot read config file: " + path);
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        auto end = s.find_last_not_of(" \t\r");
        s.erase(end == std::string::npos ? 0 : end + 1);
        return s;
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "mode") opt.mode = value;
            else if (key == "depth") opt.depth = std::stoi(value);
            else if (key == "branch-cap") opt.branch_cap = std::stoi(value);
            else if (key == "node-budget") opt.node_budget = std::stoi(value);
            else if (key == "threshold") opt.threshold = std::stoi(value);
            else if (key == "max-parallel") opt.max_parallel = std::stoi(value);
            else if (key == "frames") opt.frames = std::stoi(value);
            else if (key == "temperature") opt.temperature = std::stod(value);
            else if (key == "max-output-tokens") opt.max_output_tokens = std::stoi(value);
            else if (key == "transcript") opt.transcript = value;
            else if (key == "record") opt.record_path = value;
            else if (key == "out") opt.out_dir = value;
            else if (key == "fraction") opt.fraction = std::stod(value);
            else if (key == "seed") opt.seed = std::stoull(value);
            else if (key == "cache") opt.cache = value == "1" || value == "true";
            else throw ConfigError(path + ":" + std::to_string(line_no) +
                                   ": unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": bad value for '" +
                              key + "'");
        }
    }
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value && *value ? value : fallback;
}

EngineConfig build_config(const Options& opt) {
    EngineConfig config;
    config.mode = engine_mode_from_string(opt.mode);
    config.depth_bound = opt.depth;
    config.branch_cap = opt.branch_cap;
    config.node_budget = opt.node_budget;
    config.threshold = opt.threshold;
    config.max_parallel_calls = opt.max_parallel;
    config.frame_count = opt.frames;
    config.sampling.temperature = opt.temperature;
    config.sampling.max_output_tokens = opt.max_output_tokens;
    config.external_model = env_or("SKEPTIC_EXTERNAL_MODEL", config.external_model);
    config.internal_model = env_or("SKEPTIC_INTERNAL_MODEL", config.internal_model);
    config.validate();
    return config;
}

struct BackendSetup {
    std::shared_ptr<Backend> external;
    std::shared_ptr<Backend> internal;
    bool sequence_transcript = false;
};

std::shared_ptr<Backend> live_backend_from_env(const char* role_base, const char* role_key,
                                               const std::string& model,
                                               const char* role_no_sampling, bool vision) {
    LiveConfig config;
    config.base_url = env_or(role_base, env_or("SKEPTIC_API_BASE", ""));
    config.api_key = env_or(role_key, env_or("SKEPTIC_API_KEY", ""));
    config.model = model;
    config.vision = vision;
    config.supports_sampling_params = env_or(role_no_sampling, "") != "1";
    if (config.base_url.empty())
        throw ConfigError(
            "no --transcript given and no endpoint configured; set SKEPTIC_API_BASE "
            "(or the per-role *_API_BASE variables)");
    return std::make_shared<LiveBackend>(std::move(config));
}

BackendSetup make_backends(const Options& opt, const EngineConfig& config) {
    BackendSetup setup;
    if (!opt.transcript.empty()) {
        auto script =
            std::make_shared<ScriptedBackend>(ScriptedBackend::from_file(opt.transcript));
        setup.sequence_transcript = script->mode() == ScriptedBackend::Mode::Sequence;
        setup.external = script;
        setup.internal = script;
    } else {
        setup.external = live_backend_from_env("SKEPTIC_EXTERNAL_API_BASE",
                                               "SKEPTIC_EXTERNAL_API_KEY",
                                               config.external_model,
                                               "SKEPTIC_EXTERNAL_NO_SAMPLING_PARAMS", true);
        setup.internal = live_backend_from_env("SKEPTIC_INTERNAL_API_BASE",
                                               "SKEPTIC_INTERNAL_API_KEY",
                                               config.internal_model,
                                               "SKEPTIC_INTERNAL_NO_SAMPLING_PARAMS", false);
    }
    if (opt.cache) {
        setup.external = std::make_shared<CachingBackend>(setup.external, catalog_hash());
        setup.internal = std::make_shared<CachingBackend>(setup.internal, catalog_hash());
    }
    if (!opt.record_path.empty()) {
        auto writer = std::make_shared<TranscriptWriter>(opt.record_path);
        setup.external = std::make_shared<RecordingBackend>(setup.external, writer);
        setup.internal = std::make_shared<RecordingBackend>(setup.internal, writer);
    }
    return setup;
}

std::string sanitize_filename(const std::string& id) {
    std::string out;
    for (char c : id)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'
                          ? c
                          : '_');
    return out.empty() ? "sample" : out;
}

std::string format_chain(const std::vector<UlamHarrisCode>& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += " -> ";
        out += chain[i].str();
    }
    return out;
}

void print_verdict_summary(std::ostream& out, const VerificationTrace& trace) {
    if (!trace.verdict) {
        out << "status: " << trace.status << "\n";
        if (!trace.error.empty()) out << "error: " << trace.error << "\n";
        return;
    }
    const Verdict& v = *trace.verdict;
    out << "decision: " << to_string(v.decision) << "\n"
        << "valid_count_m: " << v.valid_count << "\n"
        << "threshold_M: " << v.threshold << "\n";
    if (!v.valid_initial.empty()) {
        out << "valid_initial_logics:\n";
        for (const auto& code : v.valid_initial) {
            out << "  " << code.str() << "  " << trace.tree.node(code).statement << "\n";
            out << "      chain: " << format_chain(v.chains.at(code)) << "\n";
        }
    }
    out << "calls: " << trace.accounting.backend_calls
        << "  wall_ms: " << trace.accounting.wall_ms << "  status: " << trace.status << "\n";
}

json metrics_to_json(const Metrics& m) {
    return json{{"accuracy_all", m.accuracy_all},
                {"macro_f1", m.macro_f1},
                {"recall_ai", m.recall_ai},
                {"recall_real", m.recall_real}};
}

json counts_to_json(const ConfusionCounts& c) {
    return json{{"false_ai", c.false_ai},
                {"false_real", c.false_real},
                {"true_ai", c.true_ai},
                {"true_real", c.true_real}};
}

std::string metrics_row(const Metrics& m) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << "(" << m.recall_real << ", " << m.recall_ai
        << ")  acc " << m.accuracy_all << "  macroF1 " << m.macro_f1;
    return out.str();
}

json eval_result_to_json(const EvalResult& result, const EngineConfig& config) {
    json samples = json::array();
    for (const SampleOutcome& s : result.outcomes) {
        json row{{"failed", s.failed},
                 {"id", s.id},
                 {"label", to_string(s.label)},
                 {"valid_count", s.valid_count}};
        if (s.decision) row["decision"] = to_string(*s.decision);
        if (!s.error.empty()) row["error"] = s.error;
        samples.push_back(std::move(row));
    }
    return json{{"counts", counts_to_json(result.counts)},
                {"failures", result.failures},
                {"metrics", metrics_to_json(result.metrics)},
                {"mode", to_string(config.mode)},
                {"samples", std::move(samples)},
                {"threshold", config.threshold}};
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw Error("cannot write " + path.string());
    out << content;
}

int run_verify(Options& opt) {
    EngineConfig config = build_config(opt);
    BackendSetup backends = make_backends(opt, config);
    if (backends.sequence_transcript) config.max_parallel_calls = 1;
    MediaInput media = load_media(opt.media_path, config.frame_count);
    VerificationTrace trace =
        run_verification(*backends.external, *backends.internal, media, config);

    fs::create_directories(opt.out_dir);
    const fs::path trace_path =
        fs::path(opt.out_dir) /
        (sanitize_filename(fs::path(opt.media_path).stem().string()) + ".trace.json");
    write_trace(trace, trace_path.string());

    print_verdict_summary(std::cout, trace);
    std::cout << "trace: " << trace_path.string() << "\n";
    if (trace.status != "ok") {
        std::cerr << "backend failure: " << trace.error << "\n";
        return kExitBackend;
    }
    return kExitOk;
}

EvalResult run_batch(const Options& opt, const EngineConfig& config,
                     const std::vector<SampleRecord>& records, BackendSetup& backends) {
    EngineConfig effective = config;
    int pool = opt.max_parallel;
    if (backends.sequence_transcript) {
        effective.max_parallel_calls = 1;
        pool = 1;
    }
    BackendFactory factory = [&backends](const SampleRecord&) {
        return BackendPair{backends.external, backends.internal};
    };
    return evaluate(factory, disk_media_loader(effective.frame_count), records, effective,
                    pool);
}

void write_eval_outputs(const Options& opt, const EngineConfig& config,
                        const EvalResult& result, const std::optional<json>& elements) {
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir / "traces");
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
        const fs::path path =
            out_dir / "traces" / (sanitize_filename(result.outcomes[i].id) + ".trace.json");
        write_trace(result.traces[i], path.string());
    }
    json doc = eval_result_to_json(result, config);
    if (elements) doc["elements"] = *elements;
    write_text(out_dir / "metrics.json", doc.dump(2) + "\n");

    std::ostringstream table;
    table << "samples: " << result.outcomes.size()
          << "  failed: " << result.failures.size() << "\n"
          << "mode: " << to_string(config.mode) << "  M: " << config.threshold << "\n"
          << "(recall_real, recall_ai)  acc_all  macro_f1\n"
          << metrics_row(result.metrics) << "\n";
    for (const std::string& failure : result.failures) table << "failed: " << failure << "\n";
    write_text(out_dir / "report.txt", table.str());
    std::cout << table.str();
    std::cout << "outputs: " << (out_dir / "metrics.json").string() << ", "
              << (out_dir / "traces").string() << "/\n";
}

int run_evaluate(Options& opt) {
    EngineConfig config = build_config(opt);
    std::vector<SampleRecord> records = load_manifest(opt.manifest_path);
    if (opt.fraction < 1.0) records = subsample(records, opt.fraction, opt.seed);
    BackendSetup backends = make_backends(opt, config);
    EvalResult result = run_batch(opt, config, records, backends);

    std::optional<json> elements;
    if (opt.elements) {
        CallSettings settings{config.internal_model, config.sampling.temperature,
                              config.sampling.max_output_tokens};
        ElementReport report = element_metrics(*backends.internal, settings, records,
                                               result.traces);
        elements = json{{"mean_precision", report.mean_precision},
                        {"mean_recall", report.mean_recall},
                        {"pooled_precision", report.pooled_precision},
                        {"pooled_recall", report.pooled_recall},
                        {"samples", report.samples}};
    }
    write_eval_outputs(opt, config, result, elements);
    return kExitOk;
}

int run_ablate(Options& opt) {
    std::vector<SampleRecord> records = load_manifest(opt.manifest_path);
    if (opt.fraction < 1.0) records = subsample(records, opt.fraction, opt.seed);
    const std::vector<std::string> modes{"zero-shot", "external-only", "internal-only",
                                         "full"};
    json doc = json::object();
    std::ostringstream table;
    table << "mode            ext int  (recall_real, recall_ai)  acc_all  macro_f1\n";
    for (const std::string& mode : modes) {
        Options mode_opt = opt;
        mode_opt.mode = mode;
        mode_opt.out_dir = (fs::path(opt.out_dir) / mode).string();
        EngineConfig config = build_config(mode_opt);
        BackendSetup backends = make_backends(mode_opt, config);
        EvalResult result = run_batch(mode_opt, config, records, backends);
        write_eval_outputs(mode_opt, config, result, std::nullopt);
        doc[mode] = eval_result_to_json(result, config);
        const bool ext = mode == "external-only" || mode == "full";
        const bool internal = mode == "internal-only" || mode == "full";
        table << std::left << std::setw(16) << mode << (ext ? "yes " : "no  ")
              << (internal ? "yes  " : "no   ") << metrics_row(result.metrics) << "\n";
    }
    fs::create_directories(opt.out_dir);
    write_text(fs::path(opt.out_dir) / "ablation.json", doc.dump(2) + "\n");
    std::cout << table.str();
    std::cout << "outputs: " << (fs::path(opt.out_dir) / "ablation.json").string() << "\n";
    return kExitOk;
}

int run_sweep(Options& opt) {
    std::vector<SampleRecord> records = load_manifest(opt.manifest_path);
    if (opt.traces_dir.empty())
        opt.traces_dir = (fs::path(opt.out_dir) / "traces").string();
    if (!fs::is_directory(opt.traces_dir))
        throw Error("trace directory does not exist: " + opt.traces_dir);

    struct StoredSample {
        Label label;
        int valid_count;
    };
    std::vector<StoredSample> samples;
    int max_m = 0;
    for (const SampleRecord& record : records) {
        const fs::path path =
            fs::path(opt.traces_dir) / (sanitize_filename(record.id) + ".trace.json");
        if (!fs::exists(path)) throw Error("missing trace for sample " + record.id);
        VerificationTrace trace = read_trace(path.string());
        if (!trace.verdict) continue;  // failed runs carry no m
        samples.push_back({record.label, trace.verdict->valid_count});
        max_m = std::max(max_m, trace.verdict->valid_count);
    }
    if (samples.empty()) throw Error("no usable traces under " + opt.traces_dir);

    const int m_max = opt.m_max > 0 ? opt.m_max : std::max(max_m, 1);
    json rows = json::array();
    std::ostringstream table;
    table << "M  (recall_real, recall_ai)  acc_all  macro_f1\n";
    int best_m = opt.m_min;
    Metrics best;
    bool first = true;
    for (int m = opt.m_min; m <= m_max; ++m) {
        ConfusionCounts counts;
        for (const StoredSample& sample : samples)
            counts.add(sample.label, sample.valid_count >= m ? Decision::AiGenerated
                                                             : Decision::Real);
        Metrics metrics = compute_metrics(counts);
        rows.push_back({{"accuracy_all", metrics.accuracy_all},
                        {"m", m},
                        {"macro_f1", metrics.macro_f1},
                        {"recall_ai", metrics.recall_ai},
                        {"recall_real", metrics.recall_real}});
        table << m << "  " << metrics_row(metrics) << "\n";
        // argmax accuracy; ties break to the higher macro F1, then lower M
        if (first || metrics.accuracy_all > best.accuracy_all ||
            (metrics.accuracy_all == best.accuracy_all && metrics.macro_f1 > best.macro_f1)) {
            best = metrics;
            best_m = m;
            first = false;
        }
    }
    table << "best_M: " << best_m << "  accuracy: " << std::fixed << std::setprecision(2)
          << best.accuracy_all << "\n";
    fs::create_directories(opt.out_dir);
    json doc{{"best_m", best_m},
             {"best_accuracy", best.accuracy_all},
             {"rows", std::move(rows)},
             {"samples", samples.size()}};
    write_text(fs::path(opt.out_dir) / "sweep.json", doc.dump(2) + "\n");
    std::cout << table.str();
    std::cout << "outputs: " << (fs::path(opt.out_dir) / "sweep.json").string() << "\n";
    return kExitOk;
}

int run_inspect(Options& opt) {
    std::ifstream in(opt.trace_path, std::ios::binary);
    if (!in.good()) throw Error("cannot read trace file: " + opt.trace_path);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j = json::parse(raw, nullptr, false);
    if (j.is_discarded()) throw TreeError("trace file is not valid JSON");
    VerificationTrace trace = trace_from_json(j);
    const std::string round_trip = trace_to_string(trace);

    int max_depth = 0;
    int epoche = 0;
    for (const auto& [code, node] : trace.tree.nodes()) {
        max_depth = std::max(max_depth, code.depth());
        if (node.raw_flag == RawFlag::Epoche) ++epoche;
    }
    std::cout << "schema: skeptic-trace/v1\n"
              << "mode: " << to_string(trace.config.mode)
              << "  depth_bound: " << trace.config.depth_bound
              << "  branch_cap: " << trace.config.branch_cap
              << "  node_budget: " << trace.config.node_budget << "\n"
              << "media: " << to_string(trace.media.kind) << " " << trace.media.source
              << " (" << trace.media.frame_count << " frames)\n"
              << "nodes: " << trace.tree.statement_count() << "  max_depth: " << max_depth
              << "  epoche_nodes: " << epoche << "\n"
              << "catalog_hash: " << trace.catalog_hash << "\n";
    print_verdict_summary(std::cout, trace);
    if (round_trip != raw) {
        std::cerr << "round-trip: MISMATCH (re-serialization differs from the file)\n";
        return kExitTrace;
    }
    std::cout << "round-trip: byte-identical\n";
    return kExitOk;
}

int dispatch(const std::function<int()>& command) {
    try {
        return command();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MediaError& e) {
        std::cerr << "media error: " << e.what() << "\n";
        return kExitMedia;
    } catch (const ManifestError& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return kExitManifest;
    } catch (const GatewayError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const TreeError& e) {
        std::cerr << "trace error: " << e.what() << "\n";
        return kExitTrace;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skeptic: reasoning-based authenticity verification for images and video"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* verify = app.add_subcommand("verify", "verify one image or video");
    verify->add_option("media", opt.media_path, "media file")->required();
    add_engine_flags(verify, opt);

    CLI::App* record = app.add_subcommand(
        "record", "verify one sample while recording a replayable transcript");
    record->add_option("media", opt.media_path, "media file")->required();
    add_engine_flags(record, opt);
    record->get_option("--record")->required();

    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "run a labeled manifest");
    evaluate_cmd->add_option("manifest", opt.manifest_path, "JSONL manifest")->required();
    add_engine_flags(evaluate_cmd, opt);
    evaluate_cmd->add_option("--fraction", opt.fraction, "deterministic subsample fraction")
        ->capture_default_str();
    evaluate_cmd->add_option("--seed", opt.seed, "subsample seed")->capture_default_str();
    evaluate_cmd->add_flag("--elements", opt.elements,
                           "also score visual-element recall/precision against "
                           "ground-truth reasons");

    CLI::App* ablate = app.add_subcommand(
        "ablate", "run every skepticism mode over the same manifest");
    ablate->add_option("manifest", opt.manifest_path, "JSONL manifest")->required();
    add_engine_flags(ablate, opt);
    ablate->add_option("--fraction", opt.fraction, "deterministic subsample fraction")
        ->capture_default_str();
    ablate->add_option("--seed", opt.seed, "subsample seed")->capture_default_str();

    CLI::App* sweep = app.add_subcommand(
        "sweep-threshold", "re-threshold stored traces offline across M values");
    sweep->add_option("manifest", opt.manifest_path, "JSONL manifest")->required();
    sweep->add_option("--traces", opt.traces_dir,
                      "trace directory (default: <out>/traces)");
    sweep->add_option("--m-min", opt.m_min, "lowest M")->capture_default_str();
    sweep->add_option("--m-max", opt.m_max, "highest M (default: max stored m)");
    sweep->add_option("--out", opt.out_dir, "output directory")->capture_default_str();

    CLI::App* inspect = app.add_subcommand("inspect-trace",
                                           "validate and summarize a trace document");
    inspect->add_option("trace", opt.trace_path, "trace file")->required();

    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.starts_with("--config=")) path = arg.substr(9);
        if (!path.empty()) {
            const int code = dispatch([&] {
                apply_config_file(path, opt);
                return kExitOk;
            });
            if (code != kExitOk) return code;
        }
    }
    CLI11_PARSE(app, argc, argv);

    if (verify->parsed() || record->parsed()) return dispatch([&] { return run_verify(opt); });
    if (evaluate_cmd->parsed()) return dispatch([&] { return run_evaluate(opt); });
    if (ablate->parsed()) return dispatch([&] { return run_ablate(opt); });
    if (sweep->parsed()) return dispatch([&] { return run_sweep(opt); });
    if (inspect->parsed()) return dispatch([&] { return run_inspect(opt); });
    return kExitConfig;
}

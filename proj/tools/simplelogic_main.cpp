// Command-line toolkit: generate, solve, stats, balance, render, parse,
// simulate, verify. Exit codes: 0 success, 1 usage, 2 data error,
// 3 infeasible balance plan.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "simplelogic/balance.hpp"
#include "simplelogic/features.hpp"
#include "simplelogic/jsonl.hpp"
#include "simplelogic/manifest.hpp"
#include "simplelogic/parallel.hpp"
#include "simplelogic/sampler.hpp"
#include "simplelogic/simnet.hpp"
#include "simplelogic/textcodec.hpp"
#include "simplelogic/validate.hpp"

namespace sl = simplelogic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfeasiblePlan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const sl::Vocabulary& load_vocabulary(const std::string& flag_path) {
    static sl::Vocabulary file_vocab;
    std::string path = flag_path;
    if (path.empty()) {
        if (const char* env = std::getenv("SIMPLELOGIC_VOCAB")) path = env;
    }
    if (path.empty()) return sl::Vocabulary::builtin();
    file_vocab = sl::Vocabulary::load(path);
    return file_vocab;
}

std::string read_text_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

std::pair<int, int> parse_depth_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) throw CLI::ValidationError("--depths expects LO..HI");
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

sl::BinRange parse_bin_range(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos) throw CLI::ValidationError("--range expects LO:HI");
    return {std::stoll(text.substr(0, sep)), std::stoll(text.substr(sep + 1))};
}

void emit_manifest(const std::string& command, sl::RunManifest manifest,
                   const std::vector<std::string>& outputs,
                   std::chrono::steady_clock::time_point start) {
    manifest.command = command;
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const std::string& path : outputs) {
        manifest.output_digests[path] = sl::sha256_file_hex(path);
    }
    if (!outputs.empty()) manifest.write(outputs.front() + ".manifest.json");
}

// ---- generate ----

struct GenerateArgs {
    std::string sampler = "rp";
    std::uint64_t per_depth = 0;
    std::string depths = "0..6";
    std::uint64_t seed = 0;
    int workers = sl::default_worker_count();
    bool permissive_facts = false;
    bool balance_labels = false;
    int lp_multiplicity = 2;
    double floor = 1e-7;
    std::string out;
};

int run_generate(const GenerateArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    sl::StratifiedSpec spec;
    std::tie(spec.depth_min, spec.depth_max) = parse_depth_range(args.depths);
    spec.per_depth = args.per_depth;
    spec.sampler = sl::sampler_kind_from_string(args.sampler);
    spec.workers = args.workers;
    spec.balance_labels = args.balance_labels;
    spec.acceptance_floor = args.floor;

    sl::SamplerConfig config;
    config.seed = args.seed;
    config.permissive_facts = args.permissive_facts;
    config.lp_star_multiplicity = args.lp_multiplicity;

    const sl::Dataset dataset = sl::generate_stratified(spec, config);
    sl::write_dataset_jsonl(args.out, dataset);
    write_text_file(args.out + ".meta.json", sl::metadata_to_json(dataset.metadata) + "\n");

    sl::RunManifest manifest;
    manifest.seed = args.seed;
    manifest.flags = {{"sampler", args.sampler},
                      {"per_depth", std::to_string(args.per_depth)},
                      {"depths", args.depths},
                      {"workers", std::to_string(args.workers)},
                      {"permissive_facts", args.permissive_facts ? "true" : "false"},
                      {"balance_labels", args.balance_labels ? "true" : "false"},
                      {"lp_multiplicity", std::to_string(args.lp_multiplicity)}};
    emit_manifest("generate", std::move(manifest), {args.out, args.out + ".meta.json"}, start);

    std::cout << "wrote " << dataset.examples.size() << " examples to " << args.out << "\n";
    return kExitOk;
}

// ---- solve ----

int run_solve(const std::string& in, const std::string& profile_name, bool jsonl_mode,
              const std::string& out, const std::string& vocab_path) {
    const sl::Vocabulary& vocab = load_vocabulary(vocab_path);
    if (jsonl_mode) {
        std::ostringstream lines;
        sl::for_each_example_jsonl(in, [&](std::size_t, const sl::Example& ex) {
            sl::Example solved = ex;
            const auto [label, depth] = sl::label_and_depth(ex.theory, ex.query);
            solved.label = label;
            solved.depth = static_cast<std::int16_t>(depth);
            lines << sl::example_to_jsonl(solved) << "\n";
        });
        if (out.empty()) {
            std::cout << lines.str();
        } else {
            write_text_file(out, lines.str());
        }
        return kExitOk;
    }
    const auto profile = sl::template_profile_from_string(profile_name);
    const auto examples = sl::parse_corpus(read_text_file(in), profile, vocab);
    for (const sl::Example& ex : examples) {
        std::cout << (ex.label ? "True" : "False") << " " << ex.depth << "\n";
    }
    return kExitOk;
}

// ---- stats ----

int run_stats(const std::string& in, const std::vector<std::string>& features, double bin_width,
              const std::string& joint, const std::string& cell, std::uint64_t min_support,
              const std::string& out) {
    const sl::Dataset dataset = sl::read_dataset_jsonl(in);
    if (dataset.examples.empty()) throw DataError("dataset is empty: " + in);

    if (!joint.empty()) {
        std::vector<std::string> names;
        std::istringstream jn(joint);
        for (std::string tok; std::getline(jn, tok, ',');) names.push_back(tok);
        std::vector<std::string> cells;
        std::istringstream cn(cell);
        for (std::string tok; std::getline(cn, tok, ',');) cells.push_back(tok);
        if (names.size() != cells.size() || names.empty()) {
            throw CLI::ValidationError("--joint and --cell need matching entries");
        }
        std::vector<sl::CellCondition> conditions;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const sl::FeatureSpec spec = sl::feature_spec_from_string(names[i], bin_width);
            const auto colon = cells[i].find(':');
            if (colon == std::string::npos) {
                conditions.push_back(sl::CellCondition::exact_bin(spec, std::stoll(cells[i])));
            } else {
                conditions.push_back(sl::CellCondition::interval(
                    spec, std::stod(cells[i].substr(0, colon)),
                    std::stod(cells[i].substr(colon + 1))));
            }
        }
        const sl::JointCell result =
            sl::joint_conditional(dataset.examples, conditions, min_support);
        std::ostringstream json;
        json.precision(9);
        json << "{\"probability\":" << result.positive_rate << ",\"positives\":"
             << result.positives << ",\"support\":" << result.support
             << ",\"low_confidence\":" << (result.low_confidence ? "true" : "false") << "}";
        std::cout << json.str() << "\n";
        if (!out.empty()) write_text_file(out, json.str() + "\n");
        return kExitOk;
    }

    std::string csv;
    for (const std::string& name : features) {
        const sl::FeatureSpec spec = sl::feature_spec_from_string(name, bin_width);
        const auto histogram = sl::conditional_label_histogram(dataset.examples, spec);
        const std::string table = sl::histogram_to_csv(histogram);
        if (csv.empty()) {
            csv = table;
        } else {
            csv += table.substr(table.find('\n') + 1);  // drop the repeated header
        }
    }
    if (out.empty()) {
        std::cout << csv;
    } else {
        const auto start = std::chrono::steady_clock::now();
        write_text_file(out, csv);
        emit_manifest("stats", {}, {out}, start);
    }
    return kExitOk;
}

// ---- balance ----

int run_balance(const std::string& in, const std::string& reference_path,
                const std::string& feature, double bin_width, const std::string& range,
                std::uint64_t target_size, std::uint64_t seed, double k_budget,
                const std::string& out, const std::string& report_path) {
    const auto start = std::chrono::steady_clock::now();
    const sl::Dataset pool = sl::read_dataset_jsonl(in);
    const sl::FeatureSpec spec = sl::feature_spec_from_string(feature, bin_width);
    const sl::BinRange bin_range = parse_bin_range(range);

    sl::ConditionalHistogram reference(spec);
    if (reference_path.empty()) {
        reference = sl::conditional_label_histogram(pool.examples, spec);
    } else {
        const sl::Dataset ref = sl::read_dataset_jsonl(reference_path);
        reference = sl::conditional_label_histogram(ref.examples, spec);
    }

    const double k = sl::estimate_oversample_ratio(reference, bin_range);
    if (k > k_budget) {
        throw InfeasiblePlan("estimated oversample ratio " + std::to_string(k) +
                             " exceeds the budget " + std::to_string(k_budget) +
                             "; pre-sample a larger pool or narrow the range");
    }

    const sl::BalancePlan plan = sl::make_balance_plan(reference, bin_range, target_size);
    sl::RandomStream rng(seed, 0);
    const sl::Dataset balanced = sl::balance_downsample(pool, plan, rng);
    sl::write_dataset_jsonl(out, balanced);

    const sl::BalanceAudit audit = sl::audit_balance(balanced, plan);
    std::cout << "k_estimate " << k << "\n" << audit.to_json() << "\n";
    std::vector<std::string> outputs = {out};
    if (!report_path.empty()) {
        write_text_file(report_path, audit.to_json() + "\n");
        outputs.push_back(report_path);
    }
    sl::RunManifest manifest;
    manifest.seed = seed;
    manifest.flags = {{"feature", feature},
                      {"range", range},
                      {"target_size", std::to_string(target_size)},
                      {"reference", reference_path.empty() ? in : reference_path}};
    emit_manifest("balance", std::move(manifest), outputs, start);
    return kExitOk;
}

// ---- render / parse ----

int run_render(const std::string& in, const std::string& out, const std::string& profile_name,
               bool model_input, const std::string& vocab_path, std::optional<std::uint64_t> shuffle_seed) {
    const auto start = std::chrono::steady_clock::now();
    const sl::Vocabulary& vocab = load_vocabulary(vocab_path);
    const auto profile = sl::template_profile_from_string(profile_name);
    sl::Dataset dataset = sl::read_dataset_jsonl(in);
    if (shuffle_seed) {
        sl::RandomStream rng(*shuffle_seed, 0);
        for (sl::Example& ex : dataset.examples) {
            rng.shuffle(ex.theory.facts);
            rng.shuffle(ex.theory.rules);
        }
    }
    std::string text;
    if (model_input) {
        for (const sl::Example& ex : dataset.examples) {
            text += sl::render_model_input(ex, profile, vocab);
            text += '\n';
        }
    } else {
        text = sl::render_corpus(dataset.examples, profile, vocab);
    }
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
        emit_manifest("render", {}, {out}, start);
    }
    return kExitOk;
}

int run_parse(const std::string& in, const std::string& out, const std::string& profile_name,
              bool model_input, const std::string& vocab_path) {
    const auto start = std::chrono::steady_clock::now();
    const sl::Vocabulary& vocab = load_vocabulary(vocab_path);
    const auto profile = sl::template_profile_from_string(profile_name);
    const std::string text = read_text_file(in);
    std::vector<sl::Example> examples;
    if (model_input) {
        std::istringstream lines(text);
        std::string line;
        std::size_t line_number = 0;
        while (std::getline(lines, line)) {
            ++line_number;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                examples.push_back(sl::parse_model_input(line, profile, vocab));
            } catch (const sl::ParseError& e) {
                throw DataError(in + ":" + std::to_string(line_number) + ": " + e.what());
            }
        }
    } else {
        examples = sl::parse_corpus(text, profile, vocab);
    }
    std::string jsonl;
    for (const sl::Example& ex : examples) {
        jsonl += sl::example_to_jsonl(ex);
        jsonl += '\n';
    }
    if (out.empty()) {
        std::cout << jsonl;
    } else {
        write_text_file(out, jsonl);
        emit_manifest("parse", {}, {out}, start);
    }
    return kExitOk;
}

// ---- simulate / verify ----

int run_simulate(const std::string& in, std::uint64_t seed, double beta, int layers, bool trace,
                 const std::string& out) {
    const auto start = std::chrono::steady_clock::now();
    sl::ConstructedModelConfig config;
    config.layer_count = layers;
    if (beta > 0) config.beta = beta;
    config.validate();
    sl::RandomStream rng(seed, 0);
    const sl::SignatureSet signatures = sl::generate_signatures(rng);

    const sl::Dataset dataset = sl::read_dataset_jsonl(in);
    std::string lines;
    for (const sl::Example& ex : dataset.examples) {
        const sl::ModelRun run = sl::run_constructed_model(ex, signatures, config, trace);
        lines += "{\"label\":";
        lines += run.label ? '1' : '0';
        if (trace) {
            lines += ",\"trace\":[";
            for (std::size_t s = 0; s < run.proved_per_step.size(); ++s) {
                if (s) lines += ',';
                lines += '[';
                for (std::size_t j = 0; j < run.proved_per_step[s].size(); ++j) {
                    if (j) lines += ',';
                    lines += std::to_string(run.proved_per_step[s][j]);
                }
                lines += ']';
            }
            lines += ']';
        }
        lines += "}\n";
    }
    if (out.empty()) {
        std::cout << lines;
    } else {
        write_text_file(out, lines);
        sl::RunManifest manifest;
        manifest.seed = seed;
        manifest.flags = {{"beta", std::to_string(config.beta)},
                          {"layers", std::to_string(layers)},
                          {"trace", trace ? "true" : "false"}};
        emit_manifest("simulate", std::move(manifest), {out}, start);
    }
    return kExitOk;
}

int run_verify(const std::string& in, std::uint64_t seed, double beta, int layers, int workers,
               const std::string& out) {
    const auto start = std::chrono::steady_clock::now();
    sl::ConstructedModelConfig config;
    config.layer_count = layers;
    if (beta > 0) config.beta = beta;
    config.validate();
    sl::RandomStream rng(seed, 0);
    const sl::SignatureSet signatures = sl::generate_signatures(rng);

    const sl::Dataset dataset = sl::read_dataset_jsonl(in);
    const sl::AgreementReport report =
        sl::verify_agreement(dataset.examples, signatures, config, workers);
    std::cout << "accuracy " << report.accuracy() << " (" << report.correct << "/" << report.total
              << ")\n";
    if (!out.empty()) {
        write_text_file(out, report.to_json() + "\n");
        sl::RunManifest manifest;
        manifest.seed = seed;
        manifest.flags = {{"beta", std::to_string(config.beta)},
                          {"layers", std::to_string(layers)}};
        emit_manifest("verify", std::move(manifest), {out}, start);
    }
    return report.disagreements.empty() ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SimpleLogic reasoning-dataset toolkit"};
    app.require_subcommand(1);
    std::string vocab_path;
    app.add_option("--vocab", vocab_path,
                   "vocabulary file (one word per line; overrides SIMPLELOGIC_VOCAB)");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "stratified dataset generation");
    generate->add_option("--sampler", gen.sampler, "rp|lp|lpstar|uniform")->required();
    generate->add_option("--per-depth", gen.per_depth, "examples per depth bucket")->required();
    generate->add_option("--depths", gen.depths, "depth range LO..HI (default 0..6)");
    generate->add_option("--seed", gen.seed, "generation seed")->required();
    generate->add_option("--workers", gen.workers, "worker threads");
    generate->add_flag("--permissive-facts", gen.permissive_facts,
                       "allow zero-fact theories (facts ~ U[0, #pred])");
    generate->add_flag("--balance-labels", gen.balance_labels, "force a 50/50 label split per depth");
    generate->add_option("--lp-multiplicity", gen.lp_multiplicity,
                         "supporting rules per true predicate (lpstar)");
    generate->add_option("--floor", gen.floor, "acceptance-rate floor per bucket");
    generate->add_option("--out", gen.out, "output JSONL path")->required();

    std::string solve_in = "-", solve_profile = "ifthen", solve_out;
    bool solve_jsonl = false;
    auto* solve = app.add_subcommand("solve", "label and depth for text blocks or JSONL");
    solve->add_option("--in", solve_in, "corpus file or '-' for stdin");
    solve->add_option("--profile", solve_profile, "ifthen|compact");
    solve->add_flag("--jsonl", solve_jsonl, "treat input as JSONL and re-solve each line");
    solve->add_option("--out", solve_out, "output path (JSONL mode)");

    std::string stats_in, stats_joint, stats_cell, stats_out;
    std::vector<std::string> stats_features;
    double stats_bin_width = 0.0;
    std::uint64_t stats_min_support = 100;
    auto* stats = app.add_subcommand("stats", "conditional label statistics as CSV");
    stats->add_option("--in", stats_in, "input JSONL")->required();
    stats->add_option("--feature", stats_features,
                      "pred_count|fact_count|rule_count|branching_factor")
        ->delimiter(',');
    stats->add_option("--bin-width", stats_bin_width, "bin width for branching_factor");
    stats->add_option("--joint", stats_joint, "comma-separated features for one joint cell");
    stats->add_option("--cell", stats_cell, "per-feature bin or lo:hi interval");
    stats->add_option("--min-support", stats_min_support, "low-confidence threshold");
    stats->add_option("--out", stats_out, "output CSV path (stdout when omitted)");

    std::string bal_in, bal_ref, bal_feature = "rule_count", bal_range, bal_out, bal_report;
    double bal_bin_width = 0.0, bal_k_budget = 100.0;
    std::uint64_t bal_target = 0, bal_seed = 0;
    auto* balance = app.add_subcommand("balance", "remove a statistical feature by down-sampling");
    balance->add_option("--in", bal_in, "pool JSONL")->required();
    balance->add_option("--reference", bal_ref, "dataset whose marginal to preserve (default pool)");
    balance->add_option("--feature", bal_feature, "feature to balance");
    balance->add_option("--bin-width", bal_bin_width, "bin width for branching_factor");
    balance->add_option("--range", bal_range, "balanced bin range LO:HI")->required();
    balance->add_option("--target-size", bal_target, "output size")->required();
    balance->add_option("--seed", bal_seed, "selection seed")->required();
    balance->add_option("--k-budget", bal_k_budget, "refuse plans above this oversample ratio");
    balance->add_option("--out", bal_out, "output JSONL")->required();
    balance->add_option("--report", bal_report, "criteria report JSON path");

    std::string render_in, render_out, render_profile = "ifthen";
    bool render_model = false;
    std::uint64_t render_shuffle = 0;
    auto* render = app.add_subcommand("render", "JSONL to templated English");
    render->add_option("--in", render_in, "input JSONL")->required();
    render->add_option("--out", render_out, "output corpus path (stdout when omitted)");
    render->add_option("--profile", render_profile, "ifthen|compact");
    render->add_flag("--model-input", render_model, "emit [CLS]/[SEP] model-input lines");
    auto* shuffle_opt = render->add_option("--shuffle-seed", render_shuffle,
                                           "shuffle fact/rule order before rendering");

    std::string parse_in, parse_out, parse_profile = "ifthen";
    bool parse_model = false;
    auto* parse = app.add_subcommand("parse", "templated English to JSONL");
    parse->add_option("--in", parse_in, "input corpus ('-' for stdin)")->required();
    parse->add_option("--out", parse_out, "output JSONL path (stdout when omitted)");
    parse->add_option("--profile", parse_profile, "ifthen|compact");
    parse->add_flag("--model-input", parse_model, "parse [CLS]/[SEP] model-input lines");

    std::string sim_in, sim_out;
    std::uint64_t sim_seed = 0;
    double sim_beta = 0.0;
    int sim_layers = 12;
    bool sim_trace = false;
    auto* simulate = app.add_subcommand("simulate", "run the fixed-weight network per example");
    simulate->add_option("--in", sim_in, "input JSONL")->required();
    simulate->add_option("--seed", sim_seed, "signature seed")->required();
    simulate->add_option("--beta", sim_beta, "attention sharpness (default 300 ln 10 + 1)");
    simulate->add_option("--layers", sim_layers, "model layer count");
    simulate->add_flag("--trace", sim_trace, "record proved predicates per layer");
    simulate->add_option("--out", sim_out, "output JSONL path (stdout when omitted)");

    std::string ver_in, ver_out;
    std::uint64_t ver_seed = 0;
    double ver_beta = 0.0;
    int ver_layers = 12;
    int ver_workers = sl::default_worker_count();
    auto* verify = app.add_subcommand("verify", "agreement of the network against the solver");
    verify->add_option("--in", ver_in, "input JSONL")->required();
    verify->add_option("--seed", ver_seed, "signature seed")->required();
    verify->add_option("--beta", ver_beta, "attention sharpness");
    verify->add_option("--layers", ver_layers, "model layer count");
    verify->add_option("--workers", ver_workers, "worker threads");
    verify->add_option("--out", ver_out, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*solve) return run_solve(solve_in, solve_profile, solve_jsonl, solve_out, vocab_path);
        if (*stats) {
            if (stats_features.empty() && stats_joint.empty()) {
                throw CLI::ValidationError("stats needs --feature or --joint");
            }
            return run_stats(stats_in, stats_features, stats_bin_width, stats_joint, stats_cell,
                             stats_min_support, stats_out);
        }
        if (*balance) {
            return run_balance(bal_in, bal_ref, bal_feature, bal_bin_width, bal_range, bal_target,
                               bal_seed, bal_k_budget, bal_out, bal_report);
        }
        if (*render) {
            return run_render(render_in, render_out, render_profile, render_model, vocab_path,
                              shuffle_opt->count() ? std::optional<std::uint64_t>(render_shuffle)
                                                   : std::nullopt);
        }
        if (*parse) return run_parse(parse_in, parse_out, parse_profile, parse_model, vocab_path);
        if (*simulate) {
            return run_simulate(sim_in, sim_seed, sim_beta, sim_layers, sim_trace, sim_out);
        }
        if (*verify) return run_verify(ver_in, ver_seed, ver_beta, ver_layers, ver_workers, ver_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfeasiblePlan& e) {
        std::cerr << "infeasible plan: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

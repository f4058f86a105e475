// Command-line front end: GNE testing, compatibility estimation, node
// classification, synthetic graph generation and graph statistics.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "neteffect/emphasis.hpp"
#include "neteffect/estimate.hpp"
#include "neteffect/gne_test.hpp"
#include "neteffect/io.hpp"
#include "neteffect/priors.hpp"
#include "neteffect/propagate.hpp"
#include "neteffect/synth.hpp"
#include "neteffect/types.hpp"

namespace {

using nlohmann::json;
using namespace neteffect;

constexpr int kExitRuntimeError = 1;
constexpr int kExitUsageError = 2;

std::string echo_command(int argc, char** argv) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd << ' ';
        cmd << argv[i];
    }
    return cmd.str();
}

void write_json_file(const std::string& path, const json& payload) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create file: " + path);
    out << payload.dump(2) << '\n';
}

void write_compatibility_csv(const std::string& path, const CompatibilityMatrix& h,
                             const LabelSet& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create file: " + path);
    out.precision(10);
    out << "class";
    for (const auto& name : labels.class_names) out << ',' << name;
    out << '\n';
    for (NodeId i = 0; i < h.classes; ++i) {
        out << labels.class_names[i];
        for (NodeId j = 0; j < h.classes; ++j) out << ',' << h.at(i, j);
        out << '\n';
    }
}

double finite_or_throw(double v, const char* field) {
    if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite report field: ") + field);
    return v;
}

struct CommonInputs {
    std::string edges_path;
    std::string labels_path;
    double prior_frac = 0.05;
    bool stratified = false;
    std::uint64_t seed = 0;
    int threads = 1;
    NodeId upsample_class = -1;
    double upsample_factor = 10.0;

    void attach(CLI::App* cmd, bool with_priors = true) {
        cmd->add_option("--edges", edges_path, "edge list file (u v per line)")->required();
        cmd->add_option("--labels", labels_path, "label file (node<TAB>label per line)")->required();
        if (with_priors) {
            cmd->add_option("--prior-frac", prior_frac, "fraction of labeled nodes used as priors")
                ->check(CLI::Validator(
                    [](std::string& s) {
                        const double v = std::stod(s);
                        return v > 0.0 && v <= 1.0 ? std::string()
                                                   : std::string("must be in (0, 1]");
                    },
                    "FRACTION"));
            cmd->add_flag("--stratified", stratified, "sample priors per class");
            cmd->add_option("--upsample-class", upsample_class,
                            "class whose prior fraction is multiplied (imbalance experiments)");
            cmd->add_option("--upsample-factor", upsample_factor,
                            "multiplier for the upsampled class")
                ->check(CLI::PositiveNumber);
        }
        cmd->add_option("--seed", seed, "RNG seed")->envname("NETEFFECT_SEED");
        cmd->add_option("--threads", threads, "worker cap (results do not depend on it)")
            ->check(CLI::PositiveNumber);
    }

    Graph load_graph() const { return load_edge_list_file(edges_path); }

    PriorSet sample(const LabelSet& labels) const {
        if (upsample_class >= 0) {
            if (upsample_class >= labels.num_classes)
                throw std::runtime_error("upsample class out of range");
            std::vector<double> fractions(static_cast<std::size_t>(labels.num_classes), prior_frac);
            fractions[upsample_class] = std::min(1.0, prior_frac * upsample_factor);
            return sample_priors_per_class(labels, fractions, seed);
        }
        return sample_priors(labels, prior_frac, seed, stratified);
    }
};

json verdict_to_json(const GneVerdict& v) {
    json per_class = json::array();
    for (const bool b : v.per_class) per_class.push_back(b);
    return json{{"per_class", per_class}, {"graph_level", to_string(v.graph_level)}};
}

int cmd_test(const CommonInputs& common, const TestConfig& config, const std::string& out_pvalues,
             const std::string& out_verdict, const std::string& command) {
    const Graph g = common.load_graph();
    const LabelSet labels = load_labels_file(common.labels_path, g.num_nodes());
    const PriorSet priors = common.sample(labels);

    const PValueTable table = run_test(g, priors, labels, config);
    const GneVerdict v = verdict(table, config.alpha);

    {
        std::ofstream out(out_pvalues);
        if (!out) throw std::runtime_error("cannot create file: " + out_pvalues);
        write_pvalues_csv(out, table, labels);
    }
    json warnings = json::array();
    for (NodeId i = 0; i < table.classes; ++i)
        for (NodeId j = i + 1; j < table.classes; ++j)
            if (table.pair_insufficient(i, j))
                warnings.push_back({{"pair", {labels.class_names[i], labels.class_names[j]}},
                                    {"reason", "insufficient data"}});
    json report = verdict_to_json(v);
    report["command"] = command;
    report["seed"] = common.seed;
    report["alpha"] = config.alpha;
    report["rounds"] = config.rounds;
    report["priors"] = priors.nodes.size();
    if (!warnings.empty()) report["warnings"] = warnings;
    write_json_file(out_verdict, report);
    std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_estimate(const CommonInputs& common, const WalkConfig& walk_base, bool no_emphasis,
                 const std::string& estimator, const std::string& out_h,
                 const std::string& out_meta, const std::string& dump_emphasis,
                 const std::string& command) {
    const Graph g = common.load_graph();
    const LabelSet labels = load_labels_file(common.labels_path, g.num_nodes());
    const PriorSet priors = common.sample(labels);

    json meta{{"command", command}, {"seed", common.seed}, {"form", "display"},
              {"estimator", estimator}, {"emphasis", !no_emphasis}};
    CompatibilityMatrix display;
    if (estimator == "edge-count") {
        display = edge_counting_baseline(g, priors, labels);
    } else {
        WalkConfig walk = walk_base;
        walk.seed = common.seed;
        const SparseWeightedMatrix weights = no_emphasis
                                                 ? SparseWeightedMatrix::unit_weights(g)
                                                 : emphasis_pipeline(g, walk, common.threads);
        if (!dump_emphasis.empty()) {
            std::ofstream out(dump_emphasis);
            if (!out) throw std::runtime_error("cannot create file: " + dump_emphasis);
            write_weighted_matrix(out, weights);
        }
        const BeliefMatrix ehat = initial_beliefs(priors, labels, /*centered=*/true);
        const EstimateResult est =
            estimate_compatibility(weights, ehat, priors, RidgeConfig::defaults());
        display = to_display(est.h);
        meta["alpha_selected"] = est.alpha_per_class;
        meta["classes_without_priors"] = est.classes_without_priors;
    }
    write_compatibility_csv(out_h, display, labels);
    write_json_file(out_meta, meta);
    std::cout << meta.dump(2) << '\n';
    return 0;
}

int cmd_classify(const CommonInputs& common, const WalkConfig& walk_base,
                 const PropagationConfig& prop, const std::string& mode_name,
                 const std::string& out_pred, const std::string& out_report,
                 const std::string& command) {
    const Graph g = common.load_graph();
    const LabelSet labels = load_labels_file(common.labels_path, g.num_nodes());
    const PriorSet priors = common.sample(labels);

    ClassifyMode mode = ClassifyMode::neteffect;
    if (mode_name == "hom") mode = ClassifyMode::neteffect_hom;
    else if (mode_name == "ec") mode = ClassifyMode::neteffect_ec;
    else if (mode_name == "a") mode = ClassifyMode::neteffect_a;

    WalkConfig walk = walk_base;
    walk.seed = common.seed;
    const ClassifyResult result = classify(g, labels, priors, walk, RidgeConfig::defaults(), prop,
                                           mode, common.threads);
    write_predictions_file(out_pred, result.predictions, labels);

    const ClassifyReport& r = result.report;
    json report{
        {"command", command},
        {"seed", common.seed},
        {"mode", to_string(r.mode)},
        {"threads", common.threads},
        {"priors", priors.nodes.size()},
        {"stages",
         {{"emphasis_seconds", finite_or_throw(r.emphasis_seconds, "emphasis_seconds")},
          {"estimate_seconds", finite_or_throw(r.estimate_seconds, "estimate_seconds")},
          {"propagate_seconds", finite_or_throw(r.propagate_seconds, "propagate_seconds")},
          {"total_seconds", finite_or_throw(r.total_seconds, "total_seconds")}}},
        {"iterations", r.propagation.iterations},
        {"rho", finite_or_throw(r.propagation.rho, "rho")},
        {"f", finite_or_throw(r.propagation.f, "f")},
        {"converged", r.propagation.converged},
        {"alpha_selected", r.alpha_per_class},
        {"classes_without_priors", r.classes_without_priors},
    };
    if (r.accuracy) report["accuracy"] = finite_or_throw(*r.accuracy, "accuracy");
    write_json_file(out_report, report);
    std::cout << report.dump(2) << '\n';
    return 0;
}

GeneratorSpec spec_from_json(const json& payload) {
    GeneratorSpec spec;
    spec.class_sizes = payload.at("class_sizes").get<std::vector<NodeId>>();
    const auto& mix = payload.at("h_mix");
    for (const auto& row : mix)
        for (const auto& v : row) spec.h_mix.push_back(v.get<double>());
    spec.m_target = payload.at("m_target").get<EdgeCount>();
    spec.noise_frac = payload.value("noise_frac", 0.0);
    if (payload.contains("seed")) spec.seed = payload["seed"].get<std::uint64_t>();
    return spec;
}

int cmd_synth(const std::string& preset_name, const std::string& spec_path, std::uint64_t seed,
              const std::string& out_edges, const std::string& out_labels) {
    GeneratorSpec spec;
    if (!preset_name.empty()) {
        spec = preset(preset_name, seed);
    } else {
        std::ifstream in(spec_path);
        if (!in) throw std::runtime_error("cannot open spec file: " + spec_path);
        json payload;
        in >> payload;
        spec = spec_from_json(payload);
        spec.seed = seed;
    }
    const auto [graph, labels] = generate(spec);
    write_edge_list_file(out_edges, graph);
    write_labels_file(out_labels, labels);
    std::cout << json{{"nodes", graph.num_nodes()},
                      {"edges", graph.num_edges()},
                      {"classes", labels.num_classes},
                      {"edge_file", out_edges},
                      {"label_file", out_labels}}
                     .dump(2)
              << '\n';
    return 0;
}

int cmd_stats(const std::string& edges_path, const std::string& labels_path) {
    const Graph g = load_edge_list_file(edges_path);
    const LabelSet labels = load_labels_file(labels_path, g.num_nodes());
    const HomophilyStats hom = edge_homophily(g, labels);
    json class_counts = json::object();
    const auto counts = labels.class_counts();
    for (NodeId k = 0; k < labels.num_classes; ++k)
        class_counts[labels.class_names[k]] = counts[k];
    const json report{{"nodes", g.num_nodes()},
                      {"edges", g.num_edges()},
                      {"classes", labels.num_classes},
                      {"class_counts", class_counts},
                      {"edge_homophily", hom.value},
                      {"h_hat", class_insensitive_homophily(g, labels)},
                      {"skipped_edges", hom.skipped}};
    std::cout << report.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized network-effect testing, estimation and exploitation"};
    app.require_subcommand(1);
    const std::string command = echo_command(argc, argv);

    // test
    auto* test = app.add_subcommand("test", "chi-squared GNE test per class pair");
    CommonInputs test_common;
    test_common.attach(test);
    TestConfig test_config;
    test->add_option("--rounds", test_config.rounds, "sampling rounds to average")
        ->check(CLI::PositiveNumber);
    test->add_option("--cap", test_config.cap, "contingency count cap per round")
        ->check(CLI::Range(static_cast<std::int64_t>(20), std::numeric_limits<std::int64_t>::max()));
    test->add_option("--alpha", test_config.alpha, "significance level")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    std::string out_pvalues = "pvalues.csv";
    std::string out_verdict = "verdict.json";
    test->add_option("--out-pvalues", out_pvalues, "p-value table CSV path");
    test->add_option("--out-verdict", out_verdict, "verdict JSON path");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "compatibility matrix estimation");
    CommonInputs est_common;
    est_common.attach(estimate);
    WalkConfig est_walk;
    estimate->add_option("--walk-len", est_walk.length, "walk length")->check(CLI::PositiveNumber);
    estimate->add_option("--walk-trials", est_walk.trials, "walks per node")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--rank", est_walk.rank, "embedding rank")->check(CLI::PositiveNumber);
    bool no_emphasis = false;
    estimate->add_flag("--no-emphasis", no_emphasis, "estimate on the raw adjacency");
    std::string estimator = "nef";
    estimate->add_option("--estimator", estimator, "closed-form or edge counting")
        ->check(CLI::IsMember({"nef", "edge-count"}));
    std::string out_h = "compatibility.csv";
    std::string out_meta = "estimate.json";
    std::string dump_emphasis;
    estimate->add_option("--out-h", out_h, "compatibility CSV path");
    estimate->add_option("--out-meta", out_meta, "metadata JSON path");
    estimate->add_option("--dump-emphasis", dump_emphasis,
                         "write the emphasis matrix as 'i j weight' triples");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "belief-propagation node classification");
    CommonInputs cls_common;
    cls_common.attach(classify_cmd);
    WalkConfig cls_walk;
    classify_cmd->add_option("--walk-len", cls_walk.length, "walk length")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--walk-trials", cls_walk.trials, "walks per node")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--rank", cls_walk.rank, "embedding rank")
        ->check(CLI::PositiveNumber);
    std::string mode_name = "neteffect";
    classify_cmd->add_option("--mode", mode_name, "pipeline variant")
        ->check(CLI::IsMember({"neteffect", "hom", "ec", "a"}));
    PropagationConfig prop;
    classify_cmd->add_option("--f-safety", prop.f_safety, "scaling numerator for f")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    classify_cmd->add_option("--l1-threshold", prop.l1_threshold, "L1 convergence threshold")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_option("--max-iter", prop.max_iter, "iteration cap")
        ->check(CLI::PositiveNumber);
    std::string out_pred = "predictions.tsv";
    std::string out_report = "report.json";
    classify_cmd->add_option("--out-pred", out_pred, "predictions TSV path");
    classify_cmd->add_option("--out-report", out_report, "run report JSON path");

    // synth
    auto* synth = app.add_subcommand("synth", "synthetic graph generation");
    std::string preset_name;
    std::string spec_path;
    auto* preset_opt =
        synth->add_option("--preset", preset_name, "one of: xophily, homophily, weak, random, bipartite")
            ->check(CLI::IsMember(preset_names()));
    synth->add_option("--spec", spec_path, "generator spec JSON file")->excludes(preset_opt);
    std::uint64_t synth_seed = 0;
    synth->add_option("--seed", synth_seed, "RNG seed")->envname("NETEFFECT_SEED");
    std::string out_edges = "edges.txt";
    std::string out_labels = "labels.tsv";
    synth->add_option("--out-edges", out_edges, "edge list output path");
    synth->add_option("--out-labels", out_labels, "label output path");

    // stats
    auto* stats = app.add_subcommand("stats", "graph and homophily statistics");
    std::string stats_edges, stats_labels;
    stats->add_option("--edges", stats_edges, "edge list file")->required();
    stats->add_option("--labels", stats_labels, "label file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        if (test->parsed()) {
            test_config.seed = test_common.seed;
            test_config.validate();
            return cmd_test(test_common, test_config, out_pvalues, out_verdict, command);
        }
        if (estimate->parsed())
            return cmd_estimate(est_common, est_walk, no_emphasis, estimator, out_h, out_meta,
                                dump_emphasis, command);
        if (classify_cmd->parsed())
            return cmd_classify(cls_common, cls_walk, prop, mode_name, out_pred, out_report,
                                command);
        if (synth->parsed()) {
            if (preset_name.empty() && spec_path.empty())
                throw CLI::RequiredError("--preset or --spec");
            return cmd_synth(preset_name, spec_path, synth_seed, out_edges, out_labels);
        }
        if (stats->parsed()) return cmd_stats(stats_edges, stats_labels);
    } catch (const CLI::ParseError&) {
        std::cerr << "usage error: synth needs --preset or --spec\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return 0;
}

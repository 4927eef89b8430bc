// msnet: temporal-network analysis of microservice systems.
//
// File-based pipeline: every subcommand reads its inputs, writes its outputs
// atomically into --out, and records a manifest-<subcommand>.json so any run
// can be reproduced byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "msnet/centrality.hpp"
#include "msnet/cliques.hpp"
#include "msnet/communities.hpp"
#include "msnet/detect.hpp"
#include "msnet/epidemics.hpp"
#include "msnet/ingest.hpp"
#include "msnet/io.hpp"
#include "msnet/states.hpp"
#include "msnet/svg.hpp"
#include "msnet/synth.hpp"
#include "msnet/temporal_graph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flag-value format problems are usage errors (exit 2), not analysis errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
    const char* env = std::getenv("MSNET_OUT_DIR");
    return env ? env : ".";
}

fs::path resolve_input(const std::string& given, const std::string& default_name) {
    fs::path p(given);
    if (fs::is_directory(p)) return p / default_name;
    return p;
}

msnet::ContactStream load_stream(const std::string& given) {
    const fs::path path = resolve_input(given, "contacts.csv");
    const std::string text = msnet::read_file(path);
    if (path.extension() == ".jsonl") return msnet::parse_spans(text);
    return msnet::contacts_from_csv(text);
}

msnet::SnapshotSequence load_snapshots(const std::string& given) {
    const fs::path path = resolve_input(given, "snapshots.json");
    return msnet::parse_releases(msnet::read_file(path));
}

struct OutputBundle {
    fs::path dir;
    std::string subcommand;
    json inputs = json::object();
    json parameters = json::object();

    void write(const std::string& name, const std::string& content) const {
        fs::create_directories(dir);
        msnet::atomic_write_file(dir / name, content);
    }

    void write_manifest() const {
        json manifest;
        manifest["subcommand"] = subcommand;
        manifest["inputs"] = inputs;
        manifest["parameters"] = parameters;
        manifest["output_dir"] = dir.string();
        manifest["tool_version"] = msnet::kVersion;
        write("manifest-" + subcommand + ".json", manifest.dump(2) + "\n");
    }
};

// --- synth event flag parsing ------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::logic_error&) {
        throw UsageError("bad " + what + ": \"" + text + "\"");
    }
}

double parse_prob(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::logic_error&) {
        throw UsageError("bad " + what + ": \"" + text + "\"");
    }
}

// first:last[:node]
msnet::PlantedEvent parse_node_event(const std::string& spec, msnet::PlantedEvent::Kind kind,
                                     const std::string& flag) {
    const auto parts = split(spec, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw UsageError("--" + flag + " expects FIRST:LAST[:NODE], got \"" + spec + "\"");
    msnet::PlantedEvent ev;
    ev.kind = kind;
    ev.first = parse_int(parts[0], flag + " first");
    ev.last = parse_int(parts[1], flag + " last");
    if (parts.size() == 3) ev.node = parse_int(parts[2], flag + " node");
    return ev;
}

// SIZE@FIRST:LAST or id,id,...@FIRST:LAST
msnet::PlantedEvent parse_clique_event(const std::string& spec) {
    const auto at = split(spec, '@');
    if (at.size() != 2) throw UsageError("--clique expects SIZE@FIRST:LAST or IDS@FIRST:LAST");
    msnet::PlantedEvent ev;
    ev.kind = msnet::PlantedEvent::Kind::Clique;
    const auto range = split(at[1], ':');
    if (range.size() != 2) throw UsageError("--clique range must be FIRST:LAST");
    ev.first = parse_int(range[0], "clique first");
    ev.last = parse_int(range[1], "clique last");
    if (at[0].find(',') == std::string::npos) {
        ev.size = parse_int(at[0], "clique size");
    } else {
        for (const std::string& id : split(at[0], ','))
            ev.members.push_back(parse_int(id, "clique member"));
    }
    return ev;
}

// PROB@FIRST:LAST[:PERIOD]
msnet::PlantedEvent parse_state_switch(const std::string& spec) {
    const auto at = split(spec, '@');
    if (at.size() != 2) throw UsageError("--state-switch expects PROB@FIRST:LAST[:PERIOD]");
    msnet::PlantedEvent ev;
    ev.kind = msnet::PlantedEvent::Kind::StateSwitch;
    ev.alt_prob = parse_prob(at[0], "state-switch prob");
    const auto range = split(at[1], ':');
    if (range.size() < 2 || range.size() > 3)
        throw UsageError("--state-switch range must be FIRST:LAST[:PERIOD]");
    ev.first = parse_int(range[0], "state-switch first");
    ev.last = parse_int(range[1], "state-switch last");
    if (range.size() == 3) ev.period = parse_int(range[2], "state-switch period");
    return ev;
}

std::vector<msnet::NodeId> resolve_seed_nodes(const msnet::NodeRegistry& registry,
                                              const std::string& csv) {
    std::vector<msnet::NodeId> out;
    if (csv.empty()) return out;
    for (const std::string& name : split(csv, ',')) {
        const auto id = registry.find(name);
        if (!id) throw msnet::ValidationError("unknown service \"" + name + "\" in --seeds");
        out.push_back(*id);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal-network analysis of microservice systems"};
    app.require_subcommand(1);

    std::string out_dir = default_out_dir();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    // --- ingest-traces -------------------------------------------------------
    auto* ingest_traces = app.add_subcommand("ingest-traces", "span JSONL -> contact stream CSV");
    std::string traces_in;
    ingest_traces->add_option("--in", traces_in, "span file (JSON lines)")->required();

    // --- ingest-releases -----------------------------------------------------
    auto* ingest_releases =
        app.add_subcommand("ingest-releases", "release manifest -> normalized snapshots");
    std::string releases_in;
    ingest_releases->add_option("--in", releases_in, "release manifest JSON")->required();

    // --- synth ---------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate an evolving system with ground truth");
    int synth_services = 0, synth_versions = 0;
    std::uint64_t synth_seed = 0;
    double synth_base_prob = 0.05, synth_persistence = 0.9;
    std::vector<std::string> hub_specs, clique_specs, split_specs, switch_specs;
    int synth_traces_n = 0, synth_trace_depth = 4;
    std::uint64_t synth_trace_seed = 1;
    synth->add_option("--services", synth_services, "number of services")->required();
    synth->add_option("--versions", synth_versions, "number of versions")->required();
    synth->add_option("--seed", synth_seed, "generator seed")->required();
    synth->add_option("--base-prob", synth_base_prob, "base edge probability")
        ->capture_default_str();
    synth->add_option("--persistence", synth_persistence, "edge carry-over probability")
        ->capture_default_str();
    synth->add_option("--hub", hub_specs, "planted hub FIRST:LAST[:NODE] (repeatable)");
    synth->add_option("--clique", clique_specs,
                      "planted clique SIZE@FIRST:LAST or IDS@FIRST:LAST (repeatable)");
    synth->add_option("--split", split_specs, "planted split FIRST:LAST[:NODE] (repeatable)");
    synth->add_option("--state-switch", switch_specs,
                      "density regime PROB@FIRST:LAST[:PERIOD] (repeatable)");
    synth->add_option("--traces", synth_traces_n, "also emit this many synthetic requests");
    synth->add_option("--trace-depth", synth_trace_depth, "max hops per request")
        ->capture_default_str();
    synth->add_option("--trace-seed", synth_trace_seed, "trace generator seed")
        ->capture_default_str();

    // --- centrality ------------------------------------------------------------
    auto* centrality = app.add_subcommand("centrality", "supra-adjacency temporal centrality");
    std::string centrality_in;
    double centrality_omega = 0.0, centrality_tol = 1e-10;
    int centrality_max_iter = 10000;
    bool centrality_plot = false;
    centrality->add_option("--in", centrality_in, "snapshots.json or directory")->required();
    centrality->add_option("--omega", centrality_omega, "inter-layer coupling strength")
        ->required();
    centrality->add_option("--tol", centrality_tol, "power iteration residual tolerance")
        ->capture_default_str();
    centrality->add_option("--max-iter", centrality_max_iter, "power iteration cap")
        ->capture_default_str();
    centrality->add_flag("--plot", centrality_plot, "emit centrality.svg trajectories");

    // --- katz-stream -----------------------------------------------------------
    auto* katz = app.add_subcommand("katz-stream", "streaming temporal Katz centrality");
    std::string katz_in;
    double katz_beta = 0.5, katz_c = 0.0;
    std::int64_t katz_query_at = -1;
    katz->add_option("--in", katz_in, "spans .jsonl or contacts .csv")->required();
    katz->add_option("--beta", katz_beta, "walk attenuation in (0,1]")->capture_default_str();
    katz->add_option("--c", katz_c, "decay rate per time unit")->capture_default_str();
    katz->add_option("--query-at", katz_query_at,
                     "evaluation timestamp (defaults to the stream end)");

    // --- communities -------------------------------------------------------------
    auto* communities = app.add_subcommand("communities", "temporal communities via NTF");
    std::string communities_in;
    int communities_rank = 0, communities_restarts = 5, communities_max_iter = 500;
    double communities_tol = 1e-6, node_threshold = 0.5, time_threshold = 0.5;
    std::uint64_t communities_seed = 0;
    communities->add_option("--in", communities_in, "snapshots.json or directory")->required();
    communities->add_option("--rank", communities_rank, "number of communities R")->required();
    communities->add_option("--restarts", communities_restarts, "seeded restarts, best kept")
        ->capture_default_str();
    communities->add_option("--seed", communities_seed, "base seed")->capture_default_str();
    communities->add_option("--max-iter", communities_max_iter, "update iterations cap")
        ->capture_default_str();
    communities->add_option("--tol", communities_tol, "relative improvement stop")
        ->capture_default_str();
    communities->add_option("--node-threshold", node_threshold, "membership threshold (0,1]")
        ->capture_default_str();
    communities->add_option("--time-threshold", time_threshold, "activity threshold (0,1]")
        ->capture_default_str();

    // --- sis ---------------------------------------------------------------------
    auto* sis = app.add_subcommand("sis", "SIS spreading over the snapshot sequence");
    std::string sis_in, sis_seeds;
    double sis_beta = 0.0, sis_mu = 0.0;
    int sis_steps = 1, sis_runs = 1;
    std::uint64_t sis_seed = 0;
    bool sis_plot = false;
    sis->add_option("--in", sis_in, "snapshots.json or directory")->required();
    sis->add_option("--beta", sis_beta, "per-contact infection probability")->required();
    sis->add_option("--mu", sis_mu, "per-step recovery probability")->required();
    sis->add_option("--seeds", sis_seeds, "comma-separated seed service names")->required();
    sis->add_option("--steps-per-layer", sis_steps, "steps before the layer advances")
        ->capture_default_str();
    sis->add_option("--runs", sis_runs, "ensemble size")->capture_default_str();
    sis->add_option("--seed", sis_seed, "rng seed")->capture_default_str();
    sis->add_flag("--plot", sis_plot, "emit sis.svg of the mean prevalence");

    // --- states --------------------------------------------------------------------
    auto* states = app.add_subcommand("states", "system-state detection over layers");
    std::string states_in, states_metric = "frobenius";
    int states_k = 0;
    std::int64_t states_window = 0;
    states->add_option("--in", states_in, "snapshots.json or contacts.csv")->required();
    states->add_option("--metric", states_metric, "frobenius | spectral")->capture_default_str();
    states->add_option("--k", states_k, "state count (silhouette-chosen when omitted)");
    states->add_option("--window", states_window,
                       "window length for contact-stream input (required for .csv)");

    // --- cliques ---------------------------------------------------------------------
    auto* cliques = app.add_subcommand("cliques", "maximal delta-cliques of a contact stream");
    std::string cliques_in;
    std::int64_t cliques_delta = 0;
    int cliques_max_nodes = 0;
    std::vector<std::int64_t> cliques_sweep;
    cliques->add_option("--in", cliques_in, "contacts.csv or directory")->required();
    cliques->add_option("--delta", cliques_delta, "window parameter")->required();
    cliques->add_option("--max-nodes", cliques_max_nodes, "cap clique size (0 = unlimited)")
        ->capture_default_str();
    cliques->add_option("--sweep", cliques_sweep,
                        "extra delta values to summarize in sweep.csv (helps pick delta)");

    // --- detect ----------------------------------------------------------------------
    auto* detect = app.add_subcommand("detect", "map analysis artifacts to findings");
    std::string detect_centrality, detect_snapshots, detect_cliques_path, detect_states_path;
    double detect_theta = 0.0, detect_min_slope = msnet::kDefaultMinSlope;
    double detect_min_fraction = msnet::kDefaultIntimacyMinFraction;
    double detect_minority = msnet::kDefaultMaxMinorityFraction;
    int detect_min_size = msnet::kDefaultIntimacyMinSize;
    std::int64_t detect_span = 0;
    detect->add_option("--centrality", detect_centrality, "centrality.json for bottlenecks");
    detect->add_option("--snapshots", detect_snapshots, "snapshots.json for cycle detection");
    detect->add_option("--cliques", detect_cliques_path, "cliques.json for intimacy");
    detect->add_option("--span", detect_span, "observation span for --cliques");
    detect->add_option("--states", detect_states_path, "states.json for anomalies");
    detect->add_option("--theta", detect_theta, "bottleneck centrality threshold (default 3/N)");
    detect->add_option("--min-slope", detect_min_slope, "bottleneck trend threshold")
        ->capture_default_str();
    detect->add_option("--min-size", detect_min_size, "intimacy clique size threshold")
        ->capture_default_str();
    detect->add_option("--min-fraction", detect_min_fraction, "intimacy span fraction threshold")
        ->capture_default_str();
    detect->add_option("--max-minority-fraction", detect_minority, "state anomaly threshold")
        ->capture_default_str();

    // --- report ------------------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "render report.json as text");
    std::string report_in;
    report_cmd->add_option("--in", report_in, "report.json or directory")->required();

    // --out is a top-level option; let it appear after the subcommand too.
    for (CLI::App* sub : {ingest_traces, ingest_releases, synth, centrality, katz, communities,
                          sis, states, cliques, detect, report_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        OutputBundle bundle;
        bundle.dir = out_dir;

        if (*ingest_traces) {
            bundle.subcommand = "ingest-traces";
            bundle.inputs["in"] = traces_in;
            msnet::SpanParseStats stats;
            const auto stream = msnet::parse_spans(msnet::read_file(traces_in), &stats);
            bundle.parameters["dangling_parents"] = stats.dangling_parents;
            bundle.parameters["spans"] = stats.spans;
            bundle.write("contacts.csv", msnet::contacts_to_csv(stream));
            bundle.write_manifest();
        } else if (*ingest_releases) {
            bundle.subcommand = "ingest-releases";
            bundle.inputs["in"] = releases_in;
            const auto seq = msnet::parse_releases(msnet::read_file(releases_in));
            bundle.write("snapshots.json", msnet::snapshots_to_json(seq));
            bundle.write_manifest();
        } else if (*synth) {
            bundle.subcommand = "synth";
            msnet::SynthConfig cfg;
            cfg.n_services = synth_services;
            cfg.n_versions = synth_versions;
            cfg.base_edge_prob = synth_base_prob;
            cfg.persistence = synth_persistence;
            cfg.seed = synth_seed;
            for (const auto& s : hub_specs)
                cfg.events.push_back(parse_node_event(s, msnet::PlantedEvent::Kind::Hub, "hub"));
            for (const auto& s : clique_specs) cfg.events.push_back(parse_clique_event(s));
            for (const auto& s : split_specs)
                cfg.events.push_back(
                    parse_node_event(s, msnet::PlantedEvent::Kind::Split, "split"));
            for (const auto& s : switch_specs) cfg.events.push_back(parse_state_switch(s));
            bundle.parameters = {{"services", synth_services}, {"versions", synth_versions},
                                 {"seed", synth_seed},         {"base_prob", synth_base_prob},
                                 {"persistence", synth_persistence}};
            if (!hub_specs.empty()) bundle.parameters["hub"] = hub_specs;
            if (!clique_specs.empty()) bundle.parameters["clique"] = clique_specs;
            if (!split_specs.empty()) bundle.parameters["split"] = split_specs;
            if (!switch_specs.empty()) bundle.parameters["state_switch"] = switch_specs;

            const auto result = msnet::synth_evolution(cfg);
            std::optional<msnet::ContactStream> traces;
            if (synth_traces_n > 0) {
                bundle.parameters["traces"] = synth_traces_n;
                bundle.parameters["trace_depth"] = synth_trace_depth;
                bundle.parameters["trace_seed"] = synth_trace_seed;
                traces = msnet::synth_traces(result.sequence, synth_traces_n, synth_trace_depth,
                                             synth_trace_seed);
            }
            bundle.write("snapshots.json", msnet::snapshots_to_json(result.sequence));
            bundle.write("ground_truth.json",
                         msnet::ground_truth_to_json(result.truth, result.sequence.registry()));
            if (traces) bundle.write("traces.csv", msnet::contacts_to_csv(*traces));
            bundle.write_manifest();
        } else if (*centrality) {
            bundle.subcommand = "centrality";
            bundle.inputs["in"] = centrality_in;
            bundle.parameters = {{"omega", centrality_omega},
                                 {"tol", centrality_tol},
                                 {"max_iter", centrality_max_iter}};
            const auto seq = load_snapshots(centrality_in);
            const auto result =
                msnet::supra_centrality(seq, centrality_omega, centrality_tol, centrality_max_iter);
            std::vector<std::string> labels;
            for (const auto& layer : seq.layers()) labels.push_back(layer.label);
            bundle.write("centrality.json",
                         msnet::supra_result_to_json(result, seq.registry().names(), labels));
            bundle.write("conditional.csv",
                         msnet::matrix_to_layer_csv(result.conditional, seq.registry().names()));
            if (centrality_plot) {
                // top nodes by marginal centrality, conditional trajectory each
                std::vector<int> order(static_cast<std::size_t>(seq.node_count()));
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
                std::sort(order.begin(), order.end(), [&](int a, int b) {
                    if (result.marginal_node(a) != result.marginal_node(b))
                        return result.marginal_node(a) > result.marginal_node(b);
                    return a < b;
                });
                std::vector<msnet::Series> series;
                for (std::size_t i = 0; i < order.size() && i < 5; ++i) {
                    msnet::Series s;
                    s.label = seq.registry().name(order[i]);
                    for (int t = 0; t < seq.layer_count(); ++t)
                        s.values.push_back(result.conditional(t, order[i]));
                    series.push_back(std::move(s));
                }
                bundle.write("centrality.svg",
                             msnet::emit_plot(series, "conditional centrality", "layer", "share"));
            }
            bundle.write_manifest();
        } else if (*katz) {
            bundle.subcommand = "katz-stream";
            bundle.inputs["in"] = katz_in;
            const auto stream = load_stream(katz_in);
            const msnet::Timestamp at_t = katz_query_at >= 0
                                              ? katz_query_at
                                              : (stream.empty() ? 0 : stream.t_max());
            bundle.parameters = {{"beta", katz_beta}, {"c", katz_c}, {"query_at", at_t}};
            const msnet::Vector scores = msnet::katz_scores(stream, katz_beta, katz_c, at_t);
            bundle.write("katz.csv",
                         msnet::scores_to_csv(scores, stream.registry().names(), at_t));
            bundle.write_manifest();
        } else if (*communities) {
            bundle.subcommand = "communities";
            bundle.inputs["in"] = communities_in;
            bundle.parameters = {{"rank", communities_rank},
                                 {"restarts", communities_restarts},
                                 {"seed", communities_seed},
                                 {"max_iter", communities_max_iter},
                                 {"tol", communities_tol},
                                 {"node_threshold", node_threshold},
                                 {"time_threshold", time_threshold}};
            const auto seq = load_snapshots(communities_in);
            msnet::NtfOptions options;
            options.max_iter = communities_max_iter;
            options.tol = communities_tol;
            options.seed = communities_seed;
            const auto factors =
                msnet::ntf_factorize_restarts(seq, communities_rank, communities_restarts, options);
            const auto assignment =
                msnet::assign_communities(factors, node_threshold, time_threshold);
            bundle.write("communities.json",
                         msnet::factors_to_json(factors, assignment, seq.registry().names()));
            bundle.write("time_factor.csv", msnet::time_factor_to_csv(factors.time_factor));
            bundle.write_manifest();
        } else if (*sis) {
            bundle.subcommand = "sis";
            bundle.inputs["in"] = sis_in;
            const auto seq = load_snapshots(sis_in);
            msnet::SISConfig cfg;
            cfg.beta_inf = sis_beta;
            cfg.mu = sis_mu;
            cfg.seeds = resolve_seed_nodes(seq.registry(), sis_seeds);
            cfg.steps_per_layer = sis_steps;
            cfg.rng_seed = sis_seed;
            bundle.parameters = {{"beta", sis_beta},   {"mu", sis_mu},
                                 {"seeds", sis_seeds}, {"steps_per_layer", sis_steps},
                                 {"runs", sis_runs},   {"seed", sis_seed}};
            const auto ensemble = msnet::sis_ensemble(seq, cfg, sis_runs);
            bundle.write("sis.csv", msnet::ensemble_to_csv(ensemble));
            bundle.write("sis.json", msnet::ensemble_to_json(ensemble));
            if (sis_plot)
                bundle.write("sis.svg", msnet::emit_plot({{"mean prevalence", ensemble.mean}},
                                                         "SIS prevalence", "step", "prevalence"));
            bundle.write_manifest();
        } else if (*states) {
            bundle.subcommand = "states";
            bundle.inputs["in"] = states_in;
            const fs::path in_path = resolve_input(states_in, "snapshots.json");
            msnet::SnapshotSequence seq;
            if (in_path.extension() == ".csv") {
                if (states_window <= 0)
                    throw UsageError("--window is required for contact-stream input");
                seq = msnet::windowed_snapshots(msnet::contacts_from_csv(msnet::read_file(in_path)),
                                                states_window);
            } else {
                seq = msnet::parse_releases(msnet::read_file(in_path));
            }
            bundle.parameters = {{"metric", states_metric}, {"window", states_window}};
            if (states_k > 0) bundle.parameters["k"] = states_k;
            const auto dist =
                msnet::distance_matrix(seq, msnet::distance_metric_from_string(states_metric));
            const auto labeling = msnet::cluster_states(
                dist, states_k > 0 ? std::optional<int>(states_k) : std::nullopt);
            bundle.write("states.json", msnet::labeling_to_json(labeling));
            bundle.write("distance.csv", msnet::distance_to_csv(dist));
            bundle.write_manifest();
        } else if (*cliques) {
            bundle.subcommand = "cliques";
            bundle.inputs["in"] = cliques_in;
            bundle.parameters = {{"delta", cliques_delta}, {"max_nodes", cliques_max_nodes}};
            const auto stream = load_stream(cliques_in);
            const auto report = msnet::delta_cliques(stream, cliques_delta, cliques_max_nodes);
            bundle.parameters["t_min"] = report.t_min;
            bundle.parameters["t_max"] = report.t_max;
            std::string sweep_csv;
            if (!cliques_sweep.empty()) {
                bundle.parameters["sweep"] = cliques_sweep;
                sweep_csv = "delta,cliques,max_members,max_span\n";
                std::vector<std::int64_t> deltas = cliques_sweep;
                deltas.push_back(cliques_delta);
                std::sort(deltas.begin(), deltas.end());
                deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
                for (const std::int64_t d : deltas) {
                    const auto swept = msnet::delta_cliques(stream, d, cliques_max_nodes);
                    std::size_t max_members = 0;
                    msnet::Timestamp max_span = 0;
                    for (const auto& c : swept.cliques) {
                        max_members = std::max(max_members, c.members.size());
                        max_span = std::max(max_span, c.e - c.b);
                    }
                    sweep_csv += std::to_string(d) + "," + std::to_string(swept.cliques.size()) +
                                 "," + std::to_string(max_members) + "," +
                                 std::to_string(max_span) + "\n";
                }
            }
            bundle.write("cliques.json",
                         msnet::clique_report_to_json(report, stream.registry().names()));
            if (!sweep_csv.empty()) bundle.write("sweep.csv", sweep_csv);
            bundle.write_manifest();
        } else if (*detect) {
            bundle.subcommand = "detect";
            msnet::Report report;
            report.tool_version = msnet::kVersion;
            std::vector<std::vector<msnet::Finding>> groups;

            if (!detect_centrality.empty()) {
                const fs::path path = resolve_input(detect_centrality, "centrality.json");
                const std::string text = msnet::read_file(path);
                std::vector<std::string> names;
                const auto result = msnet::supra_result_from_json(text, &names);
                const double theta = detect_theta > 0.0
                                         ? detect_theta
                                         : msnet::default_bottleneck_theta(
                                               static_cast<int>(names.size()));
                report.artifacts[path.filename().string()] = msnet::fingerprint(text);
                report.parameters["theta"] = msnet::format_double(theta);
                report.parameters["min_slope"] = msnet::format_double(detect_min_slope);
                bundle.inputs["centrality"] = detect_centrality;
                groups.push_back(msnet::detect_bottleneck(result, names, theta, detect_min_slope,
                                                          path.filename().string()));
            }
            if (!detect_snapshots.empty()) {
                const fs::path path = resolve_input(detect_snapshots, "snapshots.json");
                const std::string text = msnet::read_file(path);
                const auto seq = msnet::parse_releases(text);
                report.artifacts[path.filename().string()] = msnet::fingerprint(text);
                bundle.inputs["snapshots"] = detect_snapshots;
                groups.push_back(msnet::detect_cycles(msnet::aggregate_static(seq),
                                                      seq.registry().names(),
                                                      path.filename().string()));
            }
            if (!detect_cliques_path.empty()) {
                if (detect_span <= 0)
                    throw UsageError("--span is required alongside --cliques");
                const fs::path path = resolve_input(detect_cliques_path, "cliques.json");
                const std::string text = msnet::read_file(path);
                msnet::NodeRegistry registry;
                const auto clique_report = msnet::clique_report_from_json(text, registry);
                report.artifacts[path.filename().string()] = msnet::fingerprint(text);
                report.parameters["min_size"] = std::to_string(detect_min_size);
                report.parameters["min_fraction"] = msnet::format_double(detect_min_fraction);
                report.parameters["span"] = std::to_string(detect_span);
                bundle.inputs["cliques"] = detect_cliques_path;
                groups.push_back(msnet::detect_intimacy(clique_report, registry.names(),
                                                        detect_span, detect_min_size,
                                                        detect_min_fraction,
                                                        path.filename().string()));
            }
            if (!detect_states_path.empty()) {
                const fs::path path = resolve_input(detect_states_path, "states.json");
                const std::string text = msnet::read_file(path);
                const auto labeling = msnet::labeling_from_json(text);
                report.artifacts[path.filename().string()] = msnet::fingerprint(text);
                report.parameters["max_minority_fraction"] =
                    msnet::format_double(detect_minority);
                bundle.inputs["states"] = detect_states_path;
                groups.push_back(msnet::detect_state_anomaly(labeling, detect_minority,
                                                             path.filename().string()));
            }
            report.findings = msnet::merge_findings(std::move(groups));
            bundle.parameters = json::object();
            for (const auto& [key, value] : report.parameters) bundle.parameters[key] = value;
            bundle.write("report.json", msnet::report_to_json(report));
            bundle.write_manifest();
        } else if (*report_cmd) {
            bundle.subcommand = "report";
            bundle.inputs["in"] = report_in;
            const fs::path path = resolve_input(report_in, "report.json");
            const json doc = json::parse(msnet::read_file(path));
            msnet::Report report;
            report.tool_version = doc.value("tool_version", std::string{});
            for (const auto& jf : doc.at("findings")) {
                msnet::Finding f;
                const std::string kind = jf.at("kind").get<std::string>();
                if (kind == "bottleneck") f.kind = msnet::FindingKind::Bottleneck;
                else if (kind == "cyclic_dependency") f.kind = msnet::FindingKind::CyclicDependency;
                else if (kind == "service_intimacy") f.kind = msnet::FindingKind::ServiceIntimacy;
                else f.kind = msnet::FindingKind::StateAnomaly;
                f.subject_nodes = jf.at("subject_nodes").get<std::vector<std::string>>();
                f.subject_layers = jf.at("subject_layers").get<std::vector<int>>();
                f.score = jf.at("score").get<double>();
                f.evidence = jf.at("evidence").get<std::string>();
                report.findings.push_back(std::move(f));
            }
            const std::string text = msnet::report_to_text(report);
            std::cout << text;
            bundle.write("report.txt", text);
            bundle.write_manifest();
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const msnet::AnalysisError& e) {
        json err;
        err["error"]["type"] = "analysis";
        err["error"]["message"] = e.what();
        if (e.residual() > 0.0) err["error"]["residual"] = e.residual();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const msnet::ParseError& e) {
        json err;
        err["error"]["type"] = "parse";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const msnet::ValidationError& e) {
        json err;
        err["error"]["type"] = "validation";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"]["type"] = "error";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "msnet/centrality.hpp"
#include "msnet/cliques.hpp"
#include "msnet/states.hpp"
#include "msnet/temporal_graph.hpp"

namespace msnet {

enum class FindingKind { Bottleneck, CyclicDependency, ServiceIntimacy, StateAnomaly };

std::string to_string(FindingKind kind);

// One degradation finding. Detectors are pure functions over analysis
// outputs; the evidence key names the artifact the numbers came from.
struct Finding {
    FindingKind kind = FindingKind::Bottleneck;
    std::vector<std::string> subject_nodes;
    std::vector<int> subject_layers;
    double score = 0.0;
    std::string evidence;
    std::map<std::string, double> thresholds;
};

struct Report {
    std::vector<Finding> findings;  // sorted by kind, score desc, subject
    std::map<std::string, std::string> artifacts;   // evidence key -> content fingerprint
    std::map<std::string, std::string> parameters;  // run parameters, verbatim
    std::string tool_version;
};

// Default thresholds; configuration values, not empirical claims.
inline constexpr double kDefaultMinSlope = 0.0;
inline constexpr int kDefaultIntimacyMinSize = 3;
inline constexpr double kDefaultIntimacyMinFraction = 0.5;
inline constexpr double kDefaultMaxMinorityFraction = 0.2;
// theta defaults to 3/N, clamped into (0,1] (uniform centrality is 1/N).
double default_bottleneck_theta(int node_count);

// A node whose conditional centrality both reaches theta somewhere and trends
// upward (least-squares slope over layers >= min_slope) is flagged.
std::vector<Finding> detect_bottleneck(const SupraCentralityResult& result,
                                       const std::vector<std::string>& names, double theta,
                                       double min_slope, const std::string& evidence);

// Strongly connected components of size >= 2 in the aggregated digraph.
std::vector<Finding> detect_cycles(const Snapshot& aggregate, const std::vector<std::string>& names,
                                   const std::string& evidence);

// Delta-cliques that are large and persistent enough relative to the
// observation span.
std::vector<Finding> detect_intimacy(const CliqueReport& report,
                                     const std::vector<std::string>& names,
                                     Timestamp observation_span, int min_size, double min_fraction,
                                     const std::string& evidence);

// States occupying at most max_minority_fraction of layers are anomalous.
std::vector<Finding> detect_state_anomaly(const StateLabeling& labeling,
                                          double max_minority_fraction,
                                          const std::string& evidence);

// Deterministic merge: kind, then score descending, then subject.
std::vector<Finding> merge_findings(std::vector<std::vector<Finding>> groups);

}  // namespace msnet

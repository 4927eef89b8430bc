#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// Planted structural events. Each overrides the base evolving graph inside its
// inclusive version range [first, last] and is recorded in the ground truth.
struct PlantedEvent {
    enum class Kind { Hub, Clique, Split, StateSwitch };
    Kind kind = Kind::Hub;
    int first = 0;
    int last = 0;

    // Hub / Split: node to use; drawn from the seed when absent.
    std::optional<NodeId> node;
    // Hub: weight of the planted in-edges (call multiplicity per version).
    double weight = 3.0;
    // Clique: explicit members, or `size` members drawn from the seed.
    std::vector<NodeId> members;
    int size = 0;
    // StateSwitch: edge probability of the alternate regime, and the block
    // period of alternation inside the range (0 = the whole range is the
    // alternate regime).
    double alt_prob = 0.0;
    int period = 0;
};

struct SynthConfig {
    int n_services = 0;
    int n_versions = 0;
    double base_edge_prob = 0.0;
    double persistence = 0.9;  // chance an existing edge survives into the next version
    std::vector<PlantedEvent> events;
    std::uint64_t seed = 0;
};

struct HubTruth {
    NodeId node;
    int first, last;
};
struct CliqueTruth {
    std::vector<NodeId> members;
    int first, last;
};
struct SplitTruth {
    NodeId node, partner;
    int first, last;
};

// What was planted, by construction; the oracle for every detector test.
struct GroundTruth {
    std::vector<HubTruth> hubs;
    std::vector<CliqueTruth> cliques;
    std::vector<SplitTruth> splits;
    std::vector<int> state_labels;  // one regime label per version
};

struct SynthResult {
    SnapshotSequence sequence;
    GroundTruth truth;
};

// Deterministic evolving system: directed Erdos-Renyi layers with edge
// persistence between consecutive versions, plus planted events. Identical
// configs produce bitwise-identical output.
SynthResult synth_evolution(const SynthConfig& cfg);

// Replays random requests over the sequence: each request enters at a node
// weighted by out-strength of a weight-picked layer and walks out-edges up to
// max_depth hops, emitting contacts with strictly increasing timestamps.
ContactStream synth_traces(const SnapshotSequence& seq, int n_requests, int max_depth,
                           std::uint64_t seed);

}  // namespace msnet

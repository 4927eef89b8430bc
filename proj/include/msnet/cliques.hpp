#pragma once

#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// Node set whose every pair interacts at least once in every delta-window of
// [b, e] (direction ignored). Interval endpoints are observed contact times.
struct DeltaClique {
    std::vector<NodeId> members;  // sorted, |members| >= 2
    Timestamp b = 0;
    Timestamp e = 0;
    Timestamp delta = 0;
};

struct CliqueReport {
    std::vector<DeltaClique> cliques;  // (|X| desc, e-b desc, members lex, b asc)
    Timestamp delta = 0;
    Timestamp t_min = 0;  // observation bounds of the source stream
    Timestamp t_max = 0;
};

// All maximal delta-cliques of the stream's undirected projection. Seeds one
// candidate per contact, grows by node addition and interval extension to a
// fixpoint, then prunes dominated candidates (subset members within a
// subinterval). max_nodes_hint > 0 caps clique size.
CliqueReport delta_cliques(const ContactStream& stream, Timestamp delta, int max_nodes_hint = 0);

// Exhaustive ground truth: every node subset x every observed-endpoint
// interval, predicate checked directly. Refuses instances beyond 8 nodes or
// 40 contacts.
CliqueReport clique_oracle(const ContactStream& stream, Timestamp delta);

}  // namespace msnet

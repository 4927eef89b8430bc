#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "msnet/common.hpp"

namespace msnet {

// Dense, stable service-name <-> id mapping. Ids are assigned in first-seen
// order and never change once handed out.
class NodeRegistry {
public:
    NodeRegistry() = default;

    // Returns the id of `name`, assigning the next dense id on first sight.
    NodeId add(const std::string& name);

    std::optional<NodeId> find(const std::string& name) const;

    const std::string& name(NodeId id) const { return names_.at(static_cast<std::size_t>(id)); }
    const std::vector<std::string>& names() const { return names_; }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
};

// One timestamped caller -> callee call.
struct Contact {
    NodeId src = 0;
    NodeId dst = 0;
    Timestamp t = 0;
    double weight = 1.0;
};

inline bool contact_order(const Contact& a, const Contact& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.weight < b.weight;
}

// Time-ordered stream of contacts over a shared registry. Immutable once
// built; build() sorts by (t, src, dst), keeps parallel duplicates, and drops
// self-calls with a count.
class ContactStream {
public:
    ContactStream() = default;

    static ContactStream build(NodeRegistry registry, std::vector<Contact> contacts);

    const NodeRegistry& registry() const { return registry_; }
    const std::vector<Contact>& contacts() const { return contacts_; }
    bool empty() const { return contacts_.empty(); }
    std::size_t size() const { return contacts_.size(); }
    std::size_t dropped_self_calls() const { return dropped_self_calls_; }

    Timestamp t_min() const { return contacts_.front().t; }  // requires non-empty
    Timestamp t_max() const { return contacts_.back().t; }

    double total_weight() const;

private:
    NodeRegistry registry_;
    std::vector<Contact> contacts_;
    std::size_t dropped_self_calls_ = 0;
};

// One time layer: dense N x N weighted digraph, zero diagonal.
struct Snapshot {
    Matrix adjacency;
    std::string label;
};

// Ordered layers over a fixed registry; the release-side temporal network.
class SnapshotSequence {
public:
    SnapshotSequence() = default;

    // Validates layer dimensions, non-negative weights and zero diagonals.
    static SnapshotSequence build(NodeRegistry registry, std::vector<Snapshot> layers);

    const NodeRegistry& registry() const { return registry_; }
    const std::vector<Snapshot>& layers() const { return layers_; }
    const Snapshot& layer(int t) const { return layers_.at(static_cast<std::size_t>(t)); }
    int layer_count() const { return static_cast<int>(layers_.size()); }
    int node_count() const { return registry_.size(); }

private:
    NodeRegistry registry_;
    std::vector<Snapshot> layers_;
};

// Bins contacts into half-open windows [t0 + k*window, t0 + (k+1)*window),
// summing weights per edge. Contacts before t0 are a contract violation (the
// result must conserve total weight). Empty stream -> T = 0.
SnapshotSequence windowed_snapshots(const ContactStream& stream, Timestamp window, Timestamp t0 = 0);

// Time-aggregated static graph: the baseline where order and frequency of
// calls collapse into a single weight.
Snapshot aggregate_static(const SnapshotSequence& seq);
Snapshot aggregate_static(const ContactStream& stream);

// Weakly-connected component label per node on the symmetrized, time-aggregated
// graph. Labels are dense, assigned in node-id order.
std::vector<int> union_connectivity(const SnapshotSequence& seq);

}  // namespace msnet

#include "msnet/temporal_graph.hpp"

#include <algorithm>
#include <cmath>

namespace msnet {

NodeId NodeRegistry::add(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

std::optional<NodeId> NodeRegistry::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ContactStream ContactStream::build(NodeRegistry registry, std::vector<Contact> contacts) {
    ContactStream out;
    const int n = registry.size();
    std::vector<Contact> kept;
    kept.reserve(contacts.size());
    for (const Contact& c : contacts) {
        if (c.src < 0 || c.src >= n || c.dst < 0 || c.dst >= n)
            throw std::invalid_argument("contact references node id outside registry");
        if (c.t < 0) throw std::invalid_argument("contact timestamp must be non-negative");
        if (!(c.weight > 0.0)) throw std::invalid_argument("contact weight must be positive");
        if (c.src == c.dst) {
            ++out.dropped_self_calls_;
            continue;
        }
        kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), contact_order);
    out.registry_ = std::move(registry);
    out.contacts_ = std::move(kept);
    return out;
}

double ContactStream::total_weight() const {
    double sum = 0.0;
    for (const Contact& c : contacts_) sum += c.weight;
    return sum;
}

SnapshotSequence SnapshotSequence::build(NodeRegistry registry, std::vector<Snapshot> layers) {
    const int n = registry.size();
    for (std::size_t t = 0; t < layers.size(); ++t) {
        const Matrix& a = layers[t].adjacency;
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("layer " + std::to_string(t) + " has dimension " +
                                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                        ", registry has " + std::to_string(n) + " nodes");
        if ((a.array() < 0.0).any())
            throw std::invalid_argument("layer " + std::to_string(t) + " has a negative weight");
        if (a.diagonal().cwiseAbs().sum() != 0.0)
            throw std::invalid_argument("layer " + std::to_string(t) + " has self-loop weight");
    }
    SnapshotSequence out;
    out.registry_ = std::move(registry);
    out.layers_ = std::move(layers);
    return out;
}

SnapshotSequence windowed_snapshots(const ContactStream& stream, Timestamp window, Timestamp t0) {
    if (window <= 0) throw std::invalid_argument("window must be positive");
    const int n = stream.registry().size();
    if (stream.empty()) return SnapshotSequence::build(stream.registry(), {});
    if (stream.t_min() < t0)
        throw std::invalid_argument("stream has contacts before t0; they would be dropped");

    const Timestamp span = stream.t_max() - t0 + 1;
    const int layer_count = static_cast<int>((span + window - 1) / window);
    std::vector<Snapshot> layers(static_cast<std::size_t>(layer_count));
    for (int k = 0; k < layer_count; ++k) {
        layers[static_cast<std::size_t>(k)].adjacency = Matrix::Zero(n, n);
        layers[static_cast<std::size_t>(k)].label = "w" + std::to_string(k);
    }
    for (const Contact& c : stream.contacts()) {
        const int k = static_cast<int>((c.t - t0) / window);
        layers[static_cast<std::size_t>(k)].adjacency(c.src, c.dst) += c.weight;
    }
    return SnapshotSequence::build(stream.registry(), std::move(layers));
}

Snapshot aggregate_static(const SnapshotSequence& seq) {
    const int n = seq.node_count();
    Snapshot out;
    out.adjacency = Matrix::Zero(n, n);
    out.label = "aggregate";
    for (const Snapshot& layer : seq.layers()) out.adjacency += layer.adjacency;
    return out;
}

Snapshot aggregate_static(const ContactStream& stream) {
    const int n = stream.registry().size();
    Snapshot out;
    out.adjacency = Matrix::Zero(n, n);
    out.label = "aggregate";
    for (const Contact& c : stream.contacts()) out.adjacency(c.src, c.dst) += c.weight;
    return out;
}

std::vector<int> union_connectivity(const SnapshotSequence& seq) {
    const int n = seq.node_count();
    const Matrix agg = aggregate_static(seq).adjacency;
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int next = 0;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (label[static_cast<std::size_t>(start)] != -1) continue;
        label[static_cast<std::size_t>(start)] = next;
        stack.assign(1, start);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (label[static_cast<std::size_t>(v)] == -1 && (agg(u, v) > 0.0 || agg(v, u) > 0.0)) {
                    label[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

}  // namespace msnet

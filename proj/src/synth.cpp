#include "msnet/synth.hpp"

#include <algorithm>
#include <cmath>

#include "msnet/rng.hpp"

namespace msnet {

namespace {

void validate(const SynthConfig& cfg) {
    if (cfg.n_services <= 0) throw std::invalid_argument("n_services must be positive");
    if (cfg.n_versions <= 0) throw std::invalid_argument("n_versions must be positive");
    if (cfg.base_edge_prob < 0.0 || cfg.base_edge_prob > 1.0)
        throw std::invalid_argument("base_edge_prob must be in [0,1]");
    if (cfg.persistence < 0.0 || cfg.persistence > 1.0)
        throw std::invalid_argument("persistence must be in [0,1]");
    for (const PlantedEvent& ev : cfg.events) {
        if (ev.first < 0 || ev.last >= cfg.n_versions || ev.first > ev.last)
            throw std::invalid_argument("event version range outside [0, n_versions)");
        if (ev.kind == PlantedEvent::Kind::Clique) {
            const int size = ev.members.empty() ? ev.size : static_cast<int>(ev.members.size());
            if (size < 2 || size > cfg.n_services)
                throw std::invalid_argument("clique size must be in [2, n_services]");
            for (NodeId m : ev.members)
                if (m < 0 || m >= cfg.n_services)
                    throw std::invalid_argument("clique member id outside registry");
        }
        if (ev.kind == PlantedEvent::Kind::StateSwitch &&
            (ev.alt_prob < 0.0 || ev.alt_prob > 1.0))
            throw std::invalid_argument("state_switch alt_prob must be in [0,1]");
        if ((ev.kind == PlantedEvent::Kind::Hub || ev.kind == PlantedEvent::Kind::Split) &&
            ev.node && (*ev.node < 0 || *ev.node >= cfg.n_services))
            throw std::invalid_argument("event node id outside registry");
    }
}

std::string service_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "svc-%03d", i);
    return buf;
}

}  // namespace

SynthResult synth_evolution(const SynthConfig& cfg) {
    validate(cfg);
    const int n = cfg.n_services;
    const int t_count = cfg.n_versions;
    Rng rng(cfg.seed);

    NodeRegistry registry;
    for (int i = 0; i < n; ++i) registry.add(service_name(i));

    // Resolve event parameters up front, in event order, so the ground truth
    // is fixed before any layer is drawn.
    GroundTruth truth;
    truth.state_labels.assign(static_cast<std::size_t>(t_count), 0);
    struct ResolvedClique {
        std::vector<NodeId> members;
        int first, last;
    };
    std::vector<HubTruth> hubs;
    std::vector<double> hub_weights;
    std::vector<ResolvedClique> cliques;
    std::vector<SplitTruth> splits;
    struct Regime {
        int first, last, period;
        double alt_prob;
    };
    std::vector<Regime> regimes;

    for (const PlantedEvent& ev : cfg.events) {
        switch (ev.kind) {
            case PlantedEvent::Kind::Hub: {
                if (!(ev.weight > 0.0))
                    throw std::invalid_argument("hub weight must be positive");
                const NodeId node = ev.node ? *ev.node : rng.next_int(n);
                hubs.push_back(HubTruth{node, ev.first, ev.last});
                hub_weights.push_back(ev.weight);
                break;
            }
            case PlantedEvent::Kind::Clique: {
                std::vector<NodeId> members = ev.members;
                if (members.empty()) members = rng.sample_without_replacement(n, ev.size);
                std::sort(members.begin(), members.end());
                cliques.push_back(ResolvedClique{std::move(members), ev.first, ev.last});
                break;
            }
            case PlantedEvent::Kind::Split: {
                const NodeId node = ev.node ? *ev.node : rng.next_int(n);
                NodeId partner = rng.next_int(n - 1);
                if (partner >= node) ++partner;
                splits.push_back(SplitTruth{node, partner, ev.first, ev.last});
                break;
            }
            case PlantedEvent::Kind::StateSwitch: {
                regimes.push_back(Regime{ev.first, ev.last, ev.period, ev.alt_prob});
                for (int v = ev.first; v <= ev.last; ++v) {
                    // Alternate regime in blocks of `period`, starting with the
                    // alternate one; period 0 marks the whole range.
                    int label = 1;
                    if (ev.period > 0 && ((v - ev.first) / ev.period) % 2 == 1) label = 0;
                    truth.state_labels[static_cast<std::size_t>(v)] = label;
                }
                break;
            }
        }
    }
    truth.hubs = hubs;
    for (const ResolvedClique& c : cliques)
        truth.cliques.push_back(CliqueTruth{c.members, c.first, c.last});
    truth.splits = splits;

    std::vector<Snapshot> layers;
    layers.reserve(static_cast<std::size_t>(t_count));
    Matrix prev;
    for (int v = 0; v < t_count; ++v) {
        double p = cfg.base_edge_prob;
        bool fresh = v == 0;
        for (const Regime& r : regimes) {
            if (v < r.first || v > r.last) continue;
            // Regime layers are drawn fresh at the regime's probability, so
            // density switches are not smeared by persistence.
            fresh = true;
            if (truth.state_labels[static_cast<std::size_t>(v)] == 1) p = r.alt_prob;
        }

        Matrix a = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const bool had = !fresh && prev(i, j) > 0.0;
                const double keep_p = had ? cfg.persistence : p;
                if (rng.bernoulli(keep_p)) a(i, j) = 1.0;
            }
        }

        for (std::size_t hi = 0; hi < hubs.size(); ++hi) {
            const HubTruth& h = hubs[hi];
            if (v < h.first || v > h.last) continue;
            // 60% of the other nodes call the hub; keeps in-degree >= N/2.
            const int k = static_cast<int>(std::ceil(0.6 * (n - 1)));
            std::vector<int> sources = rng.sample_without_replacement(n - 1, k);
            for (int s : sources) {
                const int src = s >= h.node ? s + 1 : s;
                a(src, h.node) = std::max(a(src, h.node), hub_weights[hi]);
            }
        }
        for (const ResolvedClique& c : cliques) {
            if (v < c.first || v > c.last) continue;
            for (NodeId x : c.members)
                for (NodeId y : c.members)
                    if (x != y) a(x, y) = std::max(a(x, y), 1.0);
        }
        for (const SplitTruth& s : splits) {
            if (v < s.first || v > s.last) continue;
            // The split service keeps every other out-edge; the partner takes
            // the rest and is fronted by the original node.
            int parity = 0;
            for (int j = 0; j < n; ++j) {
                if (j == s.node || j == s.partner || a(s.node, j) <= 0.0) continue;
                if (parity++ % 2 == 1) {
                    a(s.partner, j) = std::max(a(s.partner, j), a(s.node, j));
                    a(s.node, j) = 0.0;
                }
            }
            a(s.node, s.partner) = std::max(a(s.node, s.partner), 1.0);
        }

        Snapshot snap;
        snap.adjacency = std::move(a);
        snap.label = "v" + std::to_string(v);
        layers.push_back(std::move(snap));
        prev = layers.back().adjacency;
    }

    SynthResult out;
    out.sequence = SnapshotSequence::build(std::move(registry), std::move(layers));
    out.truth = std::move(truth);
    return out;
}

ContactStream synth_traces(const SnapshotSequence& seq, int n_requests, int max_depth,
                           std::uint64_t seed) {
    if (seq.layer_count() < 1) throw std::invalid_argument("sequence must have at least one layer");
    if (n_requests <= 0) throw std::invalid_argument("n_requests must be positive");
    if (max_depth <= 0) throw std::invalid_argument("max_depth must be positive");

    const int n = seq.node_count();
    const int t_count = seq.layer_count();
    Rng rng(seed);

    std::vector<double> layer_weight(static_cast<std::size_t>(t_count));
    double total = 0.0;
    for (int t = 0; t < t_count; ++t) {
        layer_weight[static_cast<std::size_t>(t)] = seq.layer(t).adjacency.sum();
        total += layer_weight[static_cast<std::size_t>(t)];
    }
    if (total <= 0.0) return ContactStream::build(seq.registry(), {});

    auto pick_weighted = [&rng](const auto& weights, double sum) {
        double u = rng.next_double() * sum;
        for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(weights.size()); ++i) {
            u -= weights[static_cast<Eigen::Index>(i)];
            if (u < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    };

    std::vector<Contact> contacts;
    for (int r = 0; r < n_requests; ++r) {
        const int t = pick_weighted(layer_weight, total);
        const Matrix& a = seq.layer(t).adjacency;
        const Vector out_strength = a.rowwise().sum();
        const double strength_total = out_strength.sum();
        int u = pick_weighted(out_strength, strength_total);

        const Timestamp base = static_cast<Timestamp>(r) * (max_depth + 1);
        for (int hop = 0; hop < max_depth; ++hop) {
            const double row_sum = a.row(u).sum();
            if (row_sum <= 0.0) break;  // dead end, request completes
            const int v = pick_weighted(a.row(u), row_sum);
            contacts.push_back(Contact{u, v, base + hop, 1.0});
            u = v;
        }
    }
    return ContactStream::build(seq.registry(), std::move(contacts));
}

}  // namespace msnet

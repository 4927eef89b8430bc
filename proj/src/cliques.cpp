#include "msnet/cliques.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

namespace msnet {

namespace {

using PairKey = std::pair<NodeId, NodeId>;

PairKey pair_key(NodeId u, NodeId v) { return u < v ? PairKey{u, v} : PairKey{v, u}; }

struct StreamIndex {
    std::map<PairKey, std::vector<Timestamp>> pair_times;  // sorted per pair
    std::map<NodeId, std::set<NodeId>> partners;
    std::vector<Timestamp> observed;  // sorted unique timestamps

    explicit StreamIndex(const ContactStream& stream) {
        for (const Contact& c : stream.contacts()) {
            pair_times[pair_key(c.src, c.dst)].push_back(c.t);
            partners[c.src].insert(c.dst);
            partners[c.dst].insert(c.src);
            observed.push_back(c.t);
        }
        std::sort(observed.begin(), observed.end());
        observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
        for (auto& [key, times] : pair_times) {
            (void)key;
            std::sort(times.begin(), times.end());
        }
    }

    // True when [b, max(b, e-delta)] is covered by the union of windows
    // [t-delta, t] over the pair's contact times.
    bool pair_ok(NodeId u, NodeId v, Timestamp b, Timestamp e, Timestamp delta) const {
        auto it = pair_times.find(pair_key(u, v));
        if (it == pair_times.end()) return false;
        const Timestamp last = std::max(b, e - delta);
        Timestamp pos = b;  // first instant not yet covered
        for (const Timestamp t : it->second) {
            if (t < pos) continue;
            if (t - delta > pos) return false;  // uncoverable gap at pos
            pos = t;
            if (pos >= last) return true;
        }
        return false;  // ran out of contacts before covering `last`
    }

    bool members_ok(const std::vector<NodeId>& members, Timestamp b, Timestamp e,
                    Timestamp delta) const {
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (!pair_ok(members[i], members[j], b, e, delta)) return false;
        return true;
    }
};

std::string state_key(const std::vector<NodeId>& members, Timestamp b, Timestamp e) {
    std::string key;
    for (NodeId m : members) {
        key += std::to_string(m);
        key += ',';
    }
    key += '|';
    key += std::to_string(b);
    key += '|';
    key += std::to_string(e);
    return key;
}

bool interval_contains(const DeltaClique& outer, const DeltaClique& inner) {
    return outer.b <= inner.b && inner.e <= outer.e;
}

bool members_subset(const std::vector<NodeId>& sub, const std::vector<NodeId>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// Drops every candidate dominated by another (members superset, interval
// superset); sorts the survivors into the report order.
std::vector<DeltaClique> prune_and_sort(std::vector<DeltaClique> candidates) {
    std::vector<DeltaClique> maximal;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
            if (i == j) continue;
            const DeltaClique& a = candidates[i];
            const DeltaClique& b = candidates[j];
            if (a.members.size() > b.members.size()) continue;
            if (members_subset(a.members, b.members) && interval_contains(b, a) &&
                !(a.members == b.members && a.b == b.b && a.e == b.e))
                dominated = true;
        }
        if (!dominated) maximal.push_back(candidates[i]);
    }
    std::sort(maximal.begin(), maximal.end(), [](const DeltaClique& a, const DeltaClique& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        const Timestamp la = a.e - a.b, lb = b.e - b.b;
        if (la != lb) return la > lb;
        if (a.members != b.members) return a.members < b.members;
        return a.b < b.b;
    });
    return maximal;
}

}  // namespace

CliqueReport delta_cliques(const ContactStream& stream, Timestamp delta, int max_nodes_hint) {
    if (delta <= 0) throw std::invalid_argument("delta must be positive");
    CliqueReport report;
    report.delta = delta;
    if (stream.empty()) return report;
    report.t_min = stream.t_min();
    report.t_max = stream.t_max();

    const StreamIndex index(stream);

    std::unordered_set<std::string> seen;
    std::deque<DeltaClique> queue;
    std::vector<DeltaClique> valid;

    auto push = [&](std::vector<NodeId> members, Timestamp b, Timestamp e) {
        std::string key = state_key(members, b, e);
        if (!seen.insert(std::move(key)).second) return;
        DeltaClique clique{std::move(members), b, e, delta};
        queue.push_back(clique);
        valid.push_back(std::move(clique));
    };

    for (const Contact& c : stream.contacts()) {
        std::vector<NodeId> members{c.src, c.dst};
        std::sort(members.begin(), members.end());
        push(std::move(members), c.t, c.t);  // a single contact is its own seed
    }

    while (!queue.empty()) {
        const DeltaClique state = std::move(queue.front());
        queue.pop_front();

        // Interval extension to the adjacent observed timestamps.
        auto lo = std::lower_bound(index.observed.begin(), index.observed.end(), state.b);
        if (lo != index.observed.begin()) {
            const Timestamp b2 = *std::prev(lo);
            if (index.members_ok(state.members, b2, state.e, delta))
                push(state.members, b2, state.e);
        }
        auto hi = std::upper_bound(index.observed.begin(), index.observed.end(), state.e);
        if (hi != index.observed.end()) {
            const Timestamp e2 = *hi;
            if (index.members_ok(state.members, state.b, e2, delta))
                push(state.members, state.b, e2);
        }

        // Node addition: only nodes contacting every current member can qualify.
        if (max_nodes_hint > 0 && static_cast<int>(state.members.size()) >= max_nodes_hint)
            continue;
        std::set<NodeId> candidates = index.partners.at(state.members.front());
        for (std::size_t i = 1; i < state.members.size(); ++i) {
            std::set<NodeId> narrowed;
            const auto& next = index.partners.at(state.members[i]);
            std::set_intersection(candidates.begin(), candidates.end(), next.begin(), next.end(),
                                  std::inserter(narrowed, narrowed.begin()));
            candidates = std::move(narrowed);
        }
        for (NodeId w : candidates) {
            if (std::binary_search(state.members.begin(), state.members.end(), w)) continue;
            bool ok = true;
            for (NodeId m : state.members)
                if (!index.pair_ok(m, w, state.b, state.e, delta)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<NodeId> grown = state.members;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
            push(std::move(grown), state.b, state.e);
        }
    }

    report.cliques = prune_and_sort(std::move(valid));
    return report;
}

CliqueReport clique_oracle(const ContactStream& stream, Timestamp delta) {
    if (delta <= 0) throw std::invalid_argument("delta must be positive");
    if (stream.registry().size() > 8 || stream.size() > 40)
        throw std::invalid_argument("clique_oracle: instance exceeds 8 nodes / 40 contacts");
    CliqueReport report;
    report.delta = delta;
    if (stream.empty()) return report;
    report.t_min = stream.t_min();
    report.t_max = stream.t_max();

    const StreamIndex index(stream);
    const int n = stream.registry().size();

    std::vector<DeltaClique> valid;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<NodeId> members;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);
        if (members.size() < 2) continue;
        for (std::size_t bi = 0; bi < index.observed.size(); ++bi) {
            for (std::size_t ei = bi; ei < index.observed.size(); ++ei) {
                const Timestamp b = index.observed[bi];
                const Timestamp e = index.observed[ei];
                if (index.members_ok(members, b, e, delta))
                    valid.push_back(DeltaClique{members, b, e, delta});
            }
        }
    }
    report.cliques = prune_and_sort(std::move(valid));
    return report;
}

}  // namespace msnet

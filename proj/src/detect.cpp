#include "msnet/detect.hpp"

#include <algorithm>
#include <cmath>

namespace msnet {

std::string to_string(FindingKind kind) {
    switch (kind) {
        case FindingKind::Bottleneck: return "bottleneck";
        case FindingKind::CyclicDependency: return "cyclic_dependency";
        case FindingKind::ServiceIntimacy: return "service_intimacy";
        case FindingKind::StateAnomaly: return "state_anomaly";
    }
    return "unknown";
}

double default_bottleneck_theta(int node_count) {
    if (node_count <= 0) return 1.0;
    return std::min(1.0, 3.0 / node_count);
}

std::vector<Finding> detect_bottleneck(const SupraCentralityResult& result,
                                       const std::vector<std::string>& names, double theta,
                                       double min_slope, const std::string& evidence) {
    if (!(theta > 0.0) || theta > 1.0) throw std::invalid_argument("theta must be in (0,1]");
    const int t_count = static_cast<int>(result.conditional.rows());
    const int n = static_cast<int>(result.conditional.cols());
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("names do not match result dimension");

    const double t_mean = (t_count - 1) / 2.0;
    double t_var = 0.0;
    for (int t = 0; t < t_count; ++t) t_var += (t - t_mean) * (t - t_mean);

    std::vector<Finding> findings;
    for (int i = 0; i < n; ++i) {
        const double peak = result.conditional.col(i).maxCoeff();
        if (peak < theta) continue;
        double slope = 0.0;
        if (t_var > 0.0) {
            const double z_mean = result.conditional.col(i).mean();
            double cov = 0.0;
            for (int t = 0; t < t_count; ++t)
                cov += (t - t_mean) * (result.conditional(t, i) - z_mean);
            slope = cov / t_var;
        }
        if (!(slope >= min_slope)) continue;
        Finding f;
        f.kind = FindingKind::Bottleneck;
        f.subject_nodes = {names[static_cast<std::size_t>(i)]};
        f.score = peak;
        f.evidence = evidence;
        f.thresholds = {{"theta", theta}, {"min_slope", min_slope}};
        findings.push_back(std::move(f));
    }
    return findings;
}

namespace {

// Iterative Tarjan SCC on the positive-weight digraph.
std::vector<std::vector<int>> strongly_connected_components(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    struct Frame {
        int node;
        int neighbor;
    };
    for (int start = 0; start < n; ++start) {
        if (index[static_cast<std::size_t>(start)] != -1) continue;
        std::vector<Frame> call_stack{{start, 0}};
        index[static_cast<std::size_t>(start)] = lowlink[static_cast<std::size_t>(start)] =
            next_index++;
        stack.push_back(start);
        on_stack[static_cast<std::size_t>(start)] = true;

        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            const int u = frame.node;
            if (frame.neighbor < n) {
                const int v = frame.neighbor++;
                if (a(u, v) <= 0.0 || u == v) continue;
                if (index[static_cast<std::size_t>(v)] == -1) {
                    index[static_cast<std::size_t>(v)] = lowlink[static_cast<std::size_t>(v)] =
                        next_index++;
                    stack.push_back(v);
                    on_stack[static_cast<std::size_t>(v)] = true;
                    call_stack.push_back({v, 0});
                } else if (on_stack[static_cast<std::size_t>(v)]) {
                    lowlink[static_cast<std::size_t>(u)] = std::min(
                        lowlink[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]);
                }
            } else {
                call_stack.pop_back();
                if (!call_stack.empty()) {
                    const int parent = call_stack.back().node;
                    lowlink[static_cast<std::size_t>(parent)] =
                        std::min(lowlink[static_cast<std::size_t>(parent)],
                                 lowlink[static_cast<std::size_t>(u)]);
                }
                if (lowlink[static_cast<std::size_t>(u)] == index[static_cast<std::size_t>(u)]) {
                    std::vector<int> component;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        component.push_back(w);
                    } while (w != u);
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
            }
        }
    }
    return components;
}

}  // namespace

std::vector<Finding> detect_cycles(const Snapshot& aggregate, const std::vector<std::string>& names,
                                   const std::string& evidence) {
    if (static_cast<Eigen::Index>(names.size()) != aggregate.adjacency.rows())
        throw std::invalid_argument("names do not match adjacency dimension");
    std::vector<Finding> findings;
    for (const std::vector<int>& component : strongly_connected_components(aggregate.adjacency)) {
        if (component.size() < 2) continue;
        Finding f;
        f.kind = FindingKind::CyclicDependency;
        for (int node : component) f.subject_nodes.push_back(names[static_cast<std::size_t>(node)]);
        f.score = static_cast<double>(component.size());
        f.evidence = evidence;
        findings.push_back(std::move(f));
    }
    return findings;
}

std::vector<Finding> detect_intimacy(const CliqueReport& report,
                                     const std::vector<std::string>& names,
                                     Timestamp observation_span, int min_size, double min_fraction,
                                     const std::string& evidence) {
    if (observation_span <= 0) throw std::invalid_argument("observation_span must be positive");
    if (min_size < 2) throw std::invalid_argument("min_size must be at least 2");
    if (!(min_fraction > 0.0) || min_fraction > 1.0)
        throw std::invalid_argument("min_fraction must be in (0,1]");

    std::vector<Finding> findings;
    for (const DeltaClique& clique : report.cliques) {
        if (static_cast<int>(clique.members.size()) < min_size) continue;
        const double fraction =
            static_cast<double>(clique.e - clique.b) / static_cast<double>(observation_span);
        if (fraction < min_fraction) continue;
        Finding f;
        f.kind = FindingKind::ServiceIntimacy;
        for (NodeId m : clique.members) f.subject_nodes.push_back(names.at(static_cast<std::size_t>(m)));
        f.score = static_cast<double>(clique.members.size()) * fraction;
        f.evidence = evidence;
        f.thresholds = {{"min_size", static_cast<double>(min_size)},
                        {"min_fraction", min_fraction},
                        {"observation_span", static_cast<double>(observation_span)}};
        findings.push_back(std::move(f));
    }
    return findings;
}

std::vector<Finding> detect_state_anomaly(const StateLabeling& labeling,
                                          double max_minority_fraction,
                                          const std::string& evidence) {
    if (!(max_minority_fraction > 0.0) || max_minority_fraction >= 1.0)
        throw std::invalid_argument("max_minority_fraction must be in (0,1)");
    const int t_count = static_cast<int>(labeling.labels.size());
    if (t_count == 0) return {};

    std::vector<Finding> findings;
    for (int state = 0; state < labeling.k; ++state) {
        std::vector<int> layers;
        for (int t = 0; t < t_count; ++t)
            if (labeling.labels[static_cast<std::size_t>(t)] == state) layers.push_back(t);
        if (layers.empty()) continue;
        const double fraction = static_cast<double>(layers.size()) / t_count;
        if (fraction > max_minority_fraction) continue;
        Finding f;
        f.kind = FindingKind::StateAnomaly;
        f.subject_layers = layers;
        f.score = 1.0 - fraction;  // rarer states rank higher
        f.evidence = evidence;
        f.thresholds = {{"max_minority_fraction", max_minority_fraction}};
        findings.push_back(std::move(f));
    }
    return findings;
}

std::vector<Finding> merge_findings(std::vector<std::vector<Finding>> groups) {
    std::vector<Finding> merged;
    for (auto& group : groups)
        for (Finding& f : group) merged.push_back(std::move(f));
    std::sort(merged.begin(), merged.end(), [](const Finding& a, const Finding& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.score != b.score) return a.score > b.score;
        if (a.subject_nodes != b.subject_nodes) return a.subject_nodes < b.subject_nodes;
        return a.subject_layers < b.subject_layers;
    });
    return merged;
}

}  // namespace msnet

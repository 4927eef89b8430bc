#include "msnet/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msnet {

DistanceMetric distance_metric_from_string(const std::string& name) {
    if (name == "frobenius") return DistanceMetric::Frobenius;
    if (name == "spectral") return DistanceMetric::Spectral;
    throw std::invalid_argument("unknown distance metric \"" + name +
                                "\" (expected frobenius or spectral)");
}

std::string to_string(DistanceMetric metric) {
    return metric == DistanceMetric::Frobenius ? "frobenius" : "spectral";
}

DistanceMatrix distance_matrix(const SnapshotSequence& seq, DistanceMetric metric) {
    const int t_count = seq.layer_count();
    if (t_count < 2) throw std::invalid_argument("distance_matrix requires at least two layers");
    const int n = seq.node_count();

    std::vector<Matrix> sym;
    sym.reserve(static_cast<std::size_t>(t_count));
    for (const Snapshot& layer : seq.layers())
        sym.push_back(layer.adjacency + layer.adjacency.transpose());

    std::vector<Vector> spectra;
    if (metric == DistanceMetric::Spectral) {
        spectra.reserve(sym.size());
        for (const Matrix& s : sym) {
            const Matrix laplacian = Matrix(s.rowwise().sum().asDiagonal()) - s;
            Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian,
                                                         Eigen::EigenvaluesOnly);
            spectra.push_back(solver.eigenvalues());  // ascending
        }
        (void)n;
    }

    DistanceMatrix out;
    out.metric = metric;
    out.d = Matrix::Zero(t_count, t_count);
    for (int a = 0; a < t_count; ++a) {
        for (int b = a + 1; b < t_count; ++b) {
            const double dist = metric == DistanceMetric::Frobenius
                                    ? (sym[static_cast<std::size_t>(a)] -
                                       sym[static_cast<std::size_t>(b)])
                                          .norm()
                                    : (spectra[static_cast<std::size_t>(a)] -
                                       spectra[static_cast<std::size_t>(b)])
                                          .norm();
            out.d(a, b) = dist;
            out.d(b, a) = dist;
        }
    }
    return out;
}

namespace {

// Average-linkage merges from T singletons down to 1, recording the partition
// at every cluster count. Ties pick the pair with the smallest representative
// (smallest contained layer) indices.
std::vector<std::vector<int>> linkage_partitions(const Matrix& d) {
    const int t_count = static_cast<int>(d.rows());
    std::vector<std::vector<int>> clusters;  // each sorted, ordered by smallest member
    for (int t = 0; t < t_count; ++t) clusters.push_back({t});

    std::vector<std::vector<int>> partition_at_k(static_cast<std::size_t>(t_count) + 1);
    auto record = [&]() {
        std::vector<int> labels(static_cast<std::size_t>(t_count));
        for (std::size_t ci = 0; ci < clusters.size(); ++ci)
            for (int member : clusters[ci]) labels[static_cast<std::size_t>(member)] =
                static_cast<int>(ci);
        partition_at_k[clusters.size()] = std::move(labels);
    };
    record();

    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double sum = 0.0;
                for (int a : clusters[i])
                    for (int b : clusters[j]) sum += d(a, b);
                const double avg =
                    sum / (static_cast<double>(clusters[i].size()) * clusters[j].size());
                if (avg < best) {  // strict: first (smallest-rep) pair wins ties
                    best = avg;
                    bi = i;
                    bj = j;
                }
            }
        }
        std::vector<int> merged = clusters[bi];
        merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(merged.begin(), merged.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = std::move(merged);
        // Keep clusters ordered by smallest member so tie-breaking stays stable.
        std::sort(clusters.begin(), clusters.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        record();
    }
    return partition_at_k;
}

std::vector<int> renumber_by_first_appearance(const std::vector<int>& raw) {
    std::vector<int> mapping(raw.size(), -1);
    std::vector<int> labels(raw.size());
    int next = 0;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        const int r = raw[t];
        if (mapping[static_cast<std::size_t>(r)] == -1)
            mapping[static_cast<std::size_t>(r)] = next++;
        labels[t] = mapping[static_cast<std::size_t>(r)];
    }
    return labels;
}

}  // namespace

double mean_silhouette(const Matrix& d, const std::vector<int>& labels, int k) {
    const int t_count = static_cast<int>(labels.size());
    std::vector<int> cluster_size(static_cast<std::size_t>(k), 0);
    for (int label : labels) cluster_size[static_cast<std::size_t>(label)]++;

    double total = 0.0;
    for (int i = 0; i < t_count; ++i) {
        const int own = labels[static_cast<std::size_t>(i)];
        if (cluster_size[static_cast<std::size_t>(own)] <= 1) continue;  // singleton scores 0
        std::vector<double> mean_to(static_cast<std::size_t>(k), 0.0);
        for (int j = 0; j < t_count; ++j) {
            if (j == i) continue;
            mean_to[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] += d(i, j);
        }
        double a = 0.0;
        double b = std::numeric_limits<double>::infinity();
        for (int cl = 0; cl < k; ++cl) {
            const int size = cluster_size[static_cast<std::size_t>(cl)];
            if (cl == own) {
                a = mean_to[static_cast<std::size_t>(cl)] / (size - 1);
            } else if (size > 0) {
                b = std::min(b, mean_to[static_cast<std::size_t>(cl)] / size);
            }
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / t_count;
}

StateLabeling cluster_states(const DistanceMatrix& dist, std::optional<int> k) {
    const int t_count = static_cast<int>(dist.d.rows());
    if (t_count < 1) throw std::invalid_argument("cluster_states requires at least one layer");
    if (dist.d.rows() != dist.d.cols()) throw std::invalid_argument("distance matrix not square");
    if (k && (*k < 1 || *k > t_count))
        throw std::invalid_argument("K must be in [1, T]");

    const auto partitions = linkage_partitions(dist.d);

    int chosen_k;
    if (k) {
        chosen_k = *k;
    } else {
        const int k_max = std::min(t_count - 1, 8);
        chosen_k = 1;
        double best = -std::numeric_limits<double>::infinity();
        for (int candidate = 2; candidate <= k_max; ++candidate) {
            const double score = mean_silhouette(
                dist.d, partitions[static_cast<std::size_t>(candidate)], candidate);
            if (score > best) {  // strict: ties keep the smaller K
                best = score;
                chosen_k = candidate;
            }
        }
        if (chosen_k == 1) chosen_k = std::min(t_count, 2);  // T too small to scan: 1 or 2 layers
    }

    StateLabeling out;
    out.k = chosen_k;
    out.labels =
        renumber_by_first_appearance(partitions[static_cast<std::size_t>(chosen_k)]);
    for (int t = 1; t < t_count; ++t)
        if (out.labels[static_cast<std::size_t>(t)] != out.labels[static_cast<std::size_t>(t - 1)])
            out.change_points.push_back(t);
    return out;
}

}  // namespace msnet

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

enum class DistanceMetric { Frobenius, Spectral };

DistanceMetric distance_metric_from_string(const std::string& name);
std::string to_string(DistanceMetric metric);

struct DistanceMatrix {
    Matrix d;  // T x T, symmetric, zero diagonal
    DistanceMetric metric = DistanceMetric::Frobenius;
};

// Pairwise layer distances on symmetrized adjacencies. Frobenius compares the
// matrices directly; Spectral compares sorted Laplacian eigenvalue vectors
// (structure-aware, permutation-insensitive).
DistanceMatrix distance_matrix(const SnapshotSequence& seq, DistanceMetric metric);

struct StateLabeling {
    std::vector<int> labels;  // state id per layer, renumbered by first appearance
    int k = 0;
    std::vector<int> change_points;  // layer indices t with labels[t] != labels[t-1]
};

// Average-linkage agglomerative clustering with deterministic tie-breaking
// (smallest pair of cluster representatives). When k is absent the cut is the
// silhouette-best K in [2, min(T-1, 8)].
StateLabeling cluster_states(const DistanceMatrix& dist, std::optional<int> k = std::nullopt);

// Mean silhouette of a labeling under a precomputed distance matrix;
// singletons score 0 by convention.
double mean_silhouette(const Matrix& d, const std::vector<int>& labels, int k);

}  // namespace msnet

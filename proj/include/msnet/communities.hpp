#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// Nonnegative rank-R CP factors of the node x node x time tensor. Directed:
// separate out/in node factors. Communities may recur in non-consecutive
// layers; the time factor carries when each one is active.
struct TensorFactors {
    int rank = 0;
    Matrix out_factor;   // N x R
    Matrix in_factor;    // N x R
    Matrix time_factor;  // T x R
    std::vector<double> objective_trace;  // squared Frobenius error per iteration
    std::uint64_t seed = 0;
};

struct NtfOptions {
    int max_iter = 500;
    double tol = 1e-6;  // stop when relative objective improvement drops below
    std::uint64_t seed = 0;
    // Explicit initial factors {out, in, time}; random uniform (0,1) when absent.
    std::optional<std::array<Matrix, 3>> init;
};

// Multiplicative (Lee-Seung style) updates on the Frobenius objective,
// denominators clamped at 1e-12. The recorded objective trace is
// non-increasing: an iteration that would raise the objective (floating-point
// noise near a stationary point) is rolled back and treated as converged.
TensorFactors ntf_factorize(const std::vector<Matrix>& tensor, int rank,
                            const NtfOptions& options = {});
TensorFactors ntf_factorize(const SnapshotSequence& seq, int rank, const NtfOptions& options = {});

// Runs `restarts` seeded factorizations (seed, seed+1, ...) and keeps the
// lowest final objective; ties go to the lowest seed.
TensorFactors ntf_factorize_restarts(const SnapshotSequence& seq, int rank, int restarts = 5,
                                     const NtfOptions& options = {});

struct Community {
    std::vector<NodeId> members;
    std::vector<int> active_layers;
};

struct CommunityAssignment {
    std::vector<Community> communities;  // one per factor column
    double node_threshold = 0.0;
    double time_threshold = 0.0;
};

// Threshold rule: node i joins community r when max(out(i,r), in(i,r)) reaches
// node_threshold times the column max; layers analogously on the time factor.
CommunityAssignment assign_communities(const TensorFactors& factors, double node_threshold,
                                       double time_threshold);

}  // namespace msnet

#pragma once

#include <cstdint>
#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// Discrete-time SIS over a snapshot sequence: infection flows along the
// symmetrized call graph (a broken caller hurts its callee and vice versa).
struct SISConfig {
    double beta_inf = 0.0;  // per-contact infection probability
    double mu = 0.0;        // per-step recovery probability
    std::vector<NodeId> seeds;
    int steps_per_layer = 1;
    std::uint64_t rng_seed = 0;
};

struct SISTrajectory {
    // State after each global step; step count = T * steps_per_layer.
    std::vector<std::vector<bool>> infected;
    std::vector<double> prevalence;
    int steps() const { return static_cast<int>(prevalence.size()); }
};

// Synchronous update, one uniform draw per (edge, step) and per (node, step)
// whether used or not, so runs with the same rng_seed share their randomness
// across beta values (common random numbers). Infection with probability
// 1 - (1 - beta)^w per symmetrized edge weight w; recovery applies to nodes
// infected at the start of the step. Deterministic given rng_seed.
SISTrajectory sis_run(const SnapshotSequence& seq, const SISConfig& cfg);

struct SISEnsemble {
    std::vector<double> mean;    // pointwise mean prevalence
    std::vector<double> stddev;  // sample standard deviation (0 for n_runs = 1)
};

// n_runs trajectories with rng_seed + run index; aggregation in run order.
SISEnsemble sis_ensemble(const SnapshotSequence& seq, const SISConfig& cfg, int n_runs);

}  // namespace msnet

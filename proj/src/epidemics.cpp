#include "msnet/epidemics.hpp"

#include <cmath>

#include "msnet/rng.hpp"

namespace msnet {

SISTrajectory sis_run(const SnapshotSequence& seq, const SISConfig& cfg) {
    const int n = seq.node_count();
    if (n < 1) throw std::invalid_argument("sis_run requires at least one node");
    if (seq.layer_count() < 1) throw std::invalid_argument("sis_run requires at least one layer");
    if (cfg.beta_inf < 0.0 || cfg.beta_inf > 1.0)
        throw std::invalid_argument("beta_inf must be in [0,1]");
    if (cfg.mu < 0.0 || cfg.mu > 1.0) throw std::invalid_argument("mu must be in [0,1]");
    if (cfg.steps_per_layer < 1) throw std::invalid_argument("steps_per_layer must be positive");
    for (NodeId s : cfg.seeds)
        if (s < 0 || s >= n) throw std::invalid_argument("seed node id outside registry");

    Rng rng(cfg.rng_seed);
    std::vector<bool> infected(static_cast<std::size_t>(n), false);
    for (NodeId s : cfg.seeds) infected[static_cast<std::size_t>(s)] = true;

    SISTrajectory traj;
    const int total_steps = seq.layer_count() * cfg.steps_per_layer;
    traj.infected.reserve(static_cast<std::size_t>(total_steps));
    traj.prevalence.reserve(static_cast<std::size_t>(total_steps));

    struct Edge {
        int u, v;
        double p;  // 1 - (1-beta)^w
    };
    for (int layer = 0; layer < seq.layer_count(); ++layer) {
        const Matrix& a = seq.layer(layer).adjacency;
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const double w = a(u, v) + a(v, u);
                if (w > 0.0)
                    edges.push_back(Edge{u, v, 1.0 - std::pow(1.0 - cfg.beta_inf, w)});
            }
        }
        for (int step = 0; step < cfg.steps_per_layer; ++step) {
            std::vector<bool> next = infected;
            for (const Edge& e : edges) {
                const double u01 = rng.next_double();  // consumed even when unused
                const bool iu = infected[static_cast<std::size_t>(e.u)];
                const bool iv = infected[static_cast<std::size_t>(e.v)];
                if (iu == iv) continue;
                const int target = iu ? e.v : e.u;
                if (u01 < e.p) next[static_cast<std::size_t>(target)] = true;
            }
            for (int node = 0; node < n; ++node) {
                const double u01 = rng.next_double();
                if (infected[static_cast<std::size_t>(node)] && u01 < cfg.mu)
                    next[static_cast<std::size_t>(node)] = false;
            }
            infected = std::move(next);
            traj.infected.push_back(infected);
            int count = 0;
            for (bool b : infected) count += b ? 1 : 0;
            traj.prevalence.push_back(static_cast<double>(count) / n);
        }
    }
    return traj;
}

SISEnsemble sis_ensemble(const SnapshotSequence& seq, const SISConfig& cfg, int n_runs) {
    if (n_runs < 1) throw std::invalid_argument("n_runs must be positive");
    std::vector<std::vector<double>> runs;
    runs.reserve(static_cast<std::size_t>(n_runs));
    for (int r = 0; r < n_runs; ++r) {
        SISConfig run_cfg = cfg;
        run_cfg.rng_seed = cfg.rng_seed + static_cast<std::uint64_t>(r);
        runs.push_back(sis_run(seq, run_cfg).prevalence);
    }
    const std::size_t steps = runs.front().size();
    SISEnsemble out;
    out.mean.assign(steps, 0.0);
    out.stddev.assign(steps, 0.0);
    for (const auto& run : runs)
        for (std::size_t s = 0; s < steps; ++s) out.mean[s] += run[s];
    for (std::size_t s = 0; s < steps; ++s) out.mean[s] /= n_runs;
    if (n_runs > 1) {
        for (const auto& run : runs)
            for (std::size_t s = 0; s < steps; ++s) {
                const double d = run[s] - out.mean[s];
                out.stddev[s] += d * d;
            }
        for (std::size_t s = 0; s < steps; ++s)
            out.stddev[s] = std::sqrt(out.stddev[s] / (n_runs - 1));
    }
    return out;
}

}  // namespace msnet

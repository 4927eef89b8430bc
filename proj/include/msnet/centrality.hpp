#pragma once

#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// Joint node-layer centrality from the supra-adjacency eigenproblem.
// joint(t, i) is node i's share in layer t; the whole matrix sums to 1.
struct SupraCentralityResult {
    Matrix joint;           // T x N
    Vector marginal_node;   // N, joint summed over layers
    Vector marginal_layer;  // T, joint summed over nodes
    Matrix conditional;     // T x N, each row normalized to sum 1
    double omega = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// Dominant eigenvector of the supra-adjacency matrix: symmetrized layers on
// the block diagonal, chain coupling omega between a node's copies in
// adjacent layers, plus a fixed 1e-8 uniform rank-one perturbation that makes
// the dominant eigenvector unique on graphs with automorphisms.
//
// Requires the symmetrized union graph to be connected; throws AnalysisError
// otherwise (analyze per component instead), and on non-convergence (the
// error carries the last residual).
SupraCentralityResult supra_centrality(const SnapshotSequence& seq, double omega,
                                       double tol = 1e-10, int max_iter = 10000);

// Streaming temporal Katz centrality. Scores decay exponentially at rate c
// per time unit and are updated lazily: only the contact's destination is
// touched per update. Single-writer; queries do not mutate.
class KatzState {
public:
    KatzState(int node_count, double beta, double c);

    // Folds one contact in; contacts must arrive in non-decreasing time order.
    void update(const Contact& contact);

    // Score of `node` decayed to at_t; at_t must not precede the last update.
    double query(NodeId node, Timestamp at_t) const;
    Vector query_all(Timestamp at_t) const;

    double beta() const { return beta_; }
    double decay_rate() const { return c_; }
    Timestamp now() const { return now_; }
    int node_count() const { return static_cast<int>(score_.size()); }

private:
    double decayed(double score, Timestamp from, Timestamp to) const;

    double beta_;
    double c_;
    Timestamp now_ = 0;
    std::vector<double> score_;        // as of last_update_
    std::vector<double> score_prior_;  // as of last_update_, excluding walks ending exactly then
    std::vector<Timestamp> last_update_;
};

// Folds a whole stream and queries every node at at_t.
Vector katz_scores(const ContactStream& stream, double beta, double c, Timestamp at_t);

// Exhaustive temporal-walk enumeration: every walk with strictly increasing
// contact times ending at v contributes prod(beta * w_e) * exp(-c * (at_t -
// t_first)). Exponential in stream length; refuses beyond max_contacts.
Vector katz_oracle(const ContactStream& stream, double beta, double c, Timestamp at_t,
                   std::size_t max_contacts = 14);

}  // namespace msnet

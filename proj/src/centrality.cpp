#include "msnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msnet {

namespace {

constexpr double kUniformPerturbation = 1e-8;

}  // namespace

SupraCentralityResult supra_centrality(const SnapshotSequence& seq, double omega, double tol,
                                       int max_iter) {
    const int n = seq.node_count();
    const int t_count = seq.layer_count();
    if (t_count < 1) throw std::invalid_argument("supra_centrality requires at least one layer");
    if (n < 1) throw std::invalid_argument("supra_centrality requires at least one node");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");

    {
        const std::vector<int> comp = union_connectivity(seq);
        const int n_components = 1 + *std::max_element(comp.begin(), comp.end());
        if (n_components > 1)
            throw AnalysisError("union graph has " + std::to_string(n_components) +
                                " weakly-connected components; eigenvector centrality needs a "
                                "connected graph - analyze each component separately");
    }

    const Eigen::Index dim = static_cast<Eigen::Index>(n) * t_count;
    Matrix supra = Matrix::Zero(dim, dim);
    for (int t = 0; t < t_count; ++t) {
        const Matrix& a = seq.layer(t).adjacency;
        supra.block(t * n, t * n, n, n) = a + a.transpose();
        if (t + 1 < t_count) {
            for (int i = 0; i < n; ++i) {
                supra(t * n + i, (t + 1) * n + i) = omega;
                supra((t + 1) * n + i, t * n + i) = omega;
            }
        }
    }

    const double delta = kUniformPerturbation;
    // Shift by an upper bound on the spectral radius; keeps power iteration
    // convergent on bipartite-like spectra (lambda_min ~ -lambda_max).
    const double shift = (supra.rowwise().sum().array() + delta * static_cast<double>(dim))
                             .maxCoeff();

    Vector x = Vector::Constant(dim, 1.0).normalized();
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    while (iterations < max_iter) {
        ++iterations;
        const Vector mx = supra * x + Vector::Constant(dim, delta * x.sum());
        const double lambda = x.dot(mx);  // x is unit length
        residual = (mx - lambda * x).norm() / std::max(lambda, 1e-300);
        if (residual < tol) {
            converged = true;
            break;
        }
        x = (mx + shift * x).normalized();
    }
    if (!converged)
        throw AnalysisError("power iteration did not reach tolerance " + std::to_string(tol) +
                                " in " + std::to_string(max_iter) + " iterations",
                            residual);

    if (x.sum() < 0.0) x = -x;  // Perron vector, fixed sign
    x /= x.sum();

    SupraCentralityResult result;
    result.joint = Matrix::Zero(t_count, n);
    for (int t = 0; t < t_count; ++t)
        result.joint.row(t) = x.segment(static_cast<Eigen::Index>(t) * n, n).transpose();
    result.marginal_node = result.joint.colwise().sum().transpose();
    result.marginal_layer = result.joint.rowwise().sum();
    result.conditional = result.joint;
    for (int t = 0; t < t_count; ++t) {
        const double row = result.marginal_layer(t);
        if (row > 0.0) result.conditional.row(t) /= row;
    }
    result.omega = omega;
    result.iterations = iterations;
    result.residual = residual;
    return result;
}

KatzState::KatzState(int node_count, double beta, double c) : beta_(beta), c_(c) {
    if (node_count < 0) throw std::invalid_argument("node_count must be non-negative");
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("beta must be in (0,1]");
    if (c < 0.0) throw std::invalid_argument("decay rate c must be non-negative");
    score_.assign(static_cast<std::size_t>(node_count), 0.0);
    score_prior_.assign(static_cast<std::size_t>(node_count), 0.0);
    last_update_.assign(static_cast<std::size_t>(node_count), 0);
}

double KatzState::decayed(double score, Timestamp from, Timestamp to) const {
    if (c_ == 0.0 || score == 0.0) return score;
    return score * std::exp(-c_ * static_cast<double>(to - from));
}

void KatzState::update(const Contact& contact) {
    if (contact.t < now_)
        throw std::invalid_argument("out-of-order contact: t=" + std::to_string(contact.t) +
                                    " precedes stream time " + std::to_string(now_));
    const auto src = static_cast<std::size_t>(contact.src);
    const auto dst = static_cast<std::size_t>(contact.dst);
    if (contact.src < 0 || src >= score_.size() || contact.dst < 0 || dst >= score_.size())
        throw std::invalid_argument("contact node id outside state");

    // Walks must have strictly increasing times: a source updated at exactly
    // this timestamp contributes its score from just before that update.
    const double source_score = last_update_[src] == contact.t
                                    ? score_prior_[src]
                                    : decayed(score_[src], last_update_[src], contact.t);

    if (last_update_[dst] < contact.t) {
        score_[dst] = decayed(score_[dst], last_update_[dst], contact.t);
        score_prior_[dst] = score_[dst];
        last_update_[dst] = contact.t;
    }
    score_[dst] += beta_ * contact.weight * (1.0 + source_score);
    now_ = contact.t;
}

double KatzState::query(NodeId node, Timestamp at_t) const {
    if (at_t < now_)
        throw std::invalid_argument("query at t=" + std::to_string(at_t) +
                                    " precedes stream time " + std::to_string(now_));
    const auto i = static_cast<std::size_t>(node);
    if (node < 0 || i >= score_.size()) throw std::invalid_argument("node id outside state");
    return decayed(score_[i], last_update_[i], at_t);
}

Vector KatzState::query_all(Timestamp at_t) const {
    Vector out(node_count());
    for (int i = 0; i < node_count(); ++i) out(i) = query(i, at_t);
    return out;
}

Vector katz_scores(const ContactStream& stream, double beta, double c, Timestamp at_t) {
    KatzState state(stream.registry().size(), beta, c);
    for (const Contact& contact : stream.contacts()) state.update(contact);
    return state.query_all(at_t);
}

Vector katz_oracle(const ContactStream& stream, double beta, double c, Timestamp at_t,
                   std::size_t max_contacts) {
    if (stream.size() > max_contacts)
        throw std::invalid_argument("katz_oracle: stream of " + std::to_string(stream.size()) +
                                    " contacts exceeds enumeration bound " +
                                    std::to_string(max_contacts));
    if (!stream.empty() && at_t < stream.t_max())
        throw std::invalid_argument("katz_oracle: at_t precedes the stream's last contact");

    const std::vector<Contact>& contacts = stream.contacts();
    Vector scores = Vector::Zero(stream.registry().size());

    // DFS over temporal walks: extend from `end` with any strictly later contact.
    auto extend = [&](auto&& self, NodeId end, Timestamp last_t, double value,
                      Timestamp t_first) -> void {
        scores(end) += value * (c == 0.0 ? 1.0
                                         : std::exp(-c * static_cast<double>(at_t - t_first)));
        for (const Contact& next : contacts) {
            if (next.t <= last_t || next.src != end) continue;
            self(self, next.dst, next.t, value * beta * next.weight, t_first);
        }
    };
    for (const Contact& first : contacts)
        extend(extend, first.dst, first.t, beta * first.weight, first.t);
    return scores;
}

}  // namespace msnet

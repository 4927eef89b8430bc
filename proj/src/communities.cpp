#include "msnet/communities.hpp"

#include <cmath>
#include <limits>

#include "msnet/rng.hpp"

namespace msnet {

namespace {

constexpr double kDenomFloor = 1e-12;

Matrix random_factor(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_double();
    return m;
}

double objective(const std::vector<Matrix>& tensor, const Matrix& a, const Matrix& b,
                 const Matrix& c) {
    double sum = 0.0;
    for (std::size_t t = 0; t < tensor.size(); ++t) {
        const Matrix recon =
            a * c.row(static_cast<Eigen::Index>(t)).asDiagonal() * b.transpose();
        sum += (tensor[t] - recon).squaredNorm();
    }
    return sum;
}

}  // namespace

TensorFactors ntf_factorize(const std::vector<Matrix>& tensor, int rank,
                            const NtfOptions& options) {
    const int t_count = static_cast<int>(tensor.size());
    if (t_count < 1) throw std::invalid_argument("ntf_factorize requires at least one layer");
    const Eigen::Index n = tensor.front().rows();
    for (const Matrix& layer : tensor) {
        if (layer.rows() != n || layer.cols() != n)
            throw std::invalid_argument("ntf_factorize: layers must share one square dimension");
        if ((layer.array() < 0.0).any())
            throw std::invalid_argument("ntf_factorize: tensor must be nonnegative");
    }
    if (rank < 1 || static_cast<long>(rank) > static_cast<long>(n) * t_count)
        throw std::invalid_argument("rank must be in [1, N*T]");
    if (options.max_iter < 1) throw std::invalid_argument("max_iter must be positive");

    Matrix a, b, c;
    if (options.init) {
        a = (*options.init)[0];
        b = (*options.init)[1];
        c = (*options.init)[2];
        if (a.rows() != n || a.cols() != rank || b.rows() != n || b.cols() != rank ||
            c.rows() != t_count || c.cols() != rank)
            throw std::invalid_argument("ntf_factorize: init factor shapes do not match");
        if ((a.array() < 0.0).any() || (b.array() < 0.0).any() || (c.array() < 0.0).any())
            throw std::invalid_argument("ntf_factorize: init factors must be nonnegative");
    } else {
        Rng rng(options.seed);
        a = random_factor(rng, n, rank);
        b = random_factor(rng, n, rank);
        c = random_factor(rng, t_count, rank);
    }

    TensorFactors out;
    out.rank = rank;
    out.seed = options.seed;

    double prev = objective(tensor, a, b, c);
    for (int iter = 0; iter < options.max_iter; ++iter) {
        const Matrix a_before = a, b_before = b, c_before = c;

        // Out factor: numerator X_(1) (C (.) B) folds to sum_t c_t-scaled X_t B.
        {
            Matrix num = Matrix::Zero(n, rank);
            for (int t = 0; t < t_count; ++t)
                num.noalias() +=
                    (tensor[static_cast<std::size_t>(t)] * b) * c.row(t).asDiagonal();
            const Matrix gram = (c.transpose() * c).cwiseProduct(b.transpose() * b);
            const Matrix den = (a * gram).cwiseMax(kDenomFloor);
            a = a.cwiseProduct(num.cwiseQuotient(den));
        }
        // In factor.
        {
            Matrix num = Matrix::Zero(n, rank);
            for (int t = 0; t < t_count; ++t)
                num.noalias() +=
                    (tensor[static_cast<std::size_t>(t)].transpose() * a) * c.row(t).asDiagonal();
            const Matrix gram = (c.transpose() * c).cwiseProduct(a.transpose() * a);
            const Matrix den = (b * gram).cwiseMax(kDenomFloor);
            b = b.cwiseProduct(num.cwiseQuotient(den));
        }
        // Time factor: row t numerator is diag(A^T X_t B).
        {
            Matrix num(t_count, rank);
            for (int t = 0; t < t_count; ++t)
                num.row(t) =
                    (a.transpose() * tensor[static_cast<std::size_t>(t)] * b).diagonal();
            const Matrix gram = (a.transpose() * a).cwiseProduct(b.transpose() * b);
            const Matrix den = (c * gram).cwiseMax(kDenomFloor);
            c = c.cwiseProduct(num.cwiseQuotient(den));
        }

        const double cur = objective(tensor, a, b, c);
        if (cur > prev) {
            // Floating-point stall: keep the previous (better) factors.
            a = a_before;
            b = b_before;
            c = c_before;
            break;
        }
        out.objective_trace.push_back(cur);
        const double improvement = (prev - cur) / std::max(prev, kDenomFloor);
        prev = cur;
        if (cur <= kDenomFloor || improvement < options.tol) break;
    }
    // Rolled back on the very first iteration: the trace still reports the
    // objective of the factors actually returned.
    if (out.objective_trace.empty()) out.objective_trace.push_back(prev);

    out.out_factor = std::move(a);
    out.in_factor = std::move(b);
    out.time_factor = std::move(c);
    return out;
}

TensorFactors ntf_factorize(const SnapshotSequence& seq, int rank, const NtfOptions& options) {
    std::vector<Matrix> tensor;
    tensor.reserve(static_cast<std::size_t>(seq.layer_count()));
    for (const Snapshot& layer : seq.layers()) tensor.push_back(layer.adjacency);
    return ntf_factorize(tensor, rank, options);
}

TensorFactors ntf_factorize_restarts(const SnapshotSequence& seq, int rank, int restarts,
                                     const NtfOptions& options) {
    if (restarts < 1) throw std::invalid_argument("restarts must be positive");
    TensorFactors best;
    double best_objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        NtfOptions run = options;
        run.seed = options.seed + static_cast<std::uint64_t>(r);
        run.init.reset();
        TensorFactors factors = ntf_factorize(seq, rank, run);
        const double obj =
            factors.objective_trace.empty() ? 0.0 : factors.objective_trace.back();
        if (obj < best_objective) {  // strict: ties keep the earlier (lower) seed
            best_objective = obj;
            best = std::move(factors);
        }
    }
    return best;
}

CommunityAssignment assign_communities(const TensorFactors& factors, double node_threshold,
                                       double time_threshold) {
    if (!(node_threshold > 0.0) || node_threshold > 1.0 || !(time_threshold > 0.0) ||
        time_threshold > 1.0)
        throw std::invalid_argument("thresholds must be in (0,1]");

    CommunityAssignment out;
    out.node_threshold = node_threshold;
    out.time_threshold = time_threshold;
    const Eigen::Index n = factors.out_factor.rows();
    const Eigen::Index t_count = factors.time_factor.rows();
    for (int r = 0; r < factors.rank; ++r) {
        Community community;
        const Vector node_weight =
            factors.out_factor.col(r).cwiseMax(factors.in_factor.col(r));
        const double node_max = node_weight.maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i)
            if (node_weight(i) >= node_threshold * node_max)
                community.members.push_back(static_cast<NodeId>(i));
        const double time_max = factors.time_factor.col(r).maxCoeff();
        for (Eigen::Index t = 0; t < t_count; ++t)
            if (factors.time_factor(t, r) >= time_threshold * time_max)
                community.active_layers.push_back(static_cast<int>(t));
        out.communities.push_back(std::move(community));
    }
    return out;
}

}  // namespace msnet

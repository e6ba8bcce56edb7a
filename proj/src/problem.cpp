#include "cnp/problem.hpp"

#include <algorithm>
#include <cmath>

#include "cnp/errors.hpp"

namespace cnp {

void InterpolationProblem::finish(BlaschkeProduct b, std::vector<Complex> nodes,
                                  std::vector<int>& order) {
    if (b.degree() < 2)
        throw InvalidParameter("constraint must have total multiplicity >= 2");
    if (nodes.empty()) throw InvalidParameter("at least one node required");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i]) >= 1.0) throw InvalidParameter("nodes must lie in the open disk");
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) <= kZeroMatchTol)
                throw InvalidParameter("nodes must be pairwise distinct");
    }

    // Snap nodes that match a zero of B, then list those first.
    std::vector<int> zero_nodes, free_nodes;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        bool matched = false;
        for (const auto& zero : b.zeros()) {
            if (std::abs(nodes[static_cast<size_t>(i)] - zero.alpha) <= kZeroMatchTol) {
                nodes[static_cast<size_t>(i)] = zero.alpha;
                matched = true;
                break;
            }
        }
        (matched ? zero_nodes : free_nodes).push_back(i);
    }
    order = zero_nodes;
    order.insert(order.end(), free_nodes.begin(), free_nodes.end());

    b_ = std::move(b);
    nodes_.resize(nodes.size());
    for (size_t i = 0; i < order.size(); ++i) nodes_[i] = nodes[static_cast<size_t>(order[i])];
    r_ = static_cast<int>(zero_nodes.size());
}

InterpolationProblem InterpolationProblem::scalar(BlaschkeProduct b, std::vector<Complex> nodes,
                                                  std::vector<Complex> targets) {
    if (targets.size() != nodes.size())
        throw InvalidParameter("one scalar target required per node");
    InterpolationProblem p;
    std::vector<int> order;
    p.finish(std::move(b), std::move(nodes), order);
    p.scalar_targets_.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i)
        p.scalar_targets_[i] = targets[static_cast<size_t>(order[i])];
    p.has_scalar_ = true;
    p.k_ = 1;
    return p;
}

InterpolationProblem InterpolationProblem::matrix(BlaschkeProduct b, std::vector<Complex> nodes,
                                                  std::vector<Eigen::MatrixXcd> targets) {
    if (targets.size() != nodes.size())
        throw InvalidParameter("one matrix target required per node");
    if (targets.empty()) throw InvalidParameter("at least one node required");
    const int k = static_cast<int>(targets[0].rows());
    for (const auto& w : targets)
        if (w.rows() != k || w.cols() != k)
            throw InvalidParameter("matrix targets must be square of a common size");
    InterpolationProblem p;
    std::vector<int> order;
    p.finish(std::move(b), std::move(nodes), order);
    p.matrix_targets_.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i)
        p.matrix_targets_[i] = targets[static_cast<size_t>(order[i])];
    p.has_matrix_ = true;
    p.k_ = k;
    return p;
}

InterpolationProblem InterpolationProblem::nodes_only(BlaschkeProduct b, std::vector<Complex> nodes) {
    InterpolationProblem p;
    std::vector<int> order;
    p.finish(std::move(b), std::move(nodes), order);
    return p;
}

const std::vector<Complex>& InterpolationProblem::scalar_targets() const {
    if (!has_scalar_) throw InvalidParameter("problem has no scalar targets");
    return scalar_targets_;
}

const std::vector<Eigen::MatrixXcd>& InterpolationProblem::matrix_targets() const {
    if (!has_matrix_) throw InvalidParameter("problem has no matrix targets");
    return matrix_targets_;
}

BlaschkeProduct InterpolationProblem::node_product() const {
    return BlaschkeProduct::for_points(nodes_);
}

}  // namespace cnp

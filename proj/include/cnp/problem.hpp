#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cnp/blaschke.hpp"

namespace cnp {

/**
 * An interpolation problem for the algebra of bounded analytic functions
 * constrained by a finite Blaschke product B (equal values at the zeros of
 * B, derivatives vanishing to the zeros' multiplicities).
 *
 * On construction the nodes are reordered so the first r of them are zeros
 * of B (snapped to the exact zero when within the matching tolerance), with
 * targets carried along. Requires degree(B) >= 2 and pairwise distinct
 * nodes.
 */
class InterpolationProblem {
public:
    InterpolationProblem() = default;  // empty placeholder, populate via factories

    static InterpolationProblem scalar(BlaschkeProduct b, std::vector<Complex> nodes,
                                       std::vector<Complex> targets);
    static InterpolationProblem matrix(BlaschkeProduct b, std::vector<Complex> nodes,
                                       std::vector<Eigen::MatrixXcd> targets);
    // Targets left unset; norms and envelopes only need the geometry.
    static InterpolationProblem nodes_only(BlaschkeProduct b, std::vector<Complex> nodes);

    const BlaschkeProduct& constraint() const { return b_; }
    const std::vector<Complex>& nodes() const { return nodes_; }
    int n() const { return static_cast<int>(nodes_.size()); }
    int r() const { return r_; }
    int m() const { return b_.degree(); }

    bool has_targets() const { return has_scalar_ || has_matrix_; }
    bool is_matrix() const { return has_matrix_; }
    int target_size() const { return k_; }  // 1 in scalar mode

    const std::vector<Complex>& scalar_targets() const;
    const std::vector<Eigen::MatrixXcd>& matrix_targets() const;

    // The Blaschke product E with a simple zero at every node.
    BlaschkeProduct node_product() const;

private:
    void finish(BlaschkeProduct b, std::vector<Complex> nodes, std::vector<int>& order);

    BlaschkeProduct b_;
    std::vector<Complex> nodes_;
    std::vector<Complex> scalar_targets_;
    std::vector<Eigen::MatrixXcd> matrix_targets_;
    bool has_scalar_ = false;
    bool has_matrix_ = false;
    int r_ = 0;
    int k_ = 1;
};

}  // namespace cnp

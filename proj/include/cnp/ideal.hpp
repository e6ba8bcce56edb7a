#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cnp/blaschke.hpp"
#include "cnp/modelspace.hpp"
#include "cnp/polynomial.hpp"
#include "cnp/problem.hpp"

namespace cnp {

/**
 * An element lambda + B * h of the constrained algebra, with h kept in the
 * bivariate form sum_k p_k(z) B(z)^k so that products stay exact and the
 * membership constraints (equal values at the zeros of B, derivatives
 * vanishing to the multiplicities) hold by construction. For a monomial
 * constraint z^N the coefficients are reduced to degree < N by division.
 */
class ConstrainedFunction {
public:
    ConstrainedFunction(BlaschkeProduct b, Complex lambda, std::vector<Polynomial> levels = {});
    static ConstrainedFunction constant(const BlaschkeProduct& b, Complex lambda) {
        return ConstrainedFunction(b, lambda);
    }
    // lambda + B * h for a plain polynomial h.
    static ConstrainedFunction affine(const BlaschkeProduct& b, Complex lambda, Polynomial h);

    const BlaschkeProduct& constraint() const { return b_; }
    Complex lambda() const { return lambda_; }
    const std::vector<Polynomial>& levels() const { return levels_; }

    Complex evaluate(Complex z) const;
    Jet jet_at(Complex z, int len) const;
    std::vector<Complex> taylor_at_zero(int n_terms) const;

    ConstrainedFunction operator+(const ConstrainedFunction& o) const;
    ConstrainedFunction operator-(const ConstrainedFunction& o) const;
    ConstrainedFunction operator*(const ConstrainedFunction& o) const;
    ConstrainedFunction operator+(Complex s) const;
    ConstrainedFunction operator*(Complex s) const;

private:
    void reduce_monomial();

    BlaschkeProduct b_;
    Complex lambda_{0.0, 0.0};
    std::vector<Polynomial> levels_;  // h = sum_k levels_[k] * B^k
};

struct IdealDescription {
    int r = 0;
    // r >= 1: the ideal is generator_inner * (all bounded analytic functions).
    BlaschkeProduct generator_inner;
    int w_dim = 0;
    // r = 0: coefficients c over the node Szego kernels defining the
    // generator 1 + B * sum_j c_j k_{z_j} (normalized to lambda = 1).
    Eigen::VectorXcd w_coeffs;
};

IdealDescription ideal_structure(const InterpolationProblem& problem);

// A function g in the constrained algebra taking distinct values on the
// Lemma-style node subset (the first zero node when r >= 1, plus all free
// nodes). Retries random draws, loud failure with the attained separation.
ConstrainedFunction separating_function(const InterpolationProblem& problem, uint64_t seed);

// The node subset used for the Lagrange-type construction.
std::vector<int> interpolation_node_subset(const InterpolationProblem& problem);

// Lagrange-type idempotents e_j on the node subset built from g:
// e_j = prod_{r != j} (g - g(z_r)) / (g(z_j) - g(z_r)).
std::vector<ConstrainedFunction> idempotents(const InterpolationProblem& problem,
                                             const ConstrainedFunction& g);

// Interpolant h with h(z_j) = w_j for every node; membership holds by
// construction. No norm guarantee. Targets at zero nodes must coincide.
ConstrainedFunction construct_interpolant(const InterpolationProblem& problem, uint64_t seed = 7);

// Matrix targets via the scalar idempotents entrywise.
std::vector<std::vector<ConstrainedFunction>> construct_matrix_interpolant(
    const InterpolationProblem& problem, uint64_t seed = 7);

struct DependenceVerdict {
    bool dependent = false;     // v_{n+1} lies in the span of v_1..v_n
    bool consistent = false;    // every nonzero coefficient pairs equal targets
    double residual = 0.0;      // least-squares residual in the Grammian norm
    std::vector<int> violations;  // indices with alpha_i != 0 but W_i != W_{n+1}
    Eigen::VectorXcd coefficients;
};

// Checks the forced-equality conclusion for a dependent kernel family:
// writing v_{n+1} = sum alpha_i v_i, positivity forces W_i = W_{n+1}
// whenever alpha_i != 0. Vectors are coefficient columns over a basis with
// Grammian `gram`.
DependenceVerdict dependence_check(const std::vector<Eigen::VectorXcd>& kernels,
                                   const std::vector<MatrixXcd>& targets, const MatrixXcd& gram);

}  // namespace cnp

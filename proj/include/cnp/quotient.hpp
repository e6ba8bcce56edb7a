#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cnp/modelspace.hpp"
#include "cnp/problem.hpp"

namespace cnp {

// Coset data for an element of the constrained algebra modulo the ideal of
// functions vanishing at the nodes: the common value at every zero of B and
// the values at the free nodes.
struct QuotientElement {
    Complex common_value;
    std::vector<Complex> free_values;
};

struct MatrixQuotientElement {
    MatrixXcd common_value;
    std::vector<MatrixXcd> free_values;
};

/**
 * The compression space H^2 (-) lcm(B, E) H^2 for a problem with at least
 * one node at a zero of B: basis labels (zeros of B with all orders, then
 * Szego labels at the free nodes) and their Grammian.
 */
class CompressionRep {
public:
    static CompressionRep build(const InterpolationProblem& problem);

    const GrammianRep& gram() const { return gram_; }
    const std::vector<KernelLabel>& labels() const { return gram_.labels(); }
    int dim() const { return gram_.dim(); }  // m + n - r
    int m() const { return m_; }
    int n() const { return n_; }
    int r() const { return r_; }
    int free_count() const { return n_ - r_; }
    const std::vector<Complex>& free_nodes() const { return free_nodes_; }

private:
    GrammianRep gram_;
    std::vector<Complex> free_nodes_;
    int m_ = 0, n_ = 0, r_ = 0;
};

CompressionRep build_compression(const InterpolationProblem& problem);

// Coefficients of M_f^* applied to the basis function of `label`, expanded
// over lower-order labels at the same point:
// M_f^*(z^m k_w^(m+1)) = sum_j conj(f^(j)(w)/j!) z^(m-j) k_w^(m-j+1).
// `f_jet_at_w` must carry at least order+1 Taylor coefficients of f at w.
std::vector<std::pair<KernelLabel, Complex>> mfstar_on_label(const Jet& f_jet_at_w,
                                                             const KernelLabel& label);

// Full matrix of M_f^* on the compression basis; `jet_at` must return the
// Taylor expansion of f about a point. For constrained f this is diagonal.
MatrixXcd mfstar_matrix(const std::function<Jet(Complex, int)>& jet_at, const CompressionRep& comp);

// rho(f) = Q^{-1/2} D_f Q^{1/2}; similar to the diagonal of coset values,
// with the exact quotient norm as its largest singular value.
MatrixXcd rho(const QuotientElement& elem, const CompressionRep& comp);
MatrixXcd rho_matrix(const MatrixQuotientElement& elem, const CompressionRep& comp);

double quotient_norm(const QuotientElement& elem, const CompressionRep& comp);
double quotient_norm(const MatrixQuotientElement& elem, const CompressionRep& comp);

struct ContractionVerdict {
    bool contraction = false;
    double margin = 0.0;  // min eigenvalue of Q - D Q D^*
};

ContractionVerdict is_contraction(const QuotientElement& elem, const CompressionRep& comp);
ContractionVerdict is_contraction(const MatrixQuotientElement& elem, const CompressionRep& comp);

// Coset data read off the problem targets (requires r >= 1 and consistent
// targets at the zero nodes).
QuotientElement element_from_targets(const InterpolationProblem& problem);
MatrixQuotientElement matrix_element_from_targets(const InterpolationProblem& problem);

struct GapSearchConfig {
    uint64_t seed = 1;
    long budget = 100000;
    double sweep_margin_min = 1e-6;   // required min eigenvalue over all v
    double norm_excess_min = 1e-4;    // required quotient norm excess over 1
    int hill_climb_steps = 400;       // local refinement budget per promising start
};

struct GapSearchResult {
    bool found = false;
    std::vector<MatrixXcd> targets;   // in problem node order (scaled instance)
    double quotient_norm = 0.0;       // of the scaled instance, > 1 on success
    double sweep_min_lambda = 0.0;    // re-verified sweep margin of the scaled instance
    double contraction_margin = 0.0;  // min eig of Q - D Q D^*, < 0 on success
    double best_ratio = 0.0;          // best norm/sup-multiplier ratio seen
    long iterations_used = 0;
    uint64_t seed = 0;
};

// Searches 2x2 targets for an instance where the all-v matrix Pick condition
// holds with margin but the exact quotient norm still exceeds 1. The
// template provides B and the nodes; requires r >= 1 and m <= n - r.
GapSearchResult matrix_gap_search(const InterpolationProblem& problem_template,
                                  const GapSearchConfig& config);

}  // namespace cnp

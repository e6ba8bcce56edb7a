#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cnp/problem.hpp"
#include "cnp/quotient.hpp"

namespace cnp {

// Images under rho of the idempotent partition of the quotient: the element
// with common value 1 and zero node values, then one per free node.
std::vector<MatrixXcd> quotient_generators(const CompressionRep& comp);

// Orthonormal (trace inner product) basis of a subspace of d x d matrices
// closed under multiplication and adjoint.
struct MatrixAlgebraBasis {
    int ambient = 0;  // d
    std::vector<MatrixXcd> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

// Smallest subspace containing the generators and the identity, closed under
// products and adjoints. Rank decisions use singular values relative to the
// largest, threshold `rank_tol`.
MatrixAlgebraBasis star_algebra_closure(const std::vector<MatrixXcd>& generators,
                                        double rank_tol = 1e-9);

struct CommutantResult {
    int dim = 0;
    std::vector<MatrixXcd> basis;
    bool conditioning_warning = false;  // borderline singular values seen
};

// Solves X G = G X over the algebra basis; nullspace via singular values.
CommutantResult commutant(const MatrixAlgebraBasis& algebra, double tol = 1e-9);

struct EnvelopeReport {
    int m = 0, n = 0, r = 0;
    int ambient = 0;        // m + n - r
    int algebra_dim = 0;
    int commutant_dim = 0;
    bool is_full = false;   // algebra_dim == ambient^2
    bool prediction = false;  // m <= n - r
    bool agreement = false;
};

// Computes the generated algebra dimension and its commutant independently,
// checks the two routes against each other and against the m <= n - r
// predicate. Disagreement between the numerical routes throws InternalError.
EnvelopeReport envelope_report(const InterpolationProblem& problem);

}  // namespace cnp

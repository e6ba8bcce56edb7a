#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cnp/blaschke.hpp"
#include "cnp/polynomial.hpp"

namespace cnp {

/**
 * An invariant subspace psi (V (+) z^N H^2) for the algebra constrained by
 * B = z^N, given by a monomial inner factor psi = z^a and a polynomial basis
 * of V inside H^2 (-) z^N H^2 (degrees < N).
 */
struct InvariantSubspace {
    BlaschkeProduct psi;               // monomial z^a
    std::vector<Polynomial> v_basis;   // degrees < N, linearly independent
    int modulus = 0;                   // N

    static InvariantSubspace make(BlaschkeProduct psi, std::vector<Polynomial> v_basis, int n);
};

struct CanonicalForm {
    BlaschkeProduct phi;               // the inner divisor of the subspace
    std::vector<Polynomial> w_basis;   // canonical W, gcd(W, z^N) = 1
};

// Canonical decomposition: phi = psi * z^s with s the vanishing order of V
// at the origin (capped at N), W = z^-s (V (+) z^N span{1..z^(s-1)}).
CanonicalForm canonical_form(const InvariantSubspace& s);

struct LatticeReport {
    InvariantSubspace result;
    CanonicalForm canonical;
    BlaschkeProduct divisor;        // inner divisor of the result
    BlaschkeProduct lower_bound;    // meet: lcm of the input divisors; join: gcd
    BlaschkeProduct upper_bound;    // meet only: z^N * lcm
    bool bounds_hold = false;
};

LatticeReport meet(const InvariantSubspace& s1, const InvariantSubspace& s2);
LatticeReport join(const InvariantSubspace& s1, const InvariantSubspace& s2);

struct ConsistencyVerdict {
    bool equal = false;               // the two decompositions denote one subspace
    bool biconditional_holds = false; // phi == psi exactly when W == V
};

ConsistencyVerdict decomposition_consistency(const InvariantSubspace& first,
                                             const InvariantSubspace& second);

}  // namespace cnp

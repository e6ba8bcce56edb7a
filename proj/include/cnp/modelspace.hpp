#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cnp/blaschke.hpp"
#include "cnp/jet.hpp"

namespace cnp {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Szego kernel k_w evaluated at z: 1/(1 - z conj(w)).
Complex szego(Complex z, Complex w);

// Label (w, order) for the model-space basis function z^order k_w^(order+1),
// i.e. z^order / (1 - conj(w) z)^(order+1).
struct KernelLabel {
    Complex w;
    int order = 0;

    bool operator==(const KernelLabel& o) const { return w == o.w && order == o.order; }
};

Complex eval_label(const KernelLabel& label, Complex z);
Jet label_jet(const KernelLabel& label, Complex at, int len);

// <f_a, f_b> in H^2, via the identity <f, z^m k_w^(m+1)> = f^(m)(w)/m!.
// Conjugate-symmetric: inner_product(a, b) = conj(inner_product(b, a)).
Complex inner_product(const KernelLabel& a, const KernelLabel& b);

/**
 * Grammian of an ordered derivative-kernel basis, with its Hermitian square
 * root and inverse square root (full eigendecomposition, so conditioning
 * diagnostics come free).
 *
 * Entry convention: Q(i, j) = <f_j, f_i> = (1/order_i!) d^order_i f_j (w_i),
 * so coefficient vectors satisfy ||sum c_a f_a||^2 = c^* Q c and the node
 * corner of a compression Grammian is the Pick matrix
 * [1/(1 - z_i conj(z_j))].
 */
class GrammianRep {
public:
    // Labels must be pairwise distinct as (w, order) pairs. Throws
    // NearDependentBasis when the minimum eigenvalue drops below 1e-12.
    static GrammianRep build(std::vector<KernelLabel> labels);

    const std::vector<KernelLabel>& labels() const { return labels_; }
    int dim() const { return static_cast<int>(labels_.size()); }
    const MatrixXcd& q() const { return q_; }
    const MatrixXcd& q_half() const { return q_half_; }
    const MatrixXcd& q_invhalf() const { return q_invhalf_; }
    double min_eigenvalue() const { return min_eig_; }
    double max_eigenvalue() const { return max_eig_; }
    // Set when some |w| exceeds 0.95; inner products are still exact but
    // downstream quadrature cross-checks degrade out there.
    bool conditioning_warning() const { return conditioning_warning_; }

    double norm(const VectorXcd& coeffs) const;

private:
    std::vector<KernelLabel> labels_;
    MatrixXcd q_, q_half_, q_invhalf_;
    double min_eig_ = 0.0, max_eig_ = 0.0;
    bool conditioning_warning_ = false;
};

// Coefficient vector over a derivative-kernel basis; represents an element
// of the model space spanned by that basis.
struct ModelVector {
    VectorXcd coeffs;
};

// Basis labels of H^2 (-) B H^2: zeros of B in input order, orders ascending
// within each zero. Dimension = degree of B.
std::vector<KernelLabel> model_basis(const BlaschkeProduct& b);

/**
 * The model space H^2 (-) B H^2 with its basis and Grammian built once.
 */
class ModelSpace {
public:
    explicit ModelSpace(BlaschkeProduct b);

    const BlaschkeProduct& constraint() const { return b_; }
    const std::vector<KernelLabel>& basis() const { return gram_.labels(); }
    const GrammianRep& gram() const { return gram_; }
    int dim() const { return gram_.dim(); }

    Complex evaluate(const ModelVector& v, Complex z) const;

    // Rotate the first coordinate of modulus > 1e-12 to the nonnegative real
    // axis; the parameter space of kernels is projective.
    ModelVector phase_fixed(const ModelVector& v) const;

    ModelVector normalized(const ModelVector& v) const;

    // K^v(z, w) = v(z) conj(v(w)) + B(z) conj(B(w)) / (1 - z conj(w)),
    // for unit v.
    Complex kernel(const ModelVector& v, Complex z, Complex w) const;

private:
    BlaschkeProduct b_;
    GrammianRep gram_;
};

}  // namespace cnp

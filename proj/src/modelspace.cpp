#include "cnp/modelspace.hpp"

#include <cmath>

#include "cnp/errors.hpp"

namespace cnp {

Complex szego(Complex z, Complex w) {
    if (std::abs(w) >= 1.0) throw InvalidParameter("szego kernel point must lie in the open disk");
    return 1.0 / (1.0 - z * std::conj(w));
}

Complex eval_label(const KernelLabel& label, Complex z) {
    Complex num(1.0, 0.0);
    for (int i = 0; i < label.order; ++i) num *= z;
    Complex den = 1.0 - std::conj(label.w) * z;
    Complex denp(1.0, 0.0);
    for (int i = 0; i <= label.order; ++i) denp *= den;
    return num / denp;
}

Jet label_jet(const KernelLabel& label, Complex at, int len) {
    const Jet var = Jet::variable(at, len);
    const Jet den = (var * (-std::conj(label.w))) + Complex(1.0);
    Jet num = Jet::constant(Complex(1.0), len);
    for (int i = 0; i < label.order; ++i) num = num * var;
    return num / den.pow(label.order + 1);
}

Complex inner_product(const KernelLabel& a, const KernelLabel& b) {
    // Taylor coefficient b.order of f_a about b.w.
    return label_jet(a, b.w, b.order + 1)[b.order];
}

GrammianRep GrammianRep::build(std::vector<KernelLabel> labels) {
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw InvalidParameter("grammian labels must be pairwise distinct");

    GrammianRep rep;
    const int d = static_cast<int>(labels.size());
    rep.labels_ = std::move(labels);
    rep.q_ = MatrixXcd(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            rep.q_(i, j) = inner_product(rep.labels_[static_cast<size_t>(j)],
                                         rep.labels_[static_cast<size_t>(i)]);
        }
        if (std::abs(rep.labels_[static_cast<size_t>(i)].w) > 0.95) rep.conditioning_warning_ = true;
    }
    // Symmetrize away the last-ulp asymmetry so the eigensolver sees an
    // exactly Hermitian matrix.
    rep.q_ = ((rep.q_ + rep.q_.adjoint()) * 0.5).eval();

    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(rep.q_);
    internal_check(eig.info() == Eigen::Success, "grammian eigendecomposition failed");
    const Eigen::VectorXd vals = eig.eigenvalues();
    rep.min_eig_ = d > 0 ? vals.minCoeff() : 0.0;
    rep.max_eig_ = d > 0 ? vals.maxCoeff() : 0.0;
    if (d > 0 && rep.min_eig_ < 1e-12)
        throw NearDependentBasis("grammian minimum eigenvalue " + std::to_string(rep.min_eig_) +
                                 " below 1e-12; labels are numerically dependent");
    Eigen::VectorXd half = vals.array().sqrt();
    Eigen::VectorXd invhalf = vals.array().rsqrt();
    rep.q_half_ = eig.eigenvectors() * half.asDiagonal() * eig.eigenvectors().adjoint();
    rep.q_invhalf_ = eig.eigenvectors() * invhalf.asDiagonal() * eig.eigenvectors().adjoint();
    return rep;
}

double GrammianRep::norm(const VectorXcd& coeffs) const {
    return std::sqrt(std::max(0.0, (coeffs.adjoint() * q_ * coeffs)(0, 0).real()));
}

std::vector<KernelLabel> model_basis(const BlaschkeProduct& b) {
    std::vector<KernelLabel> labels;
    for (const auto& zero : b.zeros())
        for (int i = 0; i < zero.mult; ++i) labels.push_back({zero.alpha, i});
    return labels;
}

ModelSpace::ModelSpace(BlaschkeProduct b) : b_(std::move(b)), gram_(GrammianRep::build(model_basis(b_))) {}

Complex ModelSpace::evaluate(const ModelVector& v, Complex z) const {
    internal_check(v.coeffs.size() == gram_.dim(), "model vector dimension mismatch");
    Complex acc(0.0, 0.0);
    for (int a = 0; a < gram_.dim(); ++a)
        acc += v.coeffs(a) * eval_label(gram_.labels()[static_cast<size_t>(a)], z);
    return acc;
}

ModelVector ModelSpace::phase_fixed(const ModelVector& v) const {
    for (int a = 0; a < v.coeffs.size(); ++a) {
        const double mag = std::abs(v.coeffs(a));
        if (mag > 1e-12) {
            const Complex rot = std::conj(v.coeffs(a)) / mag;
            return ModelVector{v.coeffs * rot};
        }
    }
    return v;
}

ModelVector ModelSpace::normalized(const ModelVector& v) const {
    const double n = gram_.norm(v.coeffs);
    if (n == 0.0) throw InvalidParameter("cannot normalize the zero model vector");
    return ModelVector{v.coeffs / n};
}

Complex ModelSpace::kernel(const ModelVector& v, Complex z, Complex w) const {
    const double n = gram_.norm(v.coeffs);
    if (std::abs(n - 1.0) > 1e-8) throw InvalidParameter("constrained kernel requires a unit model vector");
    return evaluate(v, z) * std::conj(evaluate(v, w)) +
           b_.evaluate(z) * std::conj(b_.evaluate(w)) * szego(z, w);
}

}  // namespace cnp

#include "cnp/cstar.hpp"

#include <cmath>

#include "cnp/errors.hpp"

namespace cnp {

std::vector<MatrixXcd> quotient_generators(const CompressionRep& comp) {
    std::vector<MatrixXcd> gens;
    QuotientElement e0{Complex(1.0), std::vector<Complex>(static_cast<size_t>(comp.free_count()), Complex(0.0))};
    gens.push_back(rho(e0, comp));
    for (int j = 0; j < comp.free_count(); ++j) {
        QuotientElement ej{Complex(0.0), std::vector<Complex>(static_cast<size_t>(comp.free_count()), Complex(0.0))};
        ej.free_values[static_cast<size_t>(j)] = 1.0;
        gens.push_back(rho(ej, comp));
    }
    return gens;
}

namespace {

Eigen::VectorXcd vectorize(const MatrixXcd& a) {
    Eigen::VectorXcd v(a.size());
    int at = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) v(at++) = a(i, j);
    return v;
}

MatrixXcd unvectorize(const Eigen::VectorXcd& v, int d) {
    MatrixXcd a(d, d);
    int at = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = v(at++);
    return a;
}

// Orthonormal basis (trace inner product) of the span of `elements`.
std::vector<MatrixXcd> orthonormal_span(const std::vector<MatrixXcd>& elements, int d,
                                        double rank_tol) {
    if (elements.empty()) return {};
    MatrixXcd stacked(d * d, static_cast<int>(elements.size()));
    for (size_t c = 0; c < elements.size(); ++c) stacked.col(static_cast<int>(c)) = vectorize(elements[c]);
    Eigen::JacobiSVD<MatrixXcd> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = sv(0) * rank_tol;
    std::vector<MatrixXcd> basis;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) basis.push_back(unvectorize(svd.matrixU().col(i), d));
    return basis;
}

}  // namespace

MatrixAlgebraBasis star_algebra_closure(const std::vector<MatrixXcd>& generators, double rank_tol) {
    if (generators.empty()) throw InvalidParameter("closure needs at least one generator");
    const int d = static_cast<int>(generators[0].rows());
    for (const auto& g : generators)
        if (g.rows() != d || g.cols() != d) throw InvalidParameter("generators must share a square size");

    std::vector<MatrixXcd> current{MatrixXcd::Identity(d, d)};
    current.insert(current.end(), generators.begin(), generators.end());
    for (const auto& g : generators) current.push_back(g.adjoint());
    std::vector<MatrixXcd> basis = orthonormal_span(current, d, rank_tol);

    for (int round = 0; round <= d * d + 1; ++round) {
        std::vector<MatrixXcd> extended = basis;
        for (const auto& a : basis) extended.push_back(a.adjoint());
        for (const auto& a : basis)
            for (const auto& b : basis) extended.push_back(a * b);
        std::vector<MatrixXcd> next = orthonormal_span(extended, d, rank_tol);
        if (next.size() == basis.size()) {
            MatrixAlgebraBasis out;
            out.ambient = d;
            out.basis = std::move(next);
            return out;
        }
        if (next.size() < basis.size())
            throw ConditioningError("algebra dimension oscillated under the rank tolerance");
        basis = std::move(next);
    }
    throw InternalError("algebra closure failed to stabilize");
}

CommutantResult commutant(const MatrixAlgebraBasis& algebra, double tol) {
    const int d = algebra.ambient;
    if (d == 0 || algebra.basis.empty()) throw InvalidParameter("empty algebra basis");
    // Stack G^T (x) I - I (x) G over the basis; vec is row-major here, so
    // vec(XG - GX) = (G^T (x) I - I (x) G)... with row-major vec(AXB) =
    // (A (x) B^T) vec(X); XG - GX = I X G - G X I.
    MatrixXcd system(static_cast<int>(algebra.basis.size()) * d * d, d * d);
    int at = 0;
    for (const auto& g : algebra.basis) {
        MatrixXcd block = MatrixXcd::Zero(d * d, d * d);
        // vec(XG) = (I (x) G^T) vec(X), vec(GX) = (G (x) I) vec(X), row-major.
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) {
                    block(i * d + j, i * d + l) += g(l, j);   // (XG)_{ij} = X_{il} G_{lj}
                    block(i * d + j, l * d + j) -= g(i, l);   // (GX)_{ij} = G_{il} X_{lj}
                }
        system.block(at, 0, d * d, d * d) = block;
        at += d * d;
    }
    Eigen::JacobiSVD<MatrixXcd> svd(system, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    CommutantResult result;
    for (int i = 0; i < sv.size(); ++i) {
        const double rel = sv(i) / smax;
        if (rel > 1e-11 && rel < 1e-7) result.conditioning_warning = true;
    }
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= smax * tol) result.basis.push_back(unvectorize(svd.matrixV().col(i), d));
    // The nullspace also contains anything beyond the computed singular
    // values when the system is wide; here rows >= d*d always.
    result.dim = static_cast<int>(result.basis.size());
    return result;
}

EnvelopeReport envelope_report(const InterpolationProblem& problem) {
    const CompressionRep comp = build_compression(problem);
    EnvelopeReport report;
    report.m = problem.m();
    report.n = problem.n();
    report.r = problem.r();
    report.ambient = comp.dim();

    const MatrixAlgebraBasis algebra = star_algebra_closure(quotient_generators(comp));
    const CommutantResult comm = commutant(algebra);
    report.algebra_dim = algebra.dim();
    report.commutant_dim = comm.dim;
    report.is_full = report.algebra_dim == report.ambient * report.ambient;

    const bool full_by_commutant = comm.dim == 1;
    internal_check(report.is_full == full_by_commutant,
                   "algebra dimension and commutant dimension disagree on fullness");

    report.prediction = problem.m() <= problem.n() - problem.r();
    report.agreement = report.is_full == report.prediction;
    internal_check(report.agreement, "numerical fullness contradicts the m <= n - r dichotomy");
    return report;
}

}  // namespace cnp

#include "cnp/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnp/errors.hpp"
#include "cnp/rng.hpp"

namespace cnp {

ConstrainedFunction::ConstrainedFunction(BlaschkeProduct b, Complex lambda,
                                         std::vector<Polynomial> levels)
    : b_(std::move(b)), lambda_(lambda), levels_(std::move(levels)) {
    while (!levels_.empty() && levels_.back().is_zero()) levels_.pop_back();
    reduce_monomial();
}

ConstrainedFunction ConstrainedFunction::affine(const BlaschkeProduct& b, Complex lambda,
                                                Polynomial h) {
    return ConstrainedFunction(b, lambda, {std::move(h)});
}

void ConstrainedFunction::reduce_monomial() {
    // Only a monomial constraint admits finite reduction to degree < N.
    const auto& zeros = b_.zeros();
    if (zeros.size() != 1 || zeros[0].alpha != Complex(0.0)) return;
    const int n = zeros[0].mult;
    for (size_t k = 0; k < levels_.size(); ++k) {
        if (levels_[k].degree() < n) continue;
        auto [low, high] = levels_[k].split_at(n);
        levels_[k] = low;
        if (k + 1 >= levels_.size()) levels_.emplace_back();
        levels_[k + 1] = levels_[k + 1] + high;
    }
    while (!levels_.empty() && levels_.back().is_zero()) levels_.pop_back();
}

Complex ConstrainedFunction::evaluate(Complex z) const {
    if (levels_.empty()) return lambda_;
    const Complex bz = b_.evaluate(z);
    Complex acc(0.0, 0.0);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) acc = acc * bz + it->evaluate(z);
    return lambda_ + bz * acc;
}

Jet ConstrainedFunction::jet_at(Complex z, int len) const {
    if (levels_.empty()) return Jet::constant(lambda_, len);
    const Jet bjet = b_.jet_at(z, len);
    Jet acc = Jet::constant(Complex(0.0), len);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) acc = acc * bjet + it->jet_at(z, len);
    return (bjet * acc) + lambda_;
}

std::vector<Complex> ConstrainedFunction::taylor_at_zero(int n_terms) const {
    return jet_at(Complex(0.0), n_terms).coeffs();
}

ConstrainedFunction ConstrainedFunction::operator+(const ConstrainedFunction& o) const {
    internal_check(b_ == o.b_, "constrained functions must share a constraint");
    std::vector<Polynomial> levels(std::max(levels_.size(), o.levels_.size()));
    for (size_t k = 0; k < levels.size(); ++k) {
        if (k < levels_.size()) levels[k] = levels[k] + levels_[k];
        if (k < o.levels_.size()) levels[k] = levels[k] + o.levels_[k];
    }
    return ConstrainedFunction(b_, lambda_ + o.lambda_, std::move(levels));
}

ConstrainedFunction ConstrainedFunction::operator-(const ConstrainedFunction& o) const {
    return *this + (o * Complex(-1.0));
}

ConstrainedFunction ConstrainedFunction::operator*(const ConstrainedFunction& o) const {
    internal_check(b_ == o.b_, "constrained functions must share a constraint");
    // (a + B h1)(b + B h2) = ab + B(a h2 + b h1 + B h1 h2)
    std::vector<Polynomial> levels;
    auto add_at = [&levels](size_t k, const Polynomial& p) {
        if (levels.size() <= k) levels.resize(k + 1);
        levels[k] = levels[k] + p;
    };
    for (size_t k = 0; k < o.levels_.size(); ++k) add_at(k, o.levels_[k] * lambda_);
    for (size_t k = 0; k < levels_.size(); ++k) add_at(k, levels_[k] * o.lambda_);
    for (size_t k1 = 0; k1 < levels_.size(); ++k1)
        for (size_t k2 = 0; k2 < o.levels_.size(); ++k2)
            add_at(k1 + k2 + 1, levels_[k1] * o.levels_[k2]);
    return ConstrainedFunction(b_, lambda_ * o.lambda_, std::move(levels));
}

ConstrainedFunction ConstrainedFunction::operator+(Complex s) const {
    return ConstrainedFunction(b_, lambda_ + s, levels_);
}

ConstrainedFunction ConstrainedFunction::operator*(Complex s) const {
    std::vector<Polynomial> levels = levels_;
    for (auto& p : levels) p = p * s;
    return ConstrainedFunction(b_, lambda_ * s, std::move(levels));
}

IdealDescription ideal_structure(const InterpolationProblem& problem) {
    IdealDescription desc;
    desc.r = problem.r();
    if (problem.r() >= 1) {
        desc.generator_inner = lcm(problem.constraint(), problem.node_product());
        desc.w_dim = problem.r();
        return desc;
    }
    // r = 0: solve diag(B(z_j)) [K(z_i, z_j)] c = -1 with lambda = 1.
    const int n = problem.n();
    MatrixXcd system(n, n);
    for (int i = 0; i < n; ++i) {
        const Complex bi = problem.constraint().evaluate(problem.nodes()[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j)
            system(i, j) = bi * szego(problem.nodes()[static_cast<size_t>(i)],
                                      problem.nodes()[static_cast<size_t>(j)]);
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Constant(n, Complex(-1.0));
    Eigen::FullPivLU<MatrixXcd> lu(system);
    internal_check(lu.isInvertible(), "node kernel system singular despite distinct free nodes");
    desc.w_coeffs = lu.solve(rhs);
    desc.w_dim = 1;
    return desc;
}

std::vector<int> interpolation_node_subset(const InterpolationProblem& problem) {
    std::vector<int> subset;
    if (problem.r() >= 1) subset.push_back(0);
    for (int j = problem.r(); j < problem.n(); ++j) subset.push_back(j);
    return subset;
}

ConstrainedFunction separating_function(const InterpolationProblem& problem, uint64_t seed) {
    const std::vector<int> subset = interpolation_node_subset(problem);
    Rng rng(seed);
    constexpr int kBudget = 50;
    double best_separation = 0.0;
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng child = rng.spawn(static_cast<uint64_t>(attempt));
        const Complex lambda0 = child.annulus(0.3, 1.0);
        Polynomial h(std::vector<Complex>{child.annulus(0.3, 1.0), child.annulus(0.3, 1.0)});
        ConstrainedFunction g = ConstrainedFunction::affine(problem.constraint(), lambda0, h);
        if (subset.size() < 2) return g;
        double min_sep = std::numeric_limits<double>::infinity();
        double diameter = 0.0;
        for (size_t a = 0; a < subset.size(); ++a)
            for (size_t b = a + 1; b < subset.size(); ++b) {
                const double d = std::abs(g.evaluate(problem.nodes()[static_cast<size_t>(subset[a])]) -
                                          g.evaluate(problem.nodes()[static_cast<size_t>(subset[b])]));
                min_sep = std::min(min_sep, d);
                diameter = std::max(diameter, d);
            }
        best_separation = std::max(best_separation, min_sep);
        if (diameter > 0.0 && min_sep >= 1e-6 * diameter) return g;
    }
    throw ConditioningError("no separating function found in budget; best separation " +
                            std::to_string(best_separation));
}

std::vector<ConstrainedFunction> idempotents(const InterpolationProblem& problem,
                                             const ConstrainedFunction& g) {
    const std::vector<int> subset = interpolation_node_subset(problem);
    std::vector<Complex> values;
    values.reserve(subset.size());
    for (int idx : subset) values.push_back(g.evaluate(problem.nodes()[static_cast<size_t>(idx)]));

    std::vector<ConstrainedFunction> out;
    for (size_t j = 0; j < subset.size(); ++j) {
        ConstrainedFunction e = ConstrainedFunction::constant(problem.constraint(), Complex(1.0));
        for (size_t l = 0; l < subset.size(); ++l) {
            if (l == j) continue;
            const Complex den = values[j] - values[l];
            if (std::abs(den) < 1e-12)
                throw ConditioningError("separating function values too close for stable idempotents");
            e = e * ((g + (-values[l])) * (1.0 / den));
        }
        out.push_back(std::move(e));
    }
    return out;
}

ConstrainedFunction construct_interpolant(const InterpolationProblem& problem, uint64_t seed) {
    const auto& targets = problem.scalar_targets();
    // Zero nodes carry the common value; differing targets there cannot be
    // interpolated by a constrained function.
    for (int j = 1; j < problem.r(); ++j)
        if (std::abs(targets[static_cast<size_t>(j)] - targets[0]) > 1e-10)
            throw InfeasibleByStructure("targets at constraint zeros must coincide");

    const ConstrainedFunction g = separating_function(problem, seed);
    const std::vector<ConstrainedFunction> e = idempotents(problem, g);
    const std::vector<int> subset = interpolation_node_subset(problem);
    ConstrainedFunction h = ConstrainedFunction::constant(problem.constraint(), Complex(0.0));
    for (size_t j = 0; j < subset.size(); ++j)
        h = h + e[j] * targets[static_cast<size_t>(subset[j])];
    return h;
}

std::vector<std::vector<ConstrainedFunction>> construct_matrix_interpolant(
    const InterpolationProblem& problem, uint64_t seed) {
    const auto& targets = problem.matrix_targets();
    for (int j = 1; j < problem.r(); ++j)
        if ((targets[static_cast<size_t>(j)] - targets[0]).norm() > 1e-10)
            throw InfeasibleByStructure("targets at constraint zeros must coincide");
    const int k = problem.target_size();
    const ConstrainedFunction g = separating_function(problem, seed);
    const std::vector<ConstrainedFunction> e = idempotents(problem, g);
    const std::vector<int> subset = interpolation_node_subset(problem);
    std::vector<std::vector<ConstrainedFunction>> f(
        static_cast<size_t>(k),
        std::vector<ConstrainedFunction>(static_cast<size_t>(k),
                                         ConstrainedFunction::constant(problem.constraint(), Complex(0.0))));
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (size_t j = 0; j < subset.size(); ++j)
                f[static_cast<size_t>(s)][static_cast<size_t>(t)] =
                    f[static_cast<size_t>(s)][static_cast<size_t>(t)] +
                    e[j] * targets[static_cast<size_t>(subset[j])](s, t);
    return f;
}

DependenceVerdict dependence_check(const std::vector<Eigen::VectorXcd>& kernels,
                                   const std::vector<MatrixXcd>& targets, const MatrixXcd& gram) {
    if (kernels.size() < 2 || kernels.size() != targets.size())
        throw InvalidParameter("dependence check needs n+1 kernels with matching targets");
    const int count = static_cast<int>(kernels.size()) - 1;
    const int dim = static_cast<int>(kernels[0].size());
    MatrixXcd basis(dim, count);
    for (int i = 0; i < count; ++i) basis.col(i) = kernels[static_cast<size_t>(i)];
    const Eigen::VectorXcd& last = kernels[static_cast<size_t>(count)];

    // Least squares in the Grammian inner product.
    const MatrixXcd normal = basis.adjoint() * gram * basis;
    const Eigen::VectorXcd rhs = basis.adjoint() * gram * last;
    Eigen::VectorXcd alpha = normal.ldlt().solve(rhs);
    const Eigen::VectorXcd diff = last - basis * alpha;
    const double residual =
        std::sqrt(std::max(0.0, (diff.adjoint() * gram * diff)(0, 0).real()));

    DependenceVerdict verdict;
    verdict.residual = residual;
    verdict.coefficients = alpha;
    if (residual > 1e-10) {
        verdict.dependent = false;
        verdict.consistent = false;  // lemma inapplicable
        return verdict;
    }
    verdict.dependent = true;
    verdict.consistent = true;
    for (int i = 0; i < count; ++i) {
        if (std::abs(alpha(i)) <= 1e-10) continue;
        if ((targets[static_cast<size_t>(i)] - targets.back()).norm() > 1e-10) {
            verdict.consistent = false;
            verdict.violations.push_back(i);
        }
    }
    return verdict;
}

}  // namespace cnp

#include "cnp/feasibility.hpp"

#include <cmath>

#include "cnp/errors.hpp"
#include "cnp/rng.hpp"

namespace cnp {

PickResult classical_pick(const std::vector<Complex>& nodes, const std::vector<Complex>& targets) {
    if (nodes.size() != targets.size()) throw InvalidParameter("nodes/targets length mismatch");
    const int n = static_cast<int>(nodes.size());
    PickResult res;
    res.matrix = MatrixXcd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            res.matrix(i, j) = (1.0 - targets[static_cast<size_t>(i)] * std::conj(targets[static_cast<size_t>(j)])) *
                               szego(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(((res.matrix + res.matrix.adjoint()) * 0.5).eval());
    res.min_eigenvalue = eig.eigenvalues().minCoeff();
    res.psd = res.min_eigenvalue >= -kPsdTol;
    return res;
}

namespace {

// Shared data for the sweep objective. The kernel at nodes decomposes as
// K^v(z_i, z_j) = y_i conj(y_j) + S_ij with y = (evaluation matrix) * coeffs,
// so only y moves during the optimization.
struct SweepData {
    int n = 0;           // nodes
    int m = 0;           // model-space dimension
    int k = 1;           // target block size
    MatrixXcd eval;      // n x m, eval(i, a) = f_a(z_i)
    MatrixXcd eval_u;    // eval * Q^{-1/2}; maps Euclidean sphere coords to y
    MatrixXcd s;         // S_ij = B(z_i) conj(B(z_j)) szego(z_i, z_j)
    std::vector<MatrixXcd> c;  // c[i*n+j] = I - W_i W_j^*, k x k
};

SweepData make_sweep_data(const InterpolationProblem& problem, const ModelSpace& space, bool matrix_mode) {
    SweepData d;
    d.n = problem.n();
    d.m = space.dim();
    d.k = matrix_mode ? problem.target_size() : 1;
    d.eval = MatrixXcd(d.n, d.m);
    for (int i = 0; i < d.n; ++i)
        for (int a = 0; a < d.m; ++a)
            d.eval(i, a) = eval_label(space.basis()[static_cast<size_t>(a)],
                                      problem.nodes()[static_cast<size_t>(i)]);
    d.eval_u = d.eval * space.gram().q_invhalf();
    d.s = MatrixXcd(d.n, d.n);
    std::vector<Complex> bvals(static_cast<size_t>(d.n));
    for (int i = 0; i < d.n; ++i)
        bvals[static_cast<size_t>(i)] = problem.constraint().evaluate(problem.nodes()[static_cast<size_t>(i)]);
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            d.s(i, j) = bvals[static_cast<size_t>(i)] * std::conj(bvals[static_cast<size_t>(j)]) *
                        szego(problem.nodes()[static_cast<size_t>(i)], problem.nodes()[static_cast<size_t>(j)]);
    d.c.resize(static_cast<size_t>(d.n) * static_cast<size_t>(d.n));
    const MatrixXcd id = MatrixXcd::Identity(d.k, d.k);
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) {
            if (matrix_mode) {
                d.c[static_cast<size_t>(i * d.n + j)] =
                    id - problem.matrix_targets()[static_cast<size_t>(i)] *
                             problem.matrix_targets()[static_cast<size_t>(j)].adjoint();
            } else {
                d.c[static_cast<size_t>(i * d.n + j)] =
                    id * (1.0 - problem.scalar_targets()[static_cast<size_t>(i)] *
                                    std::conj(problem.scalar_targets()[static_cast<size_t>(j)]));
            }
        }
    return d;
}

MatrixXcd sweep_matrix(const SweepData& d, const VectorXcd& y) {
    MatrixXcd mat(d.n * d.k, d.n * d.k);
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) {
            const Complex kij = y(i) * std::conj(y(j)) + d.s(i, j);
            mat.block(i * d.k, j * d.k, d.k, d.k) = kij * d.c[static_cast<size_t>(i * d.n + j)];
        }
    return ((mat + mat.adjoint()) * 0.5).eval();
}

struct EigPair {
    double lambda;
    VectorXcd vec;
};

EigPair min_eig(const MatrixXcd& mat) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(mat);
    return {eig.eigenvalues()(0), eig.eigenvectors().col(0)};
}

double objective(const SweepData& d, const VectorXcd& u) {
    return min_eig(sweep_matrix(d, d.eval_u * u)).lambda;
}

// Wirtinger gradient d f / d conj(u) of u -> lambda_min(M(u)) through the
// minimal eigenvector x: f = sum_ij (y_i conj(y_j) + S_ij) x_i^* C_ij x_j.
VectorXcd gradient(const SweepData& d, const VectorXcd& u, const VectorXcd& x) {
    const VectorXcd y = d.eval_u * u;
    VectorXcd cfield_row_sums = VectorXcd::Zero(d.n);  // v_k = sum_i y_i c_ik
    for (int k2 = 0; k2 < d.n; ++k2) {
        Complex acc(0.0, 0.0);
        for (int i = 0; i < d.n; ++i) {
            const Complex cik = (x.segment(i * d.k, d.k).adjoint() *
                                 d.c[static_cast<size_t>(i * d.n + k2)] *
                                 x.segment(k2 * d.k, d.k))(0, 0);
            acc += y(i) * cik;
        }
        cfield_row_sums(k2) = acc;
    }
    return d.eval_u.adjoint() * cfield_row_sums;
}

struct DescentResult {
    double lambda;
    VectorXcd u;
    bool converged;
};

DescentResult project_descend(const SweepData& d, VectorXcd u, int max_iterations) {
    u.normalize();
    double lambda = objective(d, u);
    bool converged = false;
    int stalled = 0;
    for (int it = 0; it < max_iterations; ++it) {
        const EigPair e = min_eig(sweep_matrix(d, d.eval_u * u));
        lambda = e.lambda;
        VectorXcd g = gradient(d, u, e.vec);
        g -= u * ((u.adjoint() * g)(0, 0).real());
        const double gnorm = g.norm();
        if (gnorm <= 1e-12 * (1.0 + std::abs(lambda))) {
            converged = true;
            break;
        }
        double step = 1.0 / std::max(1.0, gnorm);
        bool improved = false;
        double new_lambda = lambda;
        for (int ls = 0; ls < 40; ++ls) {
            VectorXcd cand = (u - step * g).normalized();
            const double cand_lambda = objective(d, cand);
            if (cand_lambda < lambda - 1e-4 * step * gnorm * gnorm) {
                u = cand;
                new_lambda = cand_lambda;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            converged = true;  // stationary to line-search resolution
            break;
        }
        // Value-stationarity: several consecutive near-zero improvements.
        stalled = lambda - new_lambda <= 1e-13 * (1.0 + std::abs(new_lambda)) ? stalled + 1 : 0;
        lambda = new_lambda;
        if (stalled >= 3) {
            converged = true;
            break;
        }
    }
    return {lambda, u, converged};
}

SweepVerdict run_sweep(const InterpolationProblem& problem, const SweepConfig& config, bool matrix_mode) {
    if (problem.m() < 2) throw InvalidParameter("sweep requires constraint degree >= 2");
    const ModelSpace space(problem.constraint());
    const SweepData d = make_sweep_data(problem, space, matrix_mode);

    SweepVerdict verdict;
    verdict.necessary_only = matrix_mode;
    double best = std::numeric_limits<double>::infinity();
    VectorXcd best_u = VectorXcd::Zero(d.m);
    best_u(0) = 1.0;

    std::vector<VectorXcd> starts;

    // Deterministic coarse grid over the projective sphere when the model
    // space is two-dimensional.
    if (d.m == 2) {
        const int res = config.grid_resolution;
        VectorXcd grid_best = best_u;
        double grid_best_lambda = std::numeric_limits<double>::infinity();
        if (config.collect_grid)
            verdict.grid_samples.reserve(static_cast<size_t>(res) * static_cast<size_t>(res));
        for (int i = 0; i < res; ++i) {
            const double theta1 = (M_PI / 2.0) * static_cast<double>(i) / static_cast<double>(res - 1);
            for (int j = 0; j < res; ++j) {
                const double theta2 = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(res);
                VectorXcd u(2);
                u(0) = std::cos(theta1);
                u(1) = std::sin(theta1) * Complex(std::cos(theta2), std::sin(theta2));
                const double lambda = objective(d, u);
                if (config.collect_grid)
                    verdict.grid_samples.push_back({theta1, theta2, 0.0, lambda});
                if (lambda < grid_best_lambda) {
                    grid_best_lambda = lambda;
                    grid_best = u;
                }
            }
        }
        starts.push_back(grid_best);
    }

    // Coordinate directions, then the seeded random restarts.
    for (int a = 0; a < d.m; ++a) {
        VectorXcd u = VectorXcd::Zero(d.m);
        u(a) = 1.0;
        starts.push_back(u);
    }
    Rng rng(config.seed);
    for (int t = 0; t < config.restarts; ++t) {
        Rng child = rng.spawn(static_cast<uint64_t>(t));
        VectorXcd u(d.m);
        for (int a = 0; a < d.m; ++a) u(a) = child.complex_gaussian();
        if (u.norm() == 0.0) u(0) = 1.0;
        starts.push_back(u.normalized());
    }

    int converged_count = 0;
    for (const auto& start : starts) {
        const DescentResult res = project_descend(d, start, config.max_iterations);
        if (res.converged) ++converged_count;
        if (res.lambda < best) {
            best = res.lambda;
            best_u = res.u;
        }
    }
    verdict.restarts_used = static_cast<int>(starts.size());

    verdict.min_lambda = best;
    verdict.margin = best;
    verdict.worst_v = space.phase_fixed(ModelVector{space.gram().q_invhalf() * best_u});
    if (converged_count == 0) {
        verdict.status = SweepStatus::Indeterminate;
        verdict.feasible = false;
        return verdict;
    }
    if (best < -config.tau_psd) {
        verdict.status = SweepStatus::Infeasible;
        verdict.feasible = false;
    } else if (best <= config.tau_psd) {
        verdict.status = SweepStatus::BoundaryFeasible;
        verdict.feasible = true;
    } else {
        verdict.status = SweepStatus::Feasible;
        verdict.feasible = true;
    }
    return verdict;
}

}  // namespace

MatrixXcd constrained_pick_matrix(const InterpolationProblem& problem, const ModelSpace& space,
                                  const ModelVector& v) {
    if (!problem.has_targets() || problem.is_matrix())
        throw InvalidParameter("constrained_pick_matrix requires scalar targets");
    const ModelVector fixed = space.phase_fixed(v);
    const int n = problem.n();
    MatrixXcd mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mat(i, j) = (1.0 - problem.scalar_targets()[static_cast<size_t>(i)] *
                                   std::conj(problem.scalar_targets()[static_cast<size_t>(j)])) *
                        space.kernel(fixed, problem.nodes()[static_cast<size_t>(i)],
                                     problem.nodes()[static_cast<size_t>(j)]);
    return mat;
}

MatrixXcd matrix_constrained_pick(const InterpolationProblem& problem, const ModelSpace& space,
                                  const ModelVector& v) {
    if (!problem.is_matrix()) throw InvalidParameter("matrix_constrained_pick requires matrix targets");
    const ModelVector fixed = space.phase_fixed(v);
    const int n = problem.n();
    const int k = problem.target_size();
    const MatrixXcd id = MatrixXcd::Identity(k, k);
    MatrixXcd mat(n * k, n * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex kij = space.kernel(fixed, problem.nodes()[static_cast<size_t>(i)],
                                             problem.nodes()[static_cast<size_t>(j)]);
            mat.block(i * k, j * k, k, k) =
                kij * (id - problem.matrix_targets()[static_cast<size_t>(i)] *
                                problem.matrix_targets()[static_cast<size_t>(j)].adjoint());
        }
    return mat;
}

SweepVerdict feasibility_sweep(const InterpolationProblem& problem, const SweepConfig& config) {
    if (!problem.has_targets() || problem.is_matrix())
        throw InvalidParameter("feasibility_sweep requires scalar targets");
    return run_sweep(problem, config, false);
}

SweepVerdict matrix_pick_sweep(const InterpolationProblem& problem, const SweepConfig& config) {
    if (!problem.is_matrix()) throw InvalidParameter("matrix_pick_sweep requires matrix targets");
    return run_sweep(problem, config, true);
}

}  // namespace cnp

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "cnp/modelspace.hpp"
#include "cnp/problem.hpp"

namespace cnp {

inline constexpr double kPsdTol = 1e-9;

struct PickResult {
    MatrixXcd matrix;
    double min_eigenvalue = 0.0;
    bool psd = false;
};

// Classical Pick matrix [(1 - w_i conj(w_j)) / (1 - z_i conj(z_j))] and its
// positive-semidefiniteness verdict.
PickResult classical_pick(const std::vector<Complex>& nodes, const std::vector<Complex>& targets);

// Entry (i, j) = (1 - w_i conj(w_j)) K^v(z_i, z_j) for a unit model vector v.
// The vector is phase-fixed internally, so e^{it} v yields the same matrix.
MatrixXcd constrained_pick_matrix(const InterpolationProblem& problem, const ModelSpace& space,
                                  const ModelVector& v);

// Block (i, j) = K^v(z_i, z_j) (I - W_i W_j^*), the matrix-target analogue.
MatrixXcd matrix_constrained_pick(const InterpolationProblem& problem, const ModelSpace& space,
                                  const ModelVector& v);

struct SweepConfig {
    uint64_t seed = 20240901;
    int restarts = 64;           // seeded descent restarts
    int grid_resolution = 256;   // per angle, used when dim(model space) == 2
    int max_iterations = 500;
    double tau_psd = kPsdTol;
    bool collect_grid = false;   // record (theta1, theta2, phase, lambda_min) rows
};

enum class SweepStatus { Feasible, BoundaryFeasible, Infeasible, Indeterminate };

struct SweepVerdict {
    SweepStatus status = SweepStatus::Indeterminate;
    bool feasible = false;       // min_lambda >= -tau_psd
    double min_lambda = 0.0;     // worst minimum eigenvalue found over the sphere
    double margin = 0.0;         // signed distance from the PSD boundary (= min_lambda)
    ModelVector worst_v;         // phase-fixed coefficients of the minimizing vector
    int restarts_used = 0;
    bool necessary_only = false; // set for matrix targets
    std::vector<std::array<double, 4>> grid_samples;
};

// Minimizes the smallest eigenvalue of the constrained Pick matrix over the
// unit sphere of the model space of B. Deterministic for a fixed seed.
SweepVerdict feasibility_sweep(const InterpolationProblem& problem, const SweepConfig& config);

// Same sweep with matrix targets; passing it is necessary but not sufficient
// for a solution of norm <= 1.
SweepVerdict matrix_pick_sweep(const InterpolationProblem& problem, const SweepConfig& config);

}  // namespace cnp

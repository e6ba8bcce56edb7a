#include <doctest.h>

#include <cmath>

#include "cnp/errors.hpp"
#include "cnp/feasibility.hpp"
#include "cnp/rng.hpp"
#include "support/generators.hpp"

using namespace cnp;

namespace {

SweepConfig quick_config(uint64_t seed = 5) {
    SweepConfig c;
    c.seed = seed;
    c.restarts = 24;
    c.grid_resolution = 96;
    return c;
}

}  // namespace

TEST_CASE("classical pick examples") {
    const auto single = classical_pick({Complex(0.0)}, {Complex(0.5)});
    CHECK(std::abs(single.matrix(0, 0) - Complex(0.75)) < 1e-15);
    CHECK(single.psd);

    const auto zero_targets = classical_pick({Complex(0.0), Complex(0.5)}, {Complex(0.0), Complex(0.0)});
    CHECK(zero_targets.psd);
    CHECK(std::abs(zero_targets.matrix(1, 1) - Complex(4.0 / 3.0)) < 1e-15);

    // det = 0.19/0.75 - 1 < 0.
    const auto infeasible = classical_pick({Complex(0.0), Complex(0.5)}, {Complex(0.0), Complex(0.9)});
    CHECK(std::abs(infeasible.matrix(1, 1) - Complex(0.19 / 0.75)) < 1e-15);
    CHECK(!infeasible.psd);
}

TEST_CASE("constrained pick matrix direct evaluation") {
    const BlaschkeProduct b = BlaschkeProduct::monomial(2);
    const ModelSpace space(b);
    const auto p = InterpolationProblem::scalar(b, {Complex(0.0), Complex(0.5)},
                                                {Complex(0.1), Complex(0.1)});
    ModelVector one{VectorXcd::Zero(2)};
    one.coeffs(0) = 1.0;
    const MatrixXcd got = constrained_pick_matrix(p, space, one);
    MatrixXcd want(2, 2);
    want << Complex(0.99), Complex(0.99), Complex(0.99), Complex(0.99 * (1.0 + 0.0625 / 0.75));
    CHECK((got - want).norm() < 1e-14);
}

TEST_CASE("all-zero targets give a positive kernel grammian") {
    const BlaschkeProduct b = BlaschkeProduct::monomial(2);
    const ModelSpace space(b);
    const auto p = InterpolationProblem::scalar(b, {Complex(0.3), Complex(-0.2, 0.4)},
                                                {Complex(0.0), Complex(0.0)});
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        VectorXcd c(2);
        c(0) = rng.disk(1.0);
        c(1) = rng.disk(1.0);
        const ModelVector v = space.normalized(ModelVector{c});
        const MatrixXcd mat = constrained_pick_matrix(p, space, v);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(((mat + mat.adjoint()) * 0.5).eval());
        CHECK(eig.eigenvalues().minCoeff() > -1e-13);
    }
}

TEST_CASE("phase-rotated v gives the same minimum eigenvalue") {
    const BlaschkeProduct b = BlaschkeProduct::monomial(2);
    const ModelSpace space(b);
    const auto p = InterpolationProblem::scalar(b, {Complex(0.0), Complex(0.5)},
                                                {Complex(0.2), Complex(-0.4, 0.1)});
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        VectorXcd c(2);
        c(0) = rng.disk(1.0);
        c(1) = rng.disk(1.0);
        const ModelVector v = space.normalized(ModelVector{c});
        const ModelVector rotated{v.coeffs * rng.unit_phase()};
        const MatrixXcd m1 = constrained_pick_matrix(p, space, v);
        const MatrixXcd m2 = constrained_pick_matrix(p, space, rotated);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> e1(((m1 + m1.adjoint()) * 0.5).eval());
        Eigen::SelfAdjointEigenSolver<MatrixXcd> e2(((m2 + m2.adjoint()) * 0.5).eval());
        const double l1 = e1.eigenvalues().minCoeff();
        const double l2 = e2.eigenvalues().minCoeff();
        CHECK(std::abs(l1 - l2) <= 1e-13 * (1.0 + std::abs(l1)));
    }
}

TEST_CASE("constant targets are feasible") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.4), 1}});
    const auto p = InterpolationProblem::scalar(
        b, {Complex(0.2, 0.1), Complex(-0.5)}, {Complex(0.6, -0.3), Complex(0.6, -0.3)});
    const SweepVerdict verdict = feasibility_sweep(p, quick_config());
    CHECK(verdict.feasible);
    CHECK(verdict.min_lambda > -kPsdTol);
}

TEST_CASE("classically infeasible data stays infeasible under the constraint") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
    const auto p = InterpolationProblem::scalar(b, {Complex(0.0), Complex(0.5)},
                                                {Complex(0.0), Complex(0.9)});
    CHECK(!classical_pick(p.nodes(), p.scalar_targets()).psd);
    const SweepVerdict verdict = feasibility_sweep(p, quick_config());
    CHECK(verdict.status == SweepStatus::Infeasible);
    CHECK(!verdict.feasible);
}

TEST_CASE("sweep feasibility implies the classical necessary condition") {
    Rng rng(1009);
    testing::RandomProblemOptions opts;
    opts.max_m = 3;
    opts.max_n = 4;
    int feasible_seen = 0;
    for (int t = 0; t < 12; ++t) {
        const auto geometry = testing::random_problem_nodes(rng, opts);
        const auto targets = t % 2 == 0 ? testing::realized_targets(rng, geometry, 1.0)
                                        : testing::random_targets(rng, geometry, 0.9);
        const auto p = testing::with_scalar_targets(geometry, targets);
        const SweepVerdict verdict = feasibility_sweep(p, quick_config(1000 + t));
        if (verdict.feasible) {
            ++feasible_seen;
            CHECK(classical_pick(p.nodes(), p.scalar_targets()).psd);
        }
    }
    CHECK(feasible_seen >= 6);  // the realized-target instances are solvable
}

TEST_CASE("shrinking targets along rays keeps feasibility") {
    Rng rng(1013);
    testing::RandomProblemOptions opts;
    opts.max_m = 3;
    opts.max_n = 4;
    int checked = 0;
    while (checked < 6) {
        const auto geometry = testing::random_problem_nodes(rng, opts);
        const auto targets = testing::realized_targets(rng, geometry, 1.0);
        const auto p = testing::with_scalar_targets(geometry, targets);
        const SweepVerdict verdict = feasibility_sweep(p, quick_config(2000 + checked));
        if (!verdict.feasible) continue;
        const Complex mu = 0.8 * rng.unit_phase();
        std::vector<Complex> shrunk;
        for (Complex w : targets) shrunk.push_back(mu * w);
        const SweepVerdict inner = feasibility_sweep(testing::with_scalar_targets(geometry, shrunk),
                                                     quick_config(3000 + checked));
        CHECK(inner.feasible);
        ++checked;
    }
}

TEST_CASE("sweep is deterministic for a fixed seed") {
    const BlaschkeProduct b({{Complex(0.0), 2}});
    const auto p = InterpolationProblem::scalar(
        b, {Complex(0.0), Complex(0.5), Complex(-0.3, 0.2)},
        {Complex(0.1), Complex(0.7, -0.2), Complex(-0.4)});
    const SweepVerdict v1 = feasibility_sweep(p, quick_config(42));
    const SweepVerdict v2 = feasibility_sweep(p, quick_config(42));
    CHECK(v1.min_lambda == v2.min_lambda);
    CHECK((v1.worst_v.coeffs - v2.worst_v.coeffs).norm() == 0.0);
    CHECK(v1.restarts_used == v2.restarts_used);
}

TEST_CASE("matrix sweep reduces to scalar for scalar multiples of identity") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
    // Scalar-infeasible data embedded diagonally must fail.
    std::vector<Eigen::MatrixXcd> bad;
    bad.push_back(Eigen::MatrixXcd::Zero(2, 2));
    bad.push_back(Complex(0.9) * Eigen::MatrixXcd::Identity(2, 2));
    const auto p_bad = InterpolationProblem::matrix(b, {Complex(0.0), Complex(0.5)}, bad);
    const SweepVerdict vb = matrix_pick_sweep(p_bad, quick_config());
    CHECK(!vb.feasible);
    CHECK(vb.necessary_only);

    // All-zero targets pass.
    std::vector<Eigen::MatrixXcd> zeros(2, Eigen::MatrixXcd::Zero(2, 2));
    const auto p_ok = InterpolationProblem::matrix(b, {Complex(0.0), Complex(0.5)}, zeros);
    CHECK(matrix_pick_sweep(p_ok, quick_config()).feasible);
}

TEST_CASE("restricting the sweep to v coprime with B barely moves the minimum") {
    // Probe: filtering grid points where v vanishes at a zero of B changes
    // the grid minimum by far less than the optimizer tolerance.
    const BlaschkeProduct b = BlaschkeProduct::monomial(2);
    const ModelSpace space(b);
    const auto p = InterpolationProblem::scalar(
        b, {Complex(0.0), Complex(0.5), Complex(-0.4, 0.3)},
        {Complex(0.05), Complex(0.6, -0.1), Complex(-0.2, 0.35)});

    const int res = 128;
    double min_all = 1e300, min_coprime = 1e300;
    for (int i = 0; i < res; ++i) {
        const double theta1 = (M_PI / 2.0) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double theta2 = 2.0 * M_PI * j / res;
            VectorXcd u(2);
            u(0) = std::cos(theta1);
            u(1) = std::sin(theta1) * Complex(std::cos(theta2), std::sin(theta2));
            const ModelVector v{space.gram().q_invhalf() * u};
            const MatrixXcd mat = constrained_pick_matrix(p, space, ModelVector{v.coeffs / space.gram().norm(v.coeffs)});
            Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(((mat + mat.adjoint()) * 0.5).eval());
            const double lambda = eig.eigenvalues().minCoeff();
            min_all = std::min(min_all, lambda);
            // gcd(v, z^2) != 1 exactly when v(0) = 0.
            const bool coprime = std::abs(space.evaluate(v, Complex(0.0))) > 1e-6;
            if (coprime) min_coprime = std::min(min_coprime, lambda);
        }
    }
    CHECK(std::abs(min_all - min_coprime) < 1e-8);
}

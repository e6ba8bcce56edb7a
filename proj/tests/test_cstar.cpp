#include <doctest.h>

#include <cmath>

#include "cnp/cstar.hpp"
#include "cnp/rng.hpp"
#include "support/generators.hpp"

using namespace cnp;

namespace {

MatrixXcd random_unitary(int d, Rng& rng) {
    MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = rng.complex_gaussian();
    const Eigen::HouseholderQR<MatrixXcd> qr(a);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("generators form an idempotent partition of unity") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
    const auto p = InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.3), Complex(0.0, -0.4)});
    const CompressionRep comp = build_compression(p);
    const auto gens = quotient_generators(comp);
    REQUIRE(gens.size() == 3);

    MatrixXcd sum = MatrixXcd::Zero(comp.dim(), comp.dim());
    for (const auto& g : gens) {
        sum += g;
        CHECK((g * g - g).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK((sum - MatrixXcd::Identity(comp.dim(), comp.dim())).cwiseAbs().maxCoeff() < 1e-12);
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            if (i != j) CHECK((gens[i] * gens[j]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closure of trivial generator sets") {
    CHECK(star_algebra_closure({MatrixXcd::Identity(3, 3)}).dim() == 1);

    std::vector<MatrixXcd> units;
    const int d = 3;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            MatrixXcd e = MatrixXcd::Zero(d, d);
            e(i, j) = 1.0;
            units.push_back(e);
        }
    CHECK(star_algebra_closure(units).dim() == d * d);
}

TEST_CASE("closure basis is closed under products and adjoints") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
    const auto p = InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.3), Complex(0.0, -0.4)});
    const auto algebra = star_algebra_closure(quotient_generators(build_compression(p)));
    const int d = algebra.ambient;

    auto project_residual = [&](const MatrixXcd& x) {
        MatrixXcd res = x;
        for (const auto& e : algebra.basis) {
            const Complex coeff = (e.adjoint() * res).trace();
            res -= coeff * e;
        }
        return res.norm();
    };
    for (const auto& a : algebra.basis) {
        CHECK(project_residual(a.adjoint()) < 1e-10);
        for (const auto& c : algebra.basis) CHECK(project_residual(a * c) < 1e-10);
    }
    CHECK(d == 4);
}

TEST_CASE("commutant of the full algebra and of the diagonal algebra") {
    std::vector<MatrixXcd> units;
    const int d = 4;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            MatrixXcd e = MatrixXcd::Zero(d, d);
            e(i, j) = 1.0;
            units.push_back(e);
        }
    const MatrixAlgebraBasis full = star_algebra_closure(units);
    CHECK(commutant(full).dim == 1);

    std::vector<MatrixXcd> diag;
    for (int i = 0; i < d; ++i) {
        MatrixXcd e = MatrixXcd::Zero(d, d);
        e(i, i) = 1.0;
        diag.push_back(e);
    }
    const MatrixAlgebraBasis diagonal = star_algebra_closure(diag);
    CHECK(commutant(diagonal).dim == d);
}

TEST_CASE("envelope dichotomy on the paper configurations") {
    // Constraint z^2, nodes {0, z2, z3}: full, ambient 4.
    {
        const BlaschkeProduct b = BlaschkeProduct::monomial(2);
        const auto p =
            InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.4), Complex(-0.2, 0.3)});
        const EnvelopeReport rep = envelope_report(p);
        CHECK(rep.ambient == 4);
        CHECK(rep.algebra_dim == 16);
        CHECK(rep.commutant_dim == 1);
        CHECK(rep.is_full);
        CHECK(rep.agreement);
    }
    // Two simple zeros 0 and 1/2, three nodes starting at 0: full, ambient 4.
    {
        const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
        const auto p =
            InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.3), Complex(0.0, -0.4)});
        const EnvelopeReport rep = envelope_report(p);
        CHECK(rep.ambient == 4);
        CHECK(rep.algebra_dim == 16);
        CHECK(rep.commutant_dim == 1);
        CHECK(rep.is_full);
    }
    // One free node only: m = 2 > n - r = 1, not full.
    {
        const BlaschkeProduct b = BlaschkeProduct::monomial(2);
        const auto p = InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.4)});
        const EnvelopeReport rep = envelope_report(p);
        CHECK(!rep.is_full);
        CHECK(!rep.prediction);
        CHECK(rep.agreement);
    }
}

TEST_CASE("excess commutant dimension when m exceeds the free node count") {
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.4), 1}, {Complex(-0.3), 1}});
    const auto p = InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.2, 0.4), Complex(-0.5, -0.2)});
    REQUIRE(p.r() == 1);
    const EnvelopeReport rep = envelope_report(p);
    CHECK(rep.m == 3);
    CHECK(rep.n - rep.r == 2);
    CHECK(!rep.is_full);
    CHECK(rep.commutant_dim == 2);  // scalars plus one excess direction
}

TEST_CASE("closure dimension is invariant under unitary conjugation") {
    Rng rng(307);
    const BlaschkeProduct b({{Complex(0.0), 1}, {Complex(0.5), 1}});
    const auto p = InterpolationProblem::nodes_only(b, {Complex(0.0), Complex(0.3), Complex(0.0, -0.4)});
    auto gens = quotient_generators(build_compression(p));
    const int before = star_algebra_closure(gens).dim();
    const MatrixXcd u = random_unitary(static_cast<int>(gens[0].rows()), rng);
    for (auto& g : gens) g = u * g * u.adjoint();
    CHECK(star_algebra_closure(gens).dim() == before);
}

TEST_CASE("fullness dichotomy over a random grid") {
    Rng rng(311);
    for (int m = 2; m <= 3; ++m) {
        for (int free_count = 1; free_count <= 3; ++free_count) {
            // Random constraint with total multiplicity m and a node at its
            // first zero, plus free_count separated free nodes.
            std::vector<BlaschkeZero> zeros;
            if (m == 2) {
                zeros = {{rng.disk(0.5), 2}};
            } else {
                zeros = {{rng.disk(0.5), 2}, {Complex(0.62) * rng.unit_phase(), 1}};
            }
            const BlaschkeProduct b(zeros);
            std::vector<Complex> avoid;
            for (const auto& z : b.zeros()) avoid.push_back(z.alpha);
            std::vector<Complex> nodes{zeros[0].alpha};
            const auto free_nodes = testing::separated_points(rng, free_count, 0.8, 0.1, avoid);
            nodes.insert(nodes.end(), free_nodes.begin(), free_nodes.end());
            const auto p = InterpolationProblem::nodes_only(b, nodes);
            const EnvelopeReport rep = envelope_report(p);
            CHECK(rep.agreement);
            CHECK(rep.is_full == (m <= free_count));
            CHECK((rep.commutant_dim == 1) == (rep.algebra_dim == rep.ambient * rep.ambient));
        }
    }
}

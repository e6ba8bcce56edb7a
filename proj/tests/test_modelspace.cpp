#include <doctest.h>

#include <cmath>

#include "cnp/errors.hpp"
#include "cnp/modelspace.hpp"
#include "cnp/polynomial.hpp"
#include "cnp/rng.hpp"
#include "support/oracles.hpp"

using namespace cnp;

TEST_CASE("szego kernel values") {
    CHECK(szego(Complex(0.37, -0.2), Complex(0.0)) == Complex(1.0));
    CHECK(std::abs(szego(Complex(0.5), Complex(0.5)) - Complex(4.0 / 3.0)) < 1e-15);
    CHECK(std::abs(szego(Complex(0.5), Complex(0.0, 0.3)) - 1.0 / Complex(1.0, 0.15)) < 1e-15);
    CHECK_THROWS_AS(szego(Complex(0.0), Complex(1.0)), InvalidParameter);
}

TEST_CASE("label evaluation") {
    CHECK(eval_label({Complex(0.0), 0}, Complex(0.7, 0.1)) == Complex(1.0));
    CHECK(eval_label({Complex(0.0), 1}, Complex(0.7, 0.1)) == Complex(0.7, 0.1));
    const Complex got = eval_label({Complex(0.4), 1}, Complex(0.2));
    CHECK(std::abs(got - Complex(0.2) / Complex(0.92 * 0.92)) < 1e-15);
}

TEST_CASE("inner products against the boundary quadrature oracle") {
    CHECK(std::abs(inner_product({Complex(0.0), 0}, {Complex(0.0), 0}) - Complex(1.0)) < 1e-15);
    // <k_u, k_w> = k_u(w) = 1/(1 - conj(u) w)
    const Complex u(0.3, -0.1), w(0.2, 0.4);
    CHECK(std::abs(inner_product({u, 0}, {w, 0}) - 1.0 / (1.0 - std::conj(u) * w)) < 1e-14);

    const Complex oracle = testing::quadrature_label_inner_product({Complex(0.3), 1}, {Complex(0.0, 0.5), 1});
    CHECK(std::abs(inner_product({Complex(0.3), 1}, {Complex(0.0, 0.5), 1}) - oracle) < 1e-9);

    Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        const KernelLabel a{rng.disk(0.8), rng.uniform_int(0, 3)};
        const KernelLabel b{rng.disk(0.8), rng.uniform_int(0, 3)};
        const Complex direct = inner_product(a, b);
        const Complex quad = testing::quadrature_label_inner_product(a, b);
        CHECK(std::abs(direct - quad) < 1e-9);
        CHECK(std::abs(direct - std::conj(inner_product(b, a))) < 1e-13);
    }
}

TEST_CASE("derivative evaluation identity for polynomials") {
    // <f, z^m k_w^(m+1)> = f^(m)(w)/m! with exact Taylor data, degree <= 6.
    Rng rng(103);
    for (int t = 0; t < 20; ++t) {
        std::vector<Complex> coeffs;
        for (int i = 0; i <= 6; ++i) coeffs.push_back(rng.disk(1.0));
        const Polynomial p(coeffs);
        const KernelLabel label{rng.disk(0.8), rng.uniform_int(0, 4)};
        // H^2 pairing in coefficient space: sum_n p_n conj(c_n(label)).
        const Eigen::VectorXcd lt = testing::label_taylor(label, 16);
        Complex pairing(0.0, 0.0);
        for (int n = 0; n <= 6; ++n) pairing += coeffs[static_cast<size_t>(n)] * std::conj(lt(n));
        const Complex taylor_coeff = p.jet_at(label.w, label.order + 1)[label.order];
        CHECK(std::abs(pairing - taylor_coeff) < 1e-12);
    }
}

TEST_CASE("grammians on small label sets") {
    const GrammianRep g1 = GrammianRep::build({{Complex(0.0), 0}});
    CHECK(g1.q()(0, 0) == Complex(1.0));

    const GrammianRep g2 = GrammianRep::build({{Complex(0.0), 0}, {Complex(0.0), 1}});
    CHECK((g2.q() - MatrixXcd::Identity(2, 2)).norm() < 1e-15);

    const GrammianRep g3 = GrammianRep::build({{Complex(0.0), 0}, {Complex(0.5), 0}});
    MatrixXcd want(2, 2);
    want << 1.0, 1.0, 1.0, 4.0 / 3.0;
    CHECK((g3.q() - want).norm() < 1e-14);
}

TEST_CASE("grammian square roots and hermiticity") {
    Rng rng(107);
    for (int t = 0; t < 25; ++t) {
        std::vector<KernelLabel> labels;
        const int zeros = rng.uniform_int(1, 3);
        for (int i = 0; i < zeros; ++i) {
            const Complex w = rng.disk(0.75);
            const int orders = rng.uniform_int(1, 2);
            for (int o = 0; o < orders; ++o) labels.push_back({w, o});
        }
        bool skip = false;
        for (size_t i = 0; i < labels.size() && !skip; ++i)
            for (size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j] ||
                    (labels[i].order == labels[j].order && std::abs(labels[i].w - labels[j].w) < 0.05)) {
                    skip = true;
                    break;
                }
        if (skip) continue;
        const GrammianRep g = GrammianRep::build(labels);
        CHECK((g.q() - g.q().adjoint()).norm() < 1e-14);
        CHECK(g.min_eigenvalue() > 0.0);
        CHECK((g.q_half() * g.q_half() - g.q()).norm() < 1e-10 * std::max(1.0, g.q().norm()));
        CHECK((g.q_half() * g.q_invhalf() - MatrixXcd::Identity(g.dim(), g.dim())).norm() < 1e-10);
    }
}

TEST_CASE("grammian rejects duplicates and near-dependent nodes") {
    CHECK_THROWS_AS(GrammianRep::build({{Complex(0.2), 0}, {Complex(0.2), 0}}), InvalidParameter);
    CHECK_THROWS_AS(GrammianRep::build({{Complex(0.2), 0}, {Complex(0.2 + 1e-8, 0.0), 0}}),
                    NearDependentBasis);
}

TEST_CASE("conditioning warning beyond radius 0.95") {
    const GrammianRep g = GrammianRep::build({{Complex(0.97), 0}, {Complex(0.0), 0}});
    CHECK(g.conditioning_warning());
    const GrammianRep ok = GrammianRep::build({{Complex(0.5), 0}, {Complex(0.0), 0}});
    CHECK(!ok.conditioning_warning());
}

TEST_CASE("constrained kernel examples") {
    const ModelSpace space(BlaschkeProduct::monomial(2));
    ModelVector one{VectorXcd::Zero(2)};
    one.coeffs(0) = 1.0;
    CHECK(std::abs(space.kernel(one, Complex(0.0), Complex(0.0)) - Complex(1.0)) < 1e-15);

    ModelVector zvec{VectorXcd::Zero(2)};
    zvec.coeffs(1) = 1.0;
    CHECK(std::abs(space.kernel(zvec, Complex(0.0), Complex(0.0))) < 1e-15);

    // v = (1 + z)/sqrt(2), z = 0.3, w = 0.2.
    ModelVector v{VectorXcd::Constant(2, Complex(1.0 / std::sqrt(2.0)))};
    const Complex want = Complex(1.3 * 1.2 / 2.0) + Complex(0.09 * 0.04) / Complex(1.0 - 0.06);
    CHECK(std::abs(space.kernel(v, Complex(0.3), Complex(0.2)) - want) < 1e-14);

    ModelVector not_unit{VectorXcd::Constant(2, Complex(1.0))};
    CHECK_THROWS_AS(space.kernel(not_unit, Complex(0.0), Complex(0.0)), InvalidParameter);
}

TEST_CASE("reproducing property of the constrained kernel") {
    Rng rng(113);
    int done = 0;
    while (done < 20) {
        std::vector<BlaschkeZero> zeros;
        const int count = rng.uniform_int(1, 2);
        for (int i = 0; i < count; ++i) zeros.push_back({rng.disk(0.6), rng.uniform_int(1, 2)});
        BlaschkeProduct b(zeros);
        if (b.degree() < 2) continue;
        const ModelSpace space(b);

        VectorXcd coeffs(space.dim());
        for (int a = 0; a < space.dim(); ++a) coeffs(a) = rng.disk(1.0);
        ModelVector v = space.normalized(ModelVector{coeffs});

        const Complex lambda = rng.disk(1.0);
        std::vector<Complex> pc;
        for (int i = 0; i <= 3; ++i) pc.push_back(rng.disk(1.0));
        const Polynomial p(pc);

        auto f = [&](Complex z) { return lambda * space.evaluate(v, z) + b.evaluate(z) * p.evaluate(z); };
        const Complex z0 = rng.disk(0.7);
        const Complex via_kernel = testing::boundary_inner_product(
            f, [&](Complex z) { return space.kernel(v, z, z0); });
        CHECK(std::abs(f(z0) - via_kernel) < 1e-8);
        ++done;
    }
}

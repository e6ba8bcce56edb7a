#include <doctest.h>

#include <cmath>
#include <complex>

#include "cnp/blaschke.hpp"
#include "cnp/errors.hpp"
#include "cnp/rng.hpp"

using namespace cnp;

namespace {

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Zeros drawn from a fixed pool so gcd/lcm see exact matches.
BlaschkeProduct random_pool_product(Rng& rng, int max_zeros) {
    static const Complex pool[] = {Complex(0.0, 0.0),  Complex(0.3, 0.0),  Complex(-0.5, 0.2),
                                   Complex(0.1, -0.6), Complex(0.7, 0.35), Complex(-0.2, -0.4)};
    std::vector<BlaschkeZero> zeros;
    const int count = rng.uniform_int(0, max_zeros);
    for (int i = 0; i < count; ++i)
        zeros.push_back({pool[rng.uniform_int(0, 5)], rng.uniform_int(1, 3)});
    return BlaschkeProduct(std::move(zeros));
}

}  // namespace

TEST_CASE("mobius transform basics") {
    CHECK(mobius(Complex(0.0), Complex(0.3, 0.1)) == Complex(0.3, 0.1));
    CHECK(std::abs(mobius(Complex(0.5), Complex(0.5))) == 0.0);
    CHECK(std::abs(mobius(Complex(0.5), Complex(1.0)) - Complex(-1.0)) < 1e-15);
    CHECK_THROWS_AS(mobius(Complex(1.0), Complex(0.0)), InvalidParameter);
    CHECK_THROWS_AS(mobius(Complex(1.2, 0.3), Complex(0.0)), InvalidParameter);

    // Unimodular on the boundary.
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const Complex a = rng.disk(0.95);
        const Complex z = rng.unit_phase();
        CHECK(std::abs(std::abs(mobius(a, z)) - 1.0) < 1e-12);
    }
}

TEST_CASE("monomial evaluation and derivatives") {
    const BlaschkeProduct b = BlaschkeProduct::monomial(2);
    CHECK(std::abs(b.evaluate(Complex(0.5)) - Complex(0.25)) < 1e-15);
    CHECK(std::abs(b.evaluate(Complex(0.0), 1)) == 0.0);
    CHECK(std::abs(b.evaluate(Complex(0.0), 2) - Complex(2.0)) < 1e-15);
}

TEST_CASE("two-zero product matches per-factor evaluation") {
    const Complex a1(0.3, 0.0), a2(0.0, 0.5);
    const BlaschkeProduct b({{a1, 1}, {a2, 1}});
    const Complex z(0.2, 0.0);
    const Complex f1 = (std::abs(a1) / a1) * (a1 - z) / (1.0 - std::conj(a1) * z);
    const Complex f2 = (std::abs(a2) / a2) * (a2 - z) / (1.0 - std::conj(a2) * z);
    CHECK(std::abs(b.evaluate(z) - f1 * f2) < 1e-15);
}

TEST_CASE("empty product is the constant one") {
    const BlaschkeProduct one;
    CHECK(one.degree() == 0);
    CHECK(one.evaluate(Complex(0.4, -0.2)) == Complex(1.0));
    CHECK(std::abs(one.evaluate(Complex(0.1), 3)) == 0.0);
}

TEST_CASE("inner function modulus inside and on the circle") {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        std::vector<BlaschkeZero> zeros;
        const int count = rng.uniform_int(1, 3);
        for (int i = 0; i < count; ++i) zeros.push_back({rng.disk(0.9), rng.uniform_int(1, 2)});
        const BlaschkeProduct b(std::move(zeros));
        const Complex inside = rng.disk(0.99);
        CHECK(std::abs(b.evaluate(inside)) < 1.0);
        const Complex boundary = rng.unit_phase();
        CHECK(std::abs(std::abs(b.evaluate(boundary)) - 1.0) < 1e-12);
    }
}

TEST_CASE("normalization makes B(0) positive when 0 is not a zero") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        std::vector<BlaschkeZero> zeros;
        for (int i = 0; i < 2; ++i) zeros.push_back({rng.annulus(0.2, 0.8), rng.uniform_int(1, 3)});
        const BlaschkeProduct b(std::move(zeros));
        const Complex v = b.evaluate(Complex(0.0));
        CHECK(v.real() > 0.0);
        CHECK(std::abs(v.imag()) < 1e-14 * v.real());
    }
}

TEST_CASE("evaluation agrees with the factor product on random inputs") {
    Rng rng(47);
    for (int t = 0; t < 100; ++t) {
        std::vector<BlaschkeZero> zeros;
        const int count = rng.uniform_int(1, 4);
        for (int i = 0; i < count; ++i) zeros.push_back({rng.disk(0.85), rng.uniform_int(1, 2)});
        const BlaschkeProduct b(zeros);
        const Complex z = rng.disk(0.99);
        Complex direct(1.0, 0.0);
        for (const auto& zero : zeros) {
            Complex factor;
            if (zero.alpha == Complex(0.0)) {
                factor = z;
            } else {
                factor = (std::abs(zero.alpha) / zero.alpha) * (zero.alpha - z) /
                         (1.0 - std::conj(zero.alpha) * z);
            }
            Complex p(1.0, 0.0);
            for (int k = 0; k < zero.mult; ++k) p *= factor;
            direct *= p;
        }
        CHECK(std::abs(b.evaluate(z) - direct) < 1e-12);
    }
}

TEST_CASE("jet derivatives match central finite differences") {
    Rng rng(59);
    const double h = 1e-4;
    for (int t = 0; t < 25; ++t) {
        std::vector<BlaschkeZero> zeros;
        const int count = rng.uniform_int(1, 3);
        for (int i = 0; i < count; ++i) zeros.push_back({rng.disk(0.7), rng.uniform_int(1, 2)});
        const BlaschkeProduct b(zeros);
        const Complex z = rng.disk(0.6);
        auto f = [&](Complex w) { return b.evaluate(w); };

        const Complex d1 = (f(z + h) - f(z - h)) / (2.0 * h);
        const Complex d2 = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
        const Complex d3 = (f(z + 2.0 * h) - 2.0 * f(z + h) + 2.0 * f(z - h) - f(z - 2.0 * h)) /
                           (2.0 * h * h * h);
        CHECK(rel_err(b.evaluate(z, 1), d1) < 1e-6);
        CHECK(rel_err(b.evaluate(z, 2), d2) < 1e-6);
        // At step 1e-4 the third difference carries ~eps/h^3 = 2e-4 of
        // cancellation noise, which bounds what this oracle can certify.
        CHECK(rel_err(b.evaluate(z, 3), d3) < 5e-4);

        // A fourth-order stencil at a larger step stays below 1e-6.
        const double h3 = 5e-3;
        const Complex d3_hi = (f(z - 3.0 * h3) - 8.0 * f(z - 2.0 * h3) + 13.0 * f(z - h3) -
                               13.0 * f(z + h3) + 8.0 * f(z + 2.0 * h3) - f(z + 3.0 * h3)) /
                              (8.0 * h3 * h3 * h3);
        CHECK(rel_err(b.evaluate(z, 3), d3_hi) < 1e-6);
    }
}

TEST_CASE("divisor lattice on simple examples") {
    const BlaschkeProduct z2 = BlaschkeProduct::monomial(2);
    const BlaschkeProduct z3 = BlaschkeProduct::monomial(3);
    CHECK(gcd(z2, z3) == z2);
    CHECK(lcm(z2, z3) == z3);

    const BlaschkeProduct p3 = BlaschkeProduct::single(Complex(0.3));
    const BlaschkeProduct p5 = BlaschkeProduct::single(Complex(0.5));
    CHECK(gcd(p3, p5).is_one());
    CHECK(lcm(p3, p5) == p3 * p5);

    CHECK(divides(z2, z2 * BlaschkeProduct::single(Complex(0.4))));
    CHECK(!divides(z3, z2));
}

TEST_CASE("near-coincident zeros are flagged, exact repeats merge") {
    CHECK_THROWS_AS(BlaschkeProduct({{Complex(0.3), 1}, {Complex(0.3 + 1e-10), 1}}),
                    AmbiguousZeroMatch);
    const BlaschkeProduct b({{Complex(0.3), 1}, {Complex(0.3), 2}});
    CHECK(b.zeros().size() == 1);
    CHECK(b.degree() == 3);
}

TEST_CASE("lattice laws hold on random products") {
    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
        const BlaschkeProduct a = random_pool_product(rng, 3);
        const BlaschkeProduct b = random_pool_product(rng, 3);
        const BlaschkeProduct c = random_pool_product(rng, 3);

        CHECK(gcd(a, b) == gcd(b, a));
        CHECK(lcm(a, b) == lcm(b, a));
        CHECK(gcd(a, gcd(b, c)) == gcd(gcd(a, b), c));
        CHECK(lcm(a, lcm(b, c)) == lcm(lcm(a, b), c));
        CHECK(gcd(a, lcm(a, b)) == a);
        CHECK(lcm(a, gcd(a, b)) == a);
        CHECK(gcd(a, b) * lcm(a, b) == a * b);

        CHECK(divides(gcd(a, b), a));
        CHECK(divides(a, lcm(a, b)));
    }
}

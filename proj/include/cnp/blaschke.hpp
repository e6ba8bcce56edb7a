#pragma once

#include <complex>
#include <vector>

#include "cnp/jet.hpp"

namespace cnp {

// Euclidean tolerance for deciding whether two zeros are the same point.
// Zeros strictly closer than this but not identical are reported as
// ambiguous rather than merged.
inline constexpr double kZeroMatchTol = 1e-9;

// Elementary disk automorphism phi_a(z) = (a - z)/(1 - conj(a) z), with
// phi_0(z) = z.
Complex mobius(Complex a, Complex z);

struct BlaschkeZero {
    Complex alpha;
    int mult = 1;
};

/**
 * Finite Blaschke product given by its zero multiset in the open disk.
 *
 * Each zero carries the normalizing factor (|alpha|/alpha)^mult (1 when the
 * zero is at the origin), so B(0) > 0 whenever 0 is not a zero. Inner
 * functions differing by a unimodular constant are identified; equality of
 * products means equality of zero multisets.
 */
class BlaschkeProduct {
public:
    // The empty product: the constant function 1.
    BlaschkeProduct() = default;

    // Validates |alpha| < 1 and merges exactly repeated zeros. Distinct
    // zeros closer than kZeroMatchTol raise AmbiguousZeroMatch.
    explicit BlaschkeProduct(std::vector<BlaschkeZero> zeros);

    static BlaschkeProduct one() { return BlaschkeProduct(); }
    static BlaschkeProduct monomial(int n);  // z^n
    static BlaschkeProduct single(Complex alpha, int mult = 1);
    static BlaschkeProduct for_points(const std::vector<Complex>& points);

    const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
    int degree() const;
    bool is_one() const { return zeros_.empty(); }

    Complex evaluate(Complex z) const;
    // deriv_order = k returns B^(k)(z), via truncated Taylor composition.
    Complex evaluate(Complex z, int deriv_order) const;

    // Taylor expansion about z, `len` coefficients.
    Jet jet_at(Complex z, int len) const;

    // Maclaurin coefficients, `n_terms` of them.
    std::vector<Complex> taylor_at_zero(int n_terms) const;

    // Multiplicity of z as a zero (exact match after construction-time
    // snapping); 0 when z is not a zero.
    int vanishing_order(Complex z) const;

    // Exact zero-multiset concatenation.
    BlaschkeProduct operator*(const BlaschkeProduct& other) const;

    bool operator==(const BlaschkeProduct& other) const;

private:
    std::vector<BlaschkeZero> zeros_;
};

// Divisor-lattice meet/join on zero multisets: pointwise min/max of
// multiplicities under exact zero matching.
BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2);
BlaschkeProduct lcm(const BlaschkeProduct& b1, const BlaschkeProduct& b2);
bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2);

}  // namespace cnp

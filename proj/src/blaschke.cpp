#include "cnp/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cnp/errors.hpp"

namespace cnp {

namespace {

std::string fmt_complex(Complex z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

void check_zero_spacing(const std::vector<BlaschkeZero>& zeros) {
    for (size_t i = 0; i < zeros.size(); ++i) {
        for (size_t j = i + 1; j < zeros.size(); ++j) {
            const double d = std::abs(zeros[i].alpha - zeros[j].alpha);
            if (d > 0.0 && d < kZeroMatchTol) {
                throw AmbiguousZeroMatch("zeros " + fmt_complex(zeros[i].alpha) + " and " +
                                         fmt_complex(zeros[j].alpha) +
                                         " are closer than the matching tolerance but not equal");
            }
        }
    }
}

}  // namespace

Complex mobius(Complex a, Complex z) {
    if (std::abs(a) >= 1.0) throw InvalidParameter("mobius parameter must lie in the open disk");
    if (a == Complex(0.0)) return z;
    return (a - z) / (1.0 - std::conj(a) * z);
}

BlaschkeProduct::BlaschkeProduct(std::vector<BlaschkeZero> zeros) {
    for (const auto& z : zeros) {
        if (std::abs(z.alpha) >= 1.0)
            throw InvalidParameter("Blaschke zero " + fmt_complex(z.alpha) + " is not in the open disk");
        if (z.mult < 1) throw InvalidParameter("Blaschke zero multiplicity must be >= 1");
    }
    // Merge exact repeats, keep first-seen order.
    for (const auto& z : zeros) {
        bool merged = false;
        for (auto& existing : zeros_) {
            if (existing.alpha == z.alpha) {
                existing.mult += z.mult;
                merged = true;
                break;
            }
        }
        if (!merged) zeros_.push_back(z);
    }
    check_zero_spacing(zeros_);
}

BlaschkeProduct BlaschkeProduct::monomial(int n) {
    if (n == 0) return BlaschkeProduct();
    return BlaschkeProduct({{Complex(0.0), n}});
}

BlaschkeProduct BlaschkeProduct::single(Complex alpha, int mult) {
    return BlaschkeProduct({{alpha, mult}});
}

BlaschkeProduct BlaschkeProduct::for_points(const std::vector<Complex>& points) {
    std::vector<BlaschkeZero> zeros;
    zeros.reserve(points.size());
    for (Complex p : points) zeros.push_back({p, 1});
    return BlaschkeProduct(std::move(zeros));
}

int BlaschkeProduct::degree() const {
    int d = 0;
    for (const auto& z : zeros_) d += z.mult;
    return d;
}

Complex BlaschkeProduct::evaluate(Complex z) const {
    Complex acc(1.0, 0.0);
    for (const auto& zero : zeros_) {
        Complex factor = zero.alpha == Complex(0.0)
                             ? z
                             : (std::abs(zero.alpha) / zero.alpha) * mobius(zero.alpha, z);
        Complex p(1.0, 0.0);
        for (int k = 0; k < zero.mult; ++k) p *= factor;
        acc *= p;
    }
    return acc;
}

Complex BlaschkeProduct::evaluate(Complex z, int deriv_order) const {
    if (deriv_order == 0) return evaluate(z);
    return jet_at(z, deriv_order + 1).derivative(deriv_order);
}

Jet BlaschkeProduct::jet_at(Complex z, int len) const {
    Jet acc = Jet::constant(Complex(1.0), len);
    const Jet var = Jet::variable(z, len);
    for (const auto& zero : zeros_) {
        Jet num = (var * Complex(-1.0)) + zero.alpha;
        Jet factor(std::vector<Complex>{});
        if (zero.alpha == Complex(0.0)) {
            factor = var;
        } else {
            Jet den = (var * (-std::conj(zero.alpha))) + Complex(1.0);
            factor = (num / den) * (std::abs(zero.alpha) / zero.alpha);
        }
        acc = acc * factor.pow(zero.mult);
    }
    return acc;
}

std::vector<Complex> BlaschkeProduct::taylor_at_zero(int n_terms) const {
    return jet_at(Complex(0.0), n_terms).coeffs();
}

int BlaschkeProduct::vanishing_order(Complex z) const {
    for (const auto& zero : zeros_) {
        if (std::abs(zero.alpha - z) <= kZeroMatchTol) return zero.mult;
    }
    return 0;
}

BlaschkeProduct BlaschkeProduct::operator*(const BlaschkeProduct& other) const {
    std::vector<BlaschkeZero> zs = zeros_;
    zs.insert(zs.end(), other.zeros_.begin(), other.zeros_.end());
    return BlaschkeProduct(std::move(zs));
}

bool BlaschkeProduct::operator==(const BlaschkeProduct& other) const {
    if (zeros_.size() != other.zeros_.size()) return false;
    for (const auto& z : zeros_) {
        bool found = false;
        for (const auto& w : other.zeros_) {
            if (w.alpha == z.alpha && w.mult == z.mult) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace {

// Multiplicity of `alpha` in `zeros` under exact matching; near-misses
// within tolerance are ambiguous.
int multiplicity_of(const std::vector<BlaschkeZero>& zeros, Complex alpha) {
    for (const auto& z : zeros) {
        if (z.alpha == alpha) return z.mult;
        if (std::abs(z.alpha - alpha) < kZeroMatchTol)
            throw AmbiguousZeroMatch("zeros " + fmt_complex(z.alpha) + " and " + fmt_complex(alpha) +
                                     " match within tolerance but are not identical");
    }
    return 0;
}

}  // namespace

BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
    std::vector<BlaschkeZero> zs;
    for (const auto& z : b1.zeros()) {
        const int m = std::min(z.mult, multiplicity_of(b2.zeros(), z.alpha));
        if (m > 0) zs.push_back({z.alpha, m});
    }
    return BlaschkeProduct(std::move(zs));
}

BlaschkeProduct lcm(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
    std::vector<BlaschkeZero> zs;
    for (const auto& z : b1.zeros()) {
        zs.push_back({z.alpha, std::max(z.mult, multiplicity_of(b2.zeros(), z.alpha))});
    }
    for (const auto& z : b2.zeros()) {
        if (multiplicity_of(b1.zeros(), z.alpha) == 0) zs.push_back(z);
    }
    return BlaschkeProduct(std::move(zs));
}

bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
    return gcd(b1, b2) == b1;
}

}  // namespace cnp

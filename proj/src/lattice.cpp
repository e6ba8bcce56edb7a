#include "cnp/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "cnp/errors.hpp"

namespace cnp {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kCoeffTol = 1e-8;

int monomial_exponent(const BlaschkeProduct& b) {
    const auto& zeros = b.zeros();
    if (zeros.empty()) return 0;
    if (zeros.size() == 1 && zeros[0].alpha == Complex(0.0)) return zeros[0].mult;
    throw InvalidParameter("lattice operations support monomial inner factors only");
}

Eigen::VectorXcd poly_to_vec(const Polynomial& p, int dim) {
    internal_check(p.degree() < dim, "polynomial exceeds the truncation window");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k <= p.degree(); ++k) v(k) = p.coeff(k);
    return v;
}

Polynomial vec_to_poly(const Eigen::VectorXcd& v) {
    std::vector<Complex> c(static_cast<size_t>(v.size()));
    double maxc = 0.0;
    for (int k = 0; k < v.size(); ++k) maxc = std::max(maxc, std::abs(v(k)));
    for (int k = 0; k < v.size(); ++k)
        c[static_cast<size_t>(k)] = std::abs(v(k)) > kCoeffTol * maxc ? v(k) : Complex(0.0);
    Polynomial p(std::move(c));
    return p;
}

// Orthonormal column basis of the span.
Eigen::MatrixXcd colspace(const Eigen::MatrixXcd& m) {
    if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > sv(0) * kRankTol) ++rank;
    return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd intersect(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& w) {
    if (u.cols() == 0 || w.cols() == 0) return Eigen::MatrixXcd(u.rows(), 0);
    Eigen::MatrixXcd stacked(u.rows(), u.cols() + w.cols());
    stacked << u, -w;
    // Full V: the nullspace of a wide stacked matrix extends past the
    // computed singular values.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<int> null_cols;
    for (int i = 0; i < stacked.cols(); ++i) {
        const double s = i < sv.size() ? sv(i) : 0.0;
        if (s <= sv(0) * kRankTol) null_cols.push_back(i);
    }
    Eigen::MatrixXcd basis(u.rows(), static_cast<int>(null_cols.size()));
    for (size_t c = 0; c < null_cols.size(); ++c)
        basis.col(static_cast<int>(c)) = u * svd.matrixV().col(null_cols[c]).head(u.cols());
    return colspace(basis);
}

bool subspace_equal(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& w) {
    const Eigen::MatrixXcd ub = colspace(u);
    const Eigen::MatrixXcd wb = colspace(w);
    if (ub.cols() != wb.cols()) return false;
    Eigen::MatrixXcd joint(ub.rows(), ub.cols() + wb.cols());
    joint << ub, wb;
    return colspace(joint).cols() == ub.cols();
}

// Coefficient-space matrix of psi(V (+) z^N H^2) truncated to dimension dim.
Eigen::MatrixXcd subspace_matrix(const InvariantSubspace& s, int dim) {
    const int a = monomial_exponent(s.psi);
    const int n = s.modulus;
    internal_check(a + n <= dim, "truncation window too small");
    const int tail = dim - a - n;
    Eigen::MatrixXcd m(dim, static_cast<int>(s.v_basis.size()) + tail);
    int col = 0;
    for (const auto& p : s.v_basis) m.col(col++) = poly_to_vec(p.shifted(a), dim);
    for (int i = 0; i < tail; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e(a + n + i) = 1.0;
        m.col(col++) = e;
    }
    return m;
}

int min_vanishing_order(const Eigen::MatrixXcd& basis) {
    int best = static_cast<int>(basis.rows());
    for (int c = 0; c < basis.cols(); ++c) {
        double maxc = 0.0;
        for (int r = 0; r < basis.rows(); ++r) maxc = std::max(maxc, std::abs(basis(r, c)));
        if (maxc == 0.0) continue;
        for (int r = 0; r < basis.rows(); ++r) {
            if (std::abs(basis(r, c)) > kCoeffTol * maxc) {
                best = std::min(best, r);
                break;
            }
        }
    }
    return best;
}

// Rebuild (psi = z^c, V') from a truncated coefficient-space basis of an
// invariant subspace containing z^(dim) H^2 beyond the window.
InvariantSubspace from_coefficient_basis(const Eigen::MatrixXcd& basis, int n, int dim) {
    const int c = std::min(min_vanishing_order(basis), dim);
    // Shift down by c; the dropped rows must be zero up to tolerance.
    Eigen::MatrixXcd shifted(dim - c, basis.cols());
    for (int col = 0; col < basis.cols(); ++col) {
        double maxc = 0.0;
        for (int r = 0; r < basis.rows(); ++r) maxc = std::max(maxc, std::abs(basis(r, col)));
        for (int r = 0; r < c; ++r)
            internal_check(std::abs(basis(r, col)) <= kCoeffTol * std::max(maxc, 1e-30),
                           "inner-divisor division residue nonzero");
        shifted.col(col) = basis.col(col).segment(c, dim - c);
    }
    // V' = span(shifted) intersected with polynomials of degree < n.
    const Eigen::MatrixXcd y = colspace(shifted);
    Eigen::MatrixXcd high = y.bottomRows(std::max(0, static_cast<int>(y.rows()) - n));
    Eigen::MatrixXcd vprime(n, 0);
    if (high.rows() == 0) {
        vprime = y.topRows(n);
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(high, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        std::vector<int> null_cols;
        for (int i = 0; i < y.cols(); ++i) {
            const double s = i < sv.size() ? sv(i) : 0.0;
            if (s <= (sv.size() > 0 ? sv(0) : 0.0) * kRankTol) null_cols.push_back(i);
        }
        vprime = Eigen::MatrixXcd(n, static_cast<int>(null_cols.size()));
        for (size_t k = 0; k < null_cols.size(); ++k)
            vprime.col(static_cast<int>(k)) =
                (y * svd.matrixV().col(null_cols[k])).head(n);
        vprime = colspace(vprime);
    }
    std::vector<Polynomial> v_polys;
    for (int col = 0; col < vprime.cols(); ++col) v_polys.push_back(vec_to_poly(vprime.col(col)));
    return InvariantSubspace::make(BlaschkeProduct::monomial(c), std::move(v_polys), n);
}

LatticeReport combine(const InvariantSubspace& s1, const InvariantSubspace& s2, bool is_meet) {
    if (s1.modulus != s2.modulus)
        throw InvalidParameter("lattice operands must share the constraint exponent");
    const int n = s1.modulus;
    const CanonicalForm c1 = canonical_form(s1);
    const CanonicalForm c2 = canonical_form(s2);
    const int deg_lcm = std::max(c1.phi.degree(), c2.phi.degree());
    const int dim = deg_lcm + 2 * n;

    const Eigen::MatrixXcd m1 = subspace_matrix(s1, dim);
    const Eigen::MatrixXcd m2 = subspace_matrix(s2, dim);
    Eigen::MatrixXcd combined;
    if (is_meet) {
        combined = intersect(colspace(m1), colspace(m2));
    } else {
        Eigen::MatrixXcd joint(dim, m1.cols() + m2.cols());
        joint << m1, m2;
        combined = colspace(joint);
    }

    LatticeReport report;
    report.result = from_coefficient_basis(combined, n, dim);
    report.canonical = canonical_form(report.result);
    report.divisor = report.canonical.phi;
    internal_check(subspace_equal(subspace_matrix(report.result, dim), combined),
                   "recomposed subspace differs from the computed span");

    if (is_meet) {
        report.lower_bound = lcm(c1.phi, c2.phi);
        report.upper_bound = BlaschkeProduct::monomial(n) * report.lower_bound;
        report.bounds_hold = divides(report.lower_bound, report.divisor) &&
                             divides(report.divisor, report.upper_bound);
    } else {
        report.lower_bound = gcd(c1.phi, c2.phi);
        report.upper_bound = report.lower_bound;
        report.bounds_hold = report.divisor == report.lower_bound;
    }
    internal_check(report.bounds_hold, "divisor law violated by the computed subspace");
    return report;
}

}  // namespace

InvariantSubspace InvariantSubspace::make(BlaschkeProduct psi, std::vector<Polynomial> v_basis,
                                          int n) {
    if (n < 1) throw InvalidParameter("constraint exponent must be >= 1");
    monomial_exponent(psi);  // validates
    for (const auto& p : v_basis) {
        if (p.is_zero()) throw InvalidParameter("V basis polynomials must be nonzero");
        if (p.degree() >= n) throw InvalidParameter("V basis polynomials must have degree < N");
    }
    // Linear independence.
    if (!v_basis.empty()) {
        Eigen::MatrixXcd m(n, static_cast<int>(v_basis.size()));
        for (size_t c = 0; c < v_basis.size(); ++c)
            m.col(static_cast<int>(c)) = poly_to_vec(v_basis[c], n);
        if (colspace(m).cols() != m.cols())
            throw InvalidParameter("V basis polynomials must be linearly independent");
    }
    InvariantSubspace s;
    s.psi = std::move(psi);
    s.v_basis = std::move(v_basis);
    s.modulus = n;
    return s;
}

CanonicalForm canonical_form(const InvariantSubspace& s) {
    const int n = s.modulus;
    int order = n;
    for (const auto& p : s.v_basis)
        order = std::min(order, p.vanishing_order_at_zero(kCoeffTol));
    CanonicalForm out;
    out.phi = s.psi * BlaschkeProduct::monomial(order);
    for (const auto& p : s.v_basis) {
        auto [low, high] = p.split_at(order);
        double maxc = 0.0;
        for (const auto& v : p.coeffs()) maxc = std::max(maxc, std::abs(v));
        for (const auto& v : low.coeffs())
            internal_check(std::abs(v) <= kCoeffTol * maxc, "canonical division residue nonzero");
        out.w_basis.push_back(high);
    }
    for (int i = 0; i < order; ++i) out.w_basis.push_back(Polynomial::monomial(n - order + i));
    // Some element of W must be nonvanishing at the origin.
    int w_order = n;
    for (const auto& p : out.w_basis) w_order = std::min(w_order, p.vanishing_order_at_zero(kCoeffTol));
    internal_check(out.w_basis.empty() || w_order == 0, "canonical W shares a zero with z^N");
    return out;
}

LatticeReport meet(const InvariantSubspace& s1, const InvariantSubspace& s2) {
    return combine(s1, s2, true);
}

LatticeReport join(const InvariantSubspace& s1, const InvariantSubspace& s2) {
    return combine(s1, s2, false);
}

ConsistencyVerdict decomposition_consistency(const InvariantSubspace& first,
                                             const InvariantSubspace& second) {
    if (first.modulus != second.modulus)
        throw InvalidParameter("decompositions must share the constraint exponent");
    const int n = first.modulus;
    const int dim = std::max(monomial_exponent(first.psi), monomial_exponent(second.psi)) + 2 * n;
    ConsistencyVerdict verdict;
    verdict.equal = subspace_equal(subspace_matrix(first, dim), subspace_matrix(second, dim));

    // The canonical inner factor equals psi exactly when the canonical W
    // equals V; check the instance.
    const CanonicalForm canon = canonical_form(first);
    const bool phi_matches = canon.phi == first.psi;
    Eigen::MatrixXcd v(n, static_cast<int>(first.v_basis.size()));
    for (size_t c = 0; c < first.v_basis.size(); ++c)
        v.col(static_cast<int>(c)) = poly_to_vec(first.v_basis[c], n);
    Eigen::MatrixXcd w(n, static_cast<int>(canon.w_basis.size()));
    for (size_t c = 0; c < canon.w_basis.size(); ++c)
        w.col(static_cast<int>(c)) = poly_to_vec(canon.w_basis[c], n);
    const bool w_matches = subspace_equal(v, w);
    verdict.biconditional_holds = phi_matches == w_matches;
    return verdict;
}

}  // namespace cnp

#pragma once

#include <complex>
#include <vector>

#include "cnp/jet.hpp"

namespace cnp {

// Complex polynomial with coefficients in ascending degree order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(Complex v) { return Polynomial({v}); }
    static Polynomial monomial(int degree, Complex coeff = Complex(1.0));

    const std::vector<Complex>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    Complex coeff(int k) const {
        return k < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(k)] : Complex(0.0);
    }

    Complex evaluate(Complex z) const;
    Jet jet_at(Complex z, int len) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(Complex s) const;

    // Multiplication by z^k.
    Polynomial shifted(int k) const;

    // Split into (low, high) with *this = low + z^k * high.
    std::pair<Polynomial, Polynomial> split_at(int k) const;

    // Largest s with z^s dividing the polynomial; coefficients of magnitude
    // <= tol * max|coeff| count as zero. Returns 0 for the zero polynomial.
    int vanishing_order_at_zero(double tol = 0.0) const;

    void trim(double tol = 0.0);

private:
    std::vector<Complex> c_;
};

}  // namespace cnp

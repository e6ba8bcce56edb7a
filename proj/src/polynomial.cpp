#include "cnp/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace cnp {

Polynomial Polynomial::monomial(int degree, Complex coeff) {
    std::vector<Complex> c(static_cast<size_t>(degree) + 1, Complex(0.0));
    c.back() = coeff;
    return Polynomial(std::move(c));
}

Complex Polynomial::evaluate(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Jet Polynomial::jet_at(Complex z, int len) const {
    Jet acc = Jet::constant(Complex(0.0), len);
    const Jet var = Jet::variable(z, len);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * var + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Complex> c(std::max(c_.size(), o.c_.size()), Complex(0.0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + (o * Complex(-1.0));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Complex> c(c_.size() + o.c_.size() - 1, Complex(0.0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex s) const {
    std::vector<Complex> c = c_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(int k) const {
    if (is_zero()) return Polynomial();
    std::vector<Complex> c(c_.size() + static_cast<size_t>(k), Complex(0.0));
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::split_at(int k) const {
    if (static_cast<int>(c_.size()) <= k) return {*this, Polynomial()};
    std::vector<Complex> low(c_.begin(), c_.begin() + k);
    std::vector<Complex> high(c_.begin() + k, c_.end());
    return {Polynomial(std::move(low)), Polynomial(std::move(high))};
}

int Polynomial::vanishing_order_at_zero(double tol) const {
    if (c_.empty()) return 0;
    double maxc = 0.0;
    for (const auto& v : c_) maxc = std::max(maxc, std::abs(v));
    if (maxc == 0.0) return 0;
    for (size_t i = 0; i < c_.size(); ++i)
        if (std::abs(c_[i]) > tol * maxc) return static_cast<int>(i);
    return 0;
}

void Polynomial::trim(double tol) {
    double maxc = 0.0;
    for (const auto& v : c_) maxc = std::max(maxc, std::abs(v));
    while (!c_.empty() && std::abs(c_.back()) <= tol * maxc) c_.pop_back();
}

}  // namespace cnp

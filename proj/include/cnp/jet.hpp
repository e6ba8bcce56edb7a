#pragma once

#include <complex>
#include <vector>

#include "cnp/errors.hpp"

namespace cnp {

using Complex = std::complex<double>;

// Truncated Taylor expansion a_0 + a_1 e + ... + a_{L-1} e^{L-1} about some
// base point. Coefficient k equals f^(k)(base)/k!, so derivatives of rational
// expressions come out exact to rounding, uniformly in the order.
class Jet {
public:
    Jet() = default;
    explicit Jet(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}

    static Jet constant(Complex value, int len) {
        std::vector<Complex> c(static_cast<size_t>(len), Complex(0.0, 0.0));
        c[0] = value;
        return Jet(std::move(c));
    }

    // The expansion of z about the base point: base + e.
    static Jet variable(Complex base, int len) {
        std::vector<Complex> c(static_cast<size_t>(len), Complex(0.0, 0.0));
        c[0] = base;
        if (len > 1) c[1] = Complex(1.0, 0.0);
        return Jet(std::move(c));
    }

    int size() const { return static_cast<int>(c_.size()); }
    Complex operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    Complex& operator[](int k) { return c_[static_cast<size_t>(k)]; }
    const std::vector<Complex>& coeffs() const { return c_; }

    Complex value() const { return c_.empty() ? Complex(0.0) : c_[0]; }

    // k-th derivative at the base point: k! * c_k.
    Complex derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return c_[static_cast<size_t>(k)] * fact;
    }

    Jet operator+(const Jet& o) const {
        Jet r = *this;
        for (int k = 0; k < size(); ++k) r.c_[static_cast<size_t>(k)] += o.c_[static_cast<size_t>(k)];
        return r;
    }

    Jet operator-(const Jet& o) const {
        Jet r = *this;
        for (int k = 0; k < size(); ++k) r.c_[static_cast<size_t>(k)] -= o.c_[static_cast<size_t>(k)];
        return r;
    }

    Jet operator*(const Jet& o) const {
        const int n = size();
        std::vector<Complex> r(static_cast<size_t>(n), Complex(0.0, 0.0));
        for (int i = 0; i < n; ++i) {
            if (c_[static_cast<size_t>(i)] == Complex(0.0)) continue;
            for (int j = 0; i + j < n; ++j)
                r[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
        return Jet(std::move(r));
    }

    Jet operator*(Complex s) const {
        Jet r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    Jet operator+(Complex s) const {
        Jet r = *this;
        r.c_[0] += s;
        return r;
    }

    // Division requires a nonvanishing constant term.
    Jet operator/(const Jet& o) const {
        const int n = size();
        if (o.c_[0] == Complex(0.0)) throw InternalError("jet division by zero constant term");
        std::vector<Complex> r(static_cast<size_t>(n), Complex(0.0, 0.0));
        for (int k = 0; k < n; ++k) {
            Complex acc = c_[static_cast<size_t>(k)];
            for (int j = 1; j <= k; ++j)
                acc -= o.c_[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
            r[static_cast<size_t>(k)] = acc / o.c_[0];
        }
        return Jet(std::move(r));
    }

    Jet pow(int e) const {
        Jet acc = Jet::constant(Complex(1.0), size());
        Jet base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    std::vector<Complex> c_;
};

}  // namespace cnp

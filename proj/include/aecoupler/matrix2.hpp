#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace aecoupler {

using Complex = std::complex<double>;
using Vector2c = std::array<Complex, 2>;

/// Dense complex 2x2 matrix with value semantics. Entry names follow the
/// usual (row, column) convention.
struct Matrix2c {
    Complex a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    static Matrix2c zero() { return {}; }
    static Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex trace() const { return a11 + a22; }

    Matrix2c adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }

    Matrix2c conjugate() const {
        return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)};
    }

    friend Matrix2c operator+(const Matrix2c& l, const Matrix2c& r) {
        return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
    }
    friend Matrix2c operator-(const Matrix2c& l, const Matrix2c& r) {
        return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
    }
    friend Matrix2c operator*(Complex s, const Matrix2c& m) {
        return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
    }
    friend Matrix2c operator*(double s, const Matrix2c& m) {
        return Complex(s, 0.0) * m;
    }
    friend Matrix2c operator*(const Matrix2c& l, const Matrix2c& r) {
        return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
                l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
    }
    friend Vector2c operator*(const Matrix2c& m, const Vector2c& v) {
        return {m.a11 * v[0] + m.a12 * v[1], m.a21 * v[0] + m.a22 * v[1]};
    }
};

inline Matrix2c commutator(const Matrix2c& a, const Matrix2c& b) {
    return a * b - b * a;
}

inline double max_abs_entry(const Matrix2c& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

inline bool is_hermitian(const Matrix2c& m, double tol = 1e-12) {
    return std::abs(m.a11.imag()) <= tol && std::abs(m.a22.imag()) <= tol &&
           std::abs(m.a12 - std::conj(m.a21)) <= tol;
}

inline bool is_traceless(const Matrix2c& m, double tol = 1e-12) {
    return std::abs(m.trace()) <= tol;
}

inline bool is_unitary(const Matrix2c& m, double tol = 1e-12) {
    return max_abs_entry(m.adjoint() * m - Matrix2c::identity()) <= tol;
}

} // namespace aecoupler

// mat2.hpp
// Fixed-size 2x2 complex matrices and 2-vectors.

#pragma once

#include <algorithm>
#include <array>
#include <complex>

#include "amplitudes.hpp"

namespace qcawalk {

using Vec2 = std::array<Complex, 2>;

struct Mat2 {
    std::array<std::array<Complex, 2>, 2> m{};

    static constexpr Mat2 identity() { return {{{{1.0, 0.0}, {0.0, 1.0}}}}; }

    constexpr Complex& operator()(int r, int c) { return m[r][c]; }
    constexpr const Complex& operator()(int r, int c) const { return m[r][c]; }

    Mat2 adjoint() const {
        return {{{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}}};
    }

    Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    double max_abs() const {
        double worst = 0.0;
        for (const auto& row : m)
            for (const auto& z : row) worst = std::max(worst, std::abs(z));
        return worst;
    }

    bool is_zero(double tol = kTolerance) const { return max_abs() <= tol; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][j] + y.m[i][j];
        return r;
    }

    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][j] - y.m[i][j];
        return r;
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
        return r;
    }

    friend Mat2 operator*(Complex s, const Mat2& x) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = s * x.m[i][j];
        return r;
    }

    friend Vec2 operator*(const Mat2& x, const Vec2& v) {
        return {x.m[0][0] * v[0] + x.m[0][1] * v[1], x.m[1][0] * v[0] + x.m[1][1] * v[1]};
    }
};

/// Entry-wise max |x - y|.
inline double max_abs_difference(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }

inline Mat2 make_mat2(Complex m00, Complex m01, Complex m10, Complex m11) {
    return {{{{m00, m01}, {m10, m11}}}};
}

} // namespace qcawalk

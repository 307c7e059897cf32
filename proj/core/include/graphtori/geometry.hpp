#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace graphtori {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double norm2(const Vec3& v) { return dot(v, v); }

/// Column-major 3x3 matrix: col(i) is the i-th column.
struct Mat3 {
    std::array<Vec3, 3> c{};  // columns

    static Mat3 identity() { return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}}; }

    Vec3 col(std::size_t i) const { return c[i]; }
    double operator()(std::size_t row, std::size_t colidx) const { return c[colidx][row]; }
    double& operator()(std::size_t row, std::size_t colidx) { return c[colidx][row]; }
};

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
    return m.c[0] * v.x + m.c[1] * v.y + m.c[2] * v.z;
}

/// m^T v, i.e. the vector of column dot products.
inline Vec3 matTvec(const Mat3& m, const Vec3& v) {
    return {dot(m.c[0], v), dot(m.c[1], v), dot(m.c[2], v)};
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t j = 0; j < 3; ++j) r.c[j] = matvec(a, b.c[j]);
    return r;
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
    return t;
}

inline double det(const Mat3& m) { return dot(m.c[0], cross(m.c[1], m.c[2])); }

/// Inverse via the adjugate; caller guarantees det != 0.
inline Mat3 inverse(const Mat3& m) {
    const double d = det(m);
    Mat3 inv;
    const Vec3 r0 = cross(m.c[1], m.c[2]) / d;
    const Vec3 r1 = cross(m.c[2], m.c[0]) / d;
    const Vec3 r2 = cross(m.c[0], m.c[1]) / d;
    // rows of the inverse
    for (std::size_t j = 0; j < 3; ++j) {
        inv(0, j) = r0[j];
        inv(1, j) = r1[j];
        inv(2, j) = r2[j];
    }
    return inv;
}

/// Symmetric 3x3 matrix stored as (xx, yy, zz, xy, xz, yz).
struct Sym3 {
    double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

    double trace() const { return xx + yy + zz; }
    Vec3 apply(const Vec3& v) const {
        return {xx * v.x + xy * v.y + xz * v.z,
                xy * v.x + yy * v.y + yz * v.z,
                xz * v.x + yz * v.y + zz * v.z};
    }
    Sym3 operator+(const Sym3& o) const {
        return {xx + o.xx, yy + o.yy, zz + o.zz, xy + o.xy, xz + o.xz, yz + o.yz};
    }
    Sym3 operator*(double s) const { return {xx * s, yy * s, zz * s, xy * s, xz * s, yz * s}; }
};

/// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi sweeps,
/// returned in ascending order. Accurate to ~1e-14 relative for the
/// well-conditioned matrices used here.
std::array<double, 3> sym3_eigenvalues(const Sym3& s);

/// Singular values of a general 3x3 matrix (ascending), computed as the
/// square roots of the eigenvalues of m^T m.
std::array<double, 3> singular_values(const Mat3& m);

}  // namespace graphtori

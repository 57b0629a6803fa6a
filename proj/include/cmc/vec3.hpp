#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>
#include <ostream>

namespace cmc {

using complex = std::complex<double>;

// Ambient R^3 vector. Positions carry length units, normals are dimensionless;
// nothing here enforces that, callers keep track.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return v.norm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

// Componentwise complex 3-vector, used for contour integrals of R^3-valued forms.
struct CVec3 {
    complex x{}, y{}, z{};

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(const complex& s) const { return {x * s, y * s, z * s}; }
    CVec3& operator+=(const CVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
    double norm() const { return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z)); }
};

// 2x2 real matrix in a fixed tangent-plane basis; row-major.
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // [[a, b], [c, d]]

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    // 90-degree rotation, the complex structure in an orthonormal positive frame.
    static constexpr Mat2 rotation_j() { return {0.0, -1.0, 1.0, 0.0}; }

    constexpr Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    constexpr double trace() const { return a + d; }
    constexpr double det() const { return a * d - b * c; }

    Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }
};

constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

struct Vec2 {
    double u = 0.0, v = 0.0;
    constexpr Vec2() = default;
    constexpr Vec2(double u_, double v_) : u(u_), v(v_) {}
    constexpr Vec2 operator+(const Vec2& o) const { return {u + o.u, v + o.v}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
    constexpr Vec2 operator*(double s) const { return {u * s, v * s}; }
    double norm() const { return std::hypot(u, v); }
};

constexpr Vec2 mul(const Mat2& m, const Vec2& x) {
    return {m.a * x.u + m.b * x.v, m.c * x.u + m.d * x.v};
}

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.u << ", " << v.v << ")";
}

}  // namespace cmc

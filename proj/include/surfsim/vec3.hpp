// Small fixed-size vector and quaternion types used throughout the simulator.
//
// Frame convention: x = lateral (right), y = vertical (up), z = longitudinal
// (forward). The triple is left-handed, matching the game-engine convention:
// a positive rotation about +y turns +z toward +x (nose turns right when
// viewed from above), a positive rotation about +x pitches the nose down.
#pragma once

#include <cmath>

namespace surfsim {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    constexpr bool operator==(const Vec3&) const = default;

    [[nodiscard]] constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    [[nodiscard]] constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
    [[nodiscard]] constexpr double squared_norm() const { return dot(*this); }
    [[nodiscard]] Vec3 normalized() const { return *this / norm(); }
    [[nodiscard]] bool is_finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    /// Component-wise product.
    [[nodiscard]] constexpr Vec3 cwise(const Vec3& o) const { return {x * o.x, y * o.y, z * o.z}; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline constexpr Vec3 kUnitX{1.0, 0.0, 0.0};
inline constexpr Vec3 kUnitY{0.0, 1.0, 0.0};
inline constexpr Vec3 kUnitZ{0.0, 0.0, 1.0};

/// Unit quaternion, Hamilton product, (w, x, y, z).
struct Quat {
    double w{1.0};
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr bool operator==(const Quat&) const = default;

    static Quat identity() { return {}; }

    static Quat from_axis_angle(const Vec3& axis, double angle) {
        const Vec3 a = axis.normalized();
        const double s = std::sin(0.5 * angle);
        return {std::cos(0.5 * angle), a.x * s, a.y * s, a.z * s};
    }

    /// Exponential map of a rotation vector (axis * angle).
    static Quat from_rotation_vector(const Vec3& rv) {
        const double angle = rv.norm();
        if (angle < 1e-300) {
            return {};
        }
        return from_axis_angle(rv / angle, angle);
    }

    [[nodiscard]] constexpr Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    [[nodiscard]] constexpr Quat conjugate() const { return {w, -x, -y, -z}; }
    [[nodiscard]] double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    [[nodiscard]] Quat normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }
    [[nodiscard]] bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    /// Rotates v by this quaternion (q v q*).
    [[nodiscard]] constexpr Vec3 rotate(const Vec3& v) const {
        const Vec3 u{x, y, z};
        const Vec3 t = u.cross(v) * 2.0;
        return v + t * w + u.cross(t);
    }
};

}  // namespace surfsim

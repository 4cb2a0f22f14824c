#pragma once

#include "isv/vec3.hpp"

#include <stdexcept>

namespace isv {

/// Quaternion w + xi + yj + zk. Unit quaternions represent rotations; q and -q
/// describe the same rotation.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(double scalar, const Vec3& v) : w(scalar), x(v.x), y(v.y), z(v.z) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

    constexpr Vec3 vec() const { return {x, y, z}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

    /// Hamilton product.
    constexpr Quaternion operator*(const Quaternion& o) const
    {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

class DegenerateQuaternion : public std::domain_error {
public:
    DegenerateQuaternion() : std::domain_error("degenerate quaternion") {}
};

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double dot(const Quaternion& a, const Quaternion& b)
{
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const Quaternion& q);

/// Throws DegenerateQuaternion for a zero-norm input.
Quaternion normalize(const Quaternion& q);

/// exp(a + v) = e^a (cos|v| + v/|v| sin|v|); (e^a, 0) when v = 0.
Quaternion qexp(const Quaternion& q);

/// log q = log|q| + v/|v| atan2(|v|, a). Throws DegenerateQuaternion when |q| = 0.
Quaternion qlog(const Quaternion& q);

/// Returns b or -b, whichever lies in the same hemisphere as a.
Quaternion ensure_shortest(const Quaternion& a, const Quaternion& b);

/// Spherical linear interpolation along the shorter arc. t = 0 and t = 1
/// return the endpoints exactly (modulo the hemisphere flip of b).
Quaternion slerp(const Quaternion& a, const Quaternion& b, double t);

/// Inner control point a_i = q_i exp(-(log(q_i* q_prev) + log(q_i* q_next)) / 4).
/// The neighbours are aligned to q_i's hemisphere first.
Quaternion squad_control(const Quaternion& prev, const Quaternion& qi, const Quaternion& next);

/// slerp(slerp(q_i, q_i+1, t), slerp(a_i, a_i+1, t), 2t(1 - t)). Only the first
/// slerp takes the shorter arc; the control points must already be aligned.
Quaternion squad(const Quaternion& qi, const Quaternion& qi1, const Quaternion& ai,
                 const Quaternion& ai1, double t);

/// Rotation angle between two orientations, 2 acos|<a, b>| for unit inputs.
double rotation_angle(const Quaternion& a, const Quaternion& b);

/// Rotates v by the unit quaternion q.
Vec3 rotate(const Quaternion& q, const Vec3& v);

} // namespace isv

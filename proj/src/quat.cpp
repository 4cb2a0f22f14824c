#include "isv/quat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isv {

namespace {

// Below this sin(phi) the great arc is numerically indistinguishable from a chord.
constexpr double kSlerpParallelEps = 1e-6;

} // namespace

double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }

Quaternion normalize(const Quaternion& q)
{
    const double n = norm(q);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DegenerateQuaternion();
    }
    return q * (1.0 / n);
}

Quaternion qexp(const Quaternion& q)
{
    const double ea = std::exp(q.w);
    const Vec3 v = q.vec();
    const double theta = norm(v);
    if (theta == 0.0) {
        return {ea, 0.0, 0.0, 0.0};
    }
    const double s = ea * std::sin(theta) / theta;
    return {ea * std::cos(theta), v * s};
}

Quaternion qlog(const Quaternion& q)
{
    const double n = norm(q);
    if (!(n > 0.0)) {
        throw DegenerateQuaternion();
    }
    const Vec3 v = q.vec();
    const double vn = norm(v);
    if (vn == 0.0) {
        // Real quaternion. For negative reals the branch is ambiguous; pick the
        // zero vector part, which is what the atan2 limit gives for w > 0.
        return {std::log(n), 0.0, 0.0, 0.0};
    }
    const double angle = std::atan2(vn, q.w);
    return {std::log(n), v * (angle / vn)};
}

Quaternion ensure_shortest(const Quaternion& a, const Quaternion& b)
{
    return dot(a, b) >= 0.0 ? b : -b;
}

namespace {

// Great-arc interpolation from a to b as given, without a hemisphere flip.
Quaternion slerp_arc(const Quaternion& a, const Quaternion& b, double t)
{
    if (t == 0.0) {
        return a;
    }
    if (t == 1.0) {
        return b;
    }
    const double c = std::clamp(dot(a, b), -1.0, 1.0);
    const double phi = std::acos(c);
    const double s = std::sin(phi);
    if (s < kSlerpParallelEps) {
        // Antipodal inputs are the same rotation; interpolate towards -b instead.
        const Quaternion bb = c < 0.0 ? -b : b;
        return normalize(a * (1.0 - t) + bb * t);
    }
    const double wa = std::sin((1.0 - t) * phi) / s;
    const double wb = std::sin(t * phi) / s;
    return normalize(a * wa + b * wb);
}

} // namespace

Quaternion slerp(const Quaternion& a, const Quaternion& b_in, double t)
{
    return slerp_arc(a, ensure_shortest(a, b_in), t);
}

Quaternion squad_control(const Quaternion& prev, const Quaternion& qi, const Quaternion& next)
{
    const Quaternion inv = conjugate(qi);
    const Quaternion lp = qlog(inv * ensure_shortest(qi, prev));
    const Quaternion ln = qlog(inv * ensure_shortest(qi, next));
    const Quaternion arg = (lp + ln) * -0.25;
    return normalize(qi * qexp(arg));
}

Quaternion squad(const Quaternion& qi, const Quaternion& qi1, const Quaternion& ai,
                 const Quaternion& ai1, double t)
{
    const Quaternion outer = slerp(qi, qi1, t);
    // The inner and blending arcs must not flip hemispheres: the blend endpoints
    // move with t, and a flip there would tear the path.
    const Quaternion inner = slerp_arc(ai, ai1, t);
    return slerp_arc(outer, inner, 2.0 * t * (1.0 - t));
}

double rotation_angle(const Quaternion& a, const Quaternion& b)
{
    // Same accuracy concern as angle_between: use the 4D chord/arc relation.
    const Quaternion bb = ensure_shortest(a, b);
    const double chord = norm(a - bb);
    const double arc = norm(a + bb);
    return 4.0 * std::atan2(chord, arc);
}

Vec3 rotate(const Quaternion& q, const Vec3& v)
{
    const Vec3 u = q.vec();
    const Vec3 t = cross(u, v) * 2.0;
    return v + t * q.w + cross(u, t);
}

} // namespace isv

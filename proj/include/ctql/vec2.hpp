#pragma once

#include <cmath>

namespace ctql {

// Planar position / velocity, meters and meters/second.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr bool operator==(const Vec2& o) const = default;

    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline Vec2 unit_or_zero(const Vec2& v) {
    const double n = v.norm();
    if (n == 0.0) return {0.0, 0.0};
    return {v.x / n, v.y / n};
}

inline Vec2 from_polar(double magnitude, double angle) {
    return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
}

inline Vec2 rotated(const Vec2& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Bearing of v wrapped to [0, 2pi). Zero vector maps to 0.
inline double bearing(const Vec2& v) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += 2.0 * M_PI;
    if (a >= 2.0 * M_PI) a = 0.0;
    return a;
}

}  // namespace ctql

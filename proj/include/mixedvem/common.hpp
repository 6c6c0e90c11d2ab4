#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mixedvem {

// Error hierarchy. Everything user-facing throws one of these; callers that
// need exit-code discipline (the CLI) map them to "numerical failure".
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TopologyError : Error {
    using Error::Error;
};
struct GenerationError : Error {
    using Error::Error;
};
struct QuadratureError : Error {
    using Error::Error;
};
struct DegenerateElementError : Error {
    using Error::Error;
};
struct SolverError : Error {
    using Error::Error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
    // 90 degree clockwise rotation; maps a CCW tangent to the outward normal.
    Vec2 rotated_cw() const { return {y, -x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

} // namespace mixedvem

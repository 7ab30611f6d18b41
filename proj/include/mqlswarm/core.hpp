#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqlswarm {

/// A 2-D position or displacement in world units.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
};

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

inline double euclidean_distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Closed axis-aligned rectangle.
struct WorldBounds {
    double x_min = 0.0;
    double x_max = 100.0;
    double y_min = 0.0;
    double y_max = 100.0;

    friend bool operator==(const WorldBounds&, const WorldBounds&) = default;

    bool contains(const Vec2& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }

    /// Throws std::invalid_argument unless x_min < x_max and y_min < y_max.
    /// `allow_degenerate` relaxes both to <=, which sampling ranges may use.
    void validate(const std::string& name = "world", bool allow_degenerate = false) const {
        const bool finite = std::isfinite(x_min) && std::isfinite(x_max) &&
                            std::isfinite(y_min) && std::isfinite(y_max);
        const bool ordered = allow_degenerate ? (x_min <= x_max && y_min <= y_max)
                                              : (x_min < x_max && y_min < y_max);
        if (!finite || !ordered) {
            throw std::invalid_argument(name + ": bounds must be finite with min " +
                                        (allow_degenerate ? "<=" : "<") + " max");
        }
    }
};

inline Vec2 clamp_to_world(const Vec2& p, const WorldBounds& w) {
    return {std::clamp(p.x, w.x_min, w.x_max), std::clamp(p.y, w.y_min, w.y_max)};
}

/// Index of a particle in the swarm; stable for the whole run.
struct ParticleId {
    std::size_t value = 0;

    constexpr ParticleId() = default;
    constexpr explicit ParticleId(std::size_t v) : value(v) {}

    friend constexpr auto operator<=>(const ParticleId&, const ParticleId&) = default;
};

}  // namespace mqlswarm

#pragma once

#include <cmath>
#include <stdexcept>

namespace swl {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
    friend Point2 operator*(double s, Point2 a) { return a * s; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Point2 a, Point2 b) { return !(a == b); }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

inline double squared_dist(Point2 p, Point2 q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

inline double dist(Point2 p, Point2 q) { return std::sqrt(squared_dist(p, q)); }

inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }

inline Point2 normalized(Point2 p) {
    const double n = norm(p);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {p.x / n, p.y / n};
}

inline Point2 midpoint(Point2 p, Point2 q) { return {(p.x + q.x) * 0.5, (p.y + q.y) * 0.5}; }

/// Nondegenerate segment; endpoints must differ.
struct Segment2 {
    Point2 a;
    Point2 b;
    Segment2(Point2 a_, Point2 b_) : a(a_), b(b_) {
        if (a == b) throw std::invalid_argument("degenerate segment");
    }
};

/// Sign of the cross product (b-a) x (c-a).
inline int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (v > 0.0) - (v < 0.0);
}

/// True iff the open interiors of s and t cross. Segments that only touch at
/// a shared endpoint (consecutive path edges) return false, as do exactly
/// collinear pairs.
inline bool segments_properly_intersect(const Segment2& s, const Segment2& t) {
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Strictly positive projection of the oriented edge onto dir. Zero projection
/// counts as not monotone, so the straightness gate cannot pass on a
/// degenerate vertical edge.
inline bool monotone_along(const Segment2& e, Point2 dir) {
    return dot(e.b - e.a, dir) > 0.0;
}

}  // namespace swl

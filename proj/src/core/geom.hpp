#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace th {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0; // x0<=x1, y0<=y1 required

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool valid() const { return x1 >= x0 && y1 >= y0; }
    bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

struct LatticePoint {
    int64_t i = 0;
    int64_t j = 0;
    friend bool operator==(LatticePoint a, LatticePoint b) { return a.i == b.i && a.j == b.j; }
};

// Componentwise lattice order u <= v.
inline bool lattice_leq(LatticePoint u, LatticePoint v) { return u.i <= v.i && u.j <= v.j; }

} // namespace th

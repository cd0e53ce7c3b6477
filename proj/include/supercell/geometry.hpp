#pragma once

#include <cmath>

namespace supercell {

struct Point2D {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

inline double distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Link distance: Euclidean, clamped below so path-loss formulas stay
// finite as d -> 0.
inline double link_distance(const Point2D& a, const Point2D& b, double min_distance_m) {
    return std::max(distance(a, b), min_distance_m);
}

}  // namespace supercell

#pragma once

#include <optional>
#include <vector>

#include "mixedvem/common.hpp"

namespace mixedvem {

// Plain polygon helpers operating on CCW (or arbitrary) vertex loops.

double signed_area(const std::vector<Vec2>& loop);
Vec2 polygon_centroid(const std::vector<Vec2>& loop);
double polygon_diameter(const std::vector<Vec2>& loop);

// True if no two non-adjacent edges of the closed loop intersect and no edge
// has zero length.
bool is_simple_polygon(const std::vector<Vec2>& loop);

bool is_convex_polygon(const std::vector<Vec2>& loop);

// True if some vertex of the CCW loop is reflex (interior angle > pi).
bool has_reflex_vertex(const std::vector<Vec2>& loop);

// Intersection of the polygon with the half-plane { p : n . p <= c }.
// Sutherland-Hodgman; returns an empty loop when nothing survives.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& loop, const Vec2& n, double c);

// Kernel of a star-shaped polygon: intersection of the inner half-planes of
// all edges (CCW loop assumed). Empty result means not star-shaped.
std::vector<Vec2> polygon_kernel(const std::vector<Vec2>& loop);

struct InscribedCircle {
    Vec2 center;
    double radius = 0.0;
};

// Chebyshev center of a convex polygon: the largest inscribed circle.
// Solved exactly by enumerating triples of active edge constraints.
InscribedCircle convex_inradius(const std::vector<Vec2>& convex_loop);

// A point from which the whole (possibly nonconvex) polygon is visible,
// chosen well inside the kernel. Fails for non-star-shaped polygons.
std::optional<Vec2> star_point(const std::vector<Vec2>& loop);

} // namespace mixedvem

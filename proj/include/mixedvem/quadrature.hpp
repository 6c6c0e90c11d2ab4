#pragma once

#include <vector>

#include "mixedvem/common.hpp"
#include "mixedvem/mesh.hpp"

namespace mixedvem {

// Gauss-Legendre nodes and weights on [-1, 1], exact for degree 2n-1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n_points);

// Quadrature along a straight segment; weights sum to the edge length.
struct EdgeQuadrature {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int order = 0; // polynomial exactness along the edge
};
EdgeQuadrature edge_gauss(const Vec2& a, const Vec2& b, int n_points);

// Quadrature over a polygon by fanning triangles from an interior point
// (centroid for convex cells, a kernel point otherwise), each triangle
// carrying a collapsed tensor Gauss rule of the requested exactness.
struct PolygonQuadrature {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int exactness = 0;
};
PolygonQuadrature polygon_quadrature(const ElementGeometry& geom, int exactness);

template <typename F>
double integrate(const PolygonQuadrature& q, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * f(q.points[i]);
    return s;
}

template <typename F>
double integrate(const EdgeQuadrature& q, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * f(q.points[i]);
    return s;
}

} // namespace mixedvem

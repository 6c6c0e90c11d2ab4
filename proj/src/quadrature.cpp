#include "mixedvem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "mixedvem/geometry.hpp"

namespace mixedvem {

namespace {

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n_points) {
    if (n_points < 1) throw QuadratureError("gauss_legendre: need at least one point");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n_points);
    if (it == cache.end()) it = cache.emplace(n_points, compute_gauss_legendre(n_points)).first;
    return it->second;
}

EdgeQuadrature edge_gauss(const Vec2& a, const Vec2& b, int n_points) {
    const GaussRule& rule = gauss_legendre(n_points);
    EdgeQuadrature q;
    q.order = 2 * n_points - 1;
    const double len = (b - a).norm();
    const Vec2 mid = (a + b) * 0.5;
    const Vec2 half = (b - a) * 0.5;
    q.points.reserve(n_points);
    q.weights.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        q.points.push_back(mid + half * rule.nodes[i]);
        q.weights.push_back(0.5 * len * rule.weights[i]);
    }
    return q;
}

namespace {

// Collapsed tensor rule on the triangle (p0, p1, p2), exact for bivariate
// polynomials up to `exactness`. The map x = p0 + u[(1-v)(p1-p0) + v(p2-p0)]
// has Jacobian u * 2|T|, so the u-degree of the integrand grows by one.
void append_triangle_rule(const Vec2& p0, const Vec2& p1, const Vec2& p2, int exactness,
                          PolygonQuadrature& out) {
    const int nu = (exactness + 2 + 1) / 2; // exact for u-degree exactness+1
    const int nv = (exactness + 1 + 1) / 2;
    const GaussRule& gu = gauss_legendre(nu);
    const GaussRule& gv = gauss_legendre(nv);
    const Vec2 e1 = p1 - p0;
    const Vec2 e2 = p2 - p0;
    const double twice_area = e1.cross(e2);
    for (int i = 0; i < nu; ++i) {
        const double u = 0.5 * (gu.nodes[i] + 1.0);
        const double wu = 0.5 * gu.weights[i];
        for (int j = 0; j < nv; ++j) {
            const double v = 0.5 * (gv.nodes[j] + 1.0);
            const double wv = 0.5 * gv.weights[j];
            out.points.push_back(p0 + (e1 * (1.0 - v) + e2 * v) * u);
            out.weights.push_back(wu * wv * u * twice_area);
        }
    }
}

} // namespace

PolygonQuadrature polygon_quadrature(const ElementGeometry& geom, int exactness) {
    if (exactness < 0) throw QuadratureError("polygon_quadrature: negative exactness");
    const auto fan = star_point(geom.vertex_coords);
    if (!fan) throw QuadratureError("polygon_quadrature: no valid fan point (not star-shaped)");
    PolygonQuadrature q;
    q.exactness = exactness;
    const std::size_t m = geom.vertex_coords.size();
    for (std::size_t i = 0; i < m; ++i)
        append_triangle_rule(*fan, geom.vertex_coords[i], geom.vertex_coords[(i + 1) % m],
                             exactness, q);
    return q;
}

} // namespace mixedvem

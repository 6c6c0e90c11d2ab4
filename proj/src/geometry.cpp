#include "mixedvem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixedvem {

double signed_area(const std::vector<Vec2>& loop) {
    double twice = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = loop[i];
        const Vec2& b = loop[(i + 1) % n];
        twice += a.cross(b);
    }
    return 0.5 * twice;
}

Vec2 polygon_centroid(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    double a6 = 0.0;
    Vec2 c{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = loop[i];
        const Vec2& q = loop[(i + 1) % n];
        const double w = p.cross(q);
        a6 += w;
        c += (p + q) * w;
    }
    if (a6 == 0.0) throw DegenerateElementError("polygon_centroid: zero area");
    return c / (3.0 * a6);
}

double polygon_diameter(const std::vector<Vec2>& loop) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
        for (std::size_t j = i + 1; j < loop.size(); ++j)
            d2 = std::max(d2, (loop[i] - loop[j]).squared_norm());
    return std::sqrt(d2);
}

namespace {

// Proper or improper intersection of closed segments [a,b] and [c,d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q - p).cross(r - p);
    };
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0)
        return true;
    const auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

} // namespace

bool is_simple_polygon(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i)
        if ((loop[(i + 1) % n] - loop[i]).squared_norm() == 0.0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (they share an endpoint)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

bool is_convex_polygon(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = loop[(i + 1) % n] - loop[i];
        const Vec2 e2 = loop[(i + 2) % n] - loop[(i + 1) % n];
        if (e1.cross(e2) < 0.0) return false;
    }
    return true;
}

bool has_reflex_vertex(const std::vector<Vec2>& loop) { return !is_convex_polygon(loop); }

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& loop, const Vec2& n, double c) {
    std::vector<Vec2> out;
    const std::size_t m = loop.size();
    out.reserve(m + 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = loop[i];
        const Vec2& q = loop[(i + 1) % m];
        const double dp = n.dot(p) - c;
        const double dq = n.dot(q) - c;
        if (dp <= 0.0) out.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + (q - p) * t);
        }
    }
    return out;
}

std::vector<Vec2> polygon_kernel(const std::vector<Vec2>& loop) {
    // Start from the bounding box so the kernel of a convex polygon comes out
    // as the polygon itself regardless of vertex collinearity.
    double xmin = loop[0].x, xmax = loop[0].x, ymin = loop[0].y, ymax = loop[0].y;
    for (const Vec2& p : loop) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    std::vector<Vec2> ker = {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n && !ker.empty(); ++i) {
        const Vec2 t = loop[(i + 1) % n] - loop[i];
        const Vec2 nrm = t.rotated_cw(); // outward for a CCW loop
        ker = clip_halfplane(ker, nrm, nrm.dot(loop[i]));
    }
    return ker;
}

InscribedCircle convex_inradius(const std::vector<Vec2>& convex_loop) {
    const std::size_t n = convex_loop.size();
    if (n < 3) throw DegenerateElementError("convex_inradius: degenerate polygon");
    // Edge constraints n_i . p + r <= b_i with unit outward normals.
    std::vector<Vec2> nrm(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 t = convex_loop[(i + 1) % n] - convex_loop[i];
        nrm[i] = t.rotated_cw().normalized();
        b[i] = nrm[i].dot(convex_loop[i]);
    }
    InscribedCircle best;
    best.radius = -1.0;
    const auto feasible = [&](const Vec2& p, double r) {
        for (std::size_t i = 0; i < n; ++i)
            if (nrm[i].dot(p) + r > b[i] + 1e-12) return false;
        return true;
    };
    // The optimum of the 3-variable LP sits on (generically) three active
    // constraints; enumerating triples is exact and cheap for small n.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                // Solve the 3x3 system [n; 1] [p; r] = b for the triple.
                const double a11 = nrm[i].x, a12 = nrm[i].y;
                const double a21 = nrm[j].x, a22 = nrm[j].y;
                const double a31 = nrm[k].x, a32 = nrm[k].y;
                const double det = a11 * (a22 - a32) - a12 * (a21 - a31) + (a21 * a32 - a31 * a22);
                if (std::abs(det) < 1e-14) continue;
                const double b1 = b[i], b2 = b[j], b3 = b[k];
                const double px =
                    (b1 * (a22 - a32) - a12 * (b2 - b3) + (b2 * a32 - b3 * a22)) / det;
                const double py =
                    (a11 * (b2 - b3) - b1 * (a21 - a31) + (a21 * b3 - a31 * b2)) / det;
                const double r = b1 - a11 * px - a12 * py;
                if (r > best.radius && feasible({px, py}, r)) best = {{px, py}, r};
            }
    if (best.radius < 0.0) throw DegenerateElementError("convex_inradius: no feasible center");
    return best;
}

std::optional<Vec2> star_point(const std::vector<Vec2>& loop) {
    if (is_convex_polygon(loop)) return polygon_centroid(loop);
    const std::vector<Vec2> ker = polygon_kernel(loop);
    if (ker.size() < 3 || std::abs(signed_area(ker)) < 1e-30) return std::nullopt;
    return convex_inradius(ker).center;
}

} // namespace mixedvem

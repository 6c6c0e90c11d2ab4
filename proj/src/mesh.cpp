#include "mixedvem/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mixedvem/geometry.hpp"

namespace mixedvem {

PolygonalMesh build_topology(std::vector<Vec2> raw_vertices,
                             std::vector<std::vector<int>> raw_cells) {
    PolygonalMesh mesh;
    mesh.vertices = std::move(raw_vertices);
    mesh.cells = std::move(raw_cells);

    const int nv = mesh.n_vertices();
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        auto& loop = mesh.cells[c];
        if (loop.size() < 3)
            throw TopologyError("cell " + std::to_string(c) + " has fewer than 3 vertices");
        std::vector<int> sorted = loop;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw TopologyError("cell " + std::to_string(c) + " repeats a vertex");
        for (int v : loop)
            if (v < 0 || v >= nv)
                throw TopologyError("cell " + std::to_string(c) + " references vertex " +
                                    std::to_string(v) + " out of range");

        std::vector<Vec2> coords(loop.size());
        for (std::size_t i = 0; i < loop.size(); ++i) coords[i] = mesh.vertices[loop[i]];
        const double area = signed_area(coords);
        if (area == 0.0)
            throw TopologyError("cell " + std::to_string(c) + " has zero signed area");
        if (area < 0.0) {
            std::reverse(loop.begin(), loop.end());
            std::reverse(coords.begin(), coords.end());
            mesh.reoriented_cells.push_back(static_cast<int>(c));
        }
        if (!is_simple_polygon(coords))
            throw TopologyError("cell " + std::to_string(c) + " is not a simple polygon");
    }

    std::map<std::pair<int, int>, int> edge_index;
    mesh.cell_edges.resize(mesh.cells.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const auto& loop = mesh.cells[c];
        const std::size_t m = loop.size();
        mesh.cell_edges[c].resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const int u = loop[i];
            const int v = loop[(i + 1) % m];
            const std::pair<int, int> key{std::min(u, v), std::max(u, v)};
            auto [it, inserted] = edge_index.try_emplace(key, mesh.n_edges());
            if (inserted) {
                PolygonalMesh::Edge e;
                e.a = key.first;
                e.b = key.second;
                const Vec2 t = mesh.vertices[e.b] - mesh.vertices[e.a];
                e.length = t.norm();
                e.normal = t.rotated_cw() / e.length;
                mesh.edges.push_back(e);
                mesh.edge_cells.push_back({-1, -1});
            }
            const int eid = it->second;
            // The cell traverses u -> v; its outward normal is the clockwise
            // rotation of that direction, which matches the global normal
            // exactly when u is the lower-index endpoint.
            const int sign = (u < v) ? +1 : -1;
            mesh.cell_edges[c][i] = {eid, sign};
            auto& adj = mesh.edge_cells[eid];
            if (adj[0] < 0)
                adj[0] = static_cast<int>(c);
            else if (adj[1] < 0)
                adj[1] = static_cast<int>(c);
            else
                throw TopologyError("edge shared by more than two cells");
        }
    }

    // Interior edges must be traversed in opposite directions by their two
    // cells, i.e. carry opposite orientation signs.
    std::vector<int> sign_sum(mesh.n_edges(), 0);
    std::vector<int> touch(mesh.n_edges(), 0);
    for (const auto& ce_list : mesh.cell_edges)
        for (const auto& ce : ce_list) {
            sign_sum[ce.edge] += ce.sign;
            touch[ce.edge] += 1;
        }
    for (int e = 0; e < mesh.n_edges(); ++e)
        if (touch[e] == 2 && sign_sum[e] != 0)
            throw TopologyError("interior edge with inconsistent orientation");

    return mesh;
}

ElementGeometry element_geometry(const PolygonalMesh& mesh, int cell) {
    if (cell < 0 || cell >= mesh.n_cells()) throw Error("element_geometry: bad cell index");
    const auto& loop = mesh.cells[cell];
    ElementGeometry g;
    g.vertex_coords.resize(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) g.vertex_coords[i] = mesh.vertices[loop[i]];
    g.area = signed_area(g.vertex_coords);
    if (g.area <= 0.0)
        throw DegenerateElementError("cell " + std::to_string(cell) + " has nonpositive area");
    g.centroid = polygon_centroid(g.vertex_coords);
    g.diameter = polygon_diameter(g.vertex_coords);
    const std::size_t m = loop.size();
    g.edge_lengths.resize(m);
    g.outward_normals.resize(m);
    g.edge_midpoints.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = g.vertex_coords[i];
        const Vec2& b = g.vertex_coords[(i + 1) % m];
        const Vec2 t = b - a;
        g.edge_lengths[i] = t.norm();
        g.outward_normals[i] = t.rotated_cw() / g.edge_lengths[i];
        g.edge_midpoints[i] = (a + b) * 0.5;
    }
    return g;
}

namespace {

PolygonalMesh grid_mesh(int nx, int ny, const std::vector<Vec2>& verts) {
    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(nx) * ny);
    const auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    return build_topology(verts, cells);
}

std::vector<Vec2> cartesian_vertices(int nx, int ny) {
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.push_back({static_cast<double>(i) / nx, static_cast<double>(j) / ny});
    return verts;
}

} // namespace

PolygonalMesh generate_cartesian(int n) {
    if (n < 1) throw GenerationError("generate_cartesian: n must be >= 1");
    return grid_mesh(n, n, cartesian_vertices(n, n));
}

PolygonalMesh generate_convex_concave(int n, double delta) {
    if (n < 2 || n % 2 != 0) throw GenerationError("generate_convex_concave: n must be even");
    if (delta < 0.0 || delta >= 0.5)
        throw GenerationError("generate_convex_concave: delta must lie in [0, 0.5)");
    // Checkerboard of dented quads: interior lattice vertices with even index
    // parity slide along the cell diagonal by 3*delta*h, which pushes them
    // past the opposite diagonal of the quad to their lower-left (reflex
    // corner) while the three other incident quads stay convex.
    const double h = 1.0 / n;
    std::vector<Vec2> verts = cartesian_vertices(n, n);
    for (int j = 1; j < n; ++j)
        for (int i = 1; i < n; ++i)
            if ((i + j) % 2 == 0) {
                Vec2& v = verts[j * (n + 1) + i];
                v.x += 3.0 * delta * h;
                v.y += 3.0 * delta * h;
            }
    PolygonalMesh mesh;
    try {
        mesh = grid_mesh(n, n, verts);
    } catch (const TopologyError& e) {
        throw GenerationError(std::string("generate_convex_concave: ") + e.what());
    }
    for (int c = 0; c < mesh.n_cells(); ++c)
        if (element_geometry(mesh, c).area <= 0.0)
            throw GenerationError("generate_convex_concave: inverted cell");
    return mesh;
}

PolygonalMesh generate_distorted(int n, double amplitude) {
    if (n < 1) throw GenerationError("generate_distorted: n must be >= 1");
    if (amplitude < 0.0 || amplitude > 0.3)
        throw GenerationError("generate_distorted: amplitude must lie in [0, 0.3]");
    const double a = amplitude / n;
    std::vector<Vec2> verts = cartesian_vertices(n, n);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int j = 1; j < n; ++j)
        for (int i = 1; i < n; ++i) {
            Vec2& v = verts[j * (n + 1) + i];
            const double s = a * std::sin(two_pi * v.x) * std::sin(two_pi * v.y);
            v.x += s;
            v.y += s;
        }
    PolygonalMesh mesh;
    try {
        mesh = grid_mesh(n, n, verts);
    } catch (const TopologyError& e) {
        throw GenerationError(std::string("generate_distorted: ") + e.what());
    }
    for (int c = 0; c < mesh.n_cells(); ++c)
        if (element_geometry(mesh, c).area <= 0.0)
            throw GenerationError("generate_distorted: inverted cell");
    return mesh;
}

PolygonalMesh generate_rhomboidal(int nx, int ny, double shear) {
    if (nx < 1 || ny < 1) throw GenerationError("generate_rhomboidal: nx, ny must be >= 1");
    if (shear < 0.0 || shear >= 1.0)
        throw GenerationError("generate_rhomboidal: shear must lie in [0, 1)");
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double x = static_cast<double>(i) / nx;
            const double y = static_cast<double>(j) / ny;
            verts.push_back({(x + shear * y) / (1.0 + shear), y});
        }
    return grid_mesh(nx, ny, verts);
}

PolygonalMesh refine_anisotropic(int nx, int ny, double shear, int step, int alpha) {
    if (step < 0) throw GenerationError("refine_anisotropic: step must be >= 0");
    if (alpha < 2) throw GenerationError("refine_anisotropic: alpha must be >= 2");
    long long fx = 1, fy = 1;
    for (int s = 0; s < step; ++s) {
        fx *= alpha;
        fy *= static_cast<long long>(alpha) * alpha;
    }
    const long long rnx = nx * fx;
    const long long rny = ny * fy;
    if (rnx * rny > 4'000'000LL)
        throw GenerationError("refine_anisotropic: refined mesh exceeds the cell budget");
    return generate_rhomboidal(static_cast<int>(rnx), static_cast<int>(rny), shear);
}

// ---------------------------------------------------------------------------
// Clipped Voronoi with Lloyd relaxation
// ---------------------------------------------------------------------------

namespace {

const std::vector<Vec2> kUnitSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, std::size_t i) {
    std::vector<Vec2> cell = kUnitSquare;
    const Vec2 si = seeds[i];
    double rmax2 = 2.0; // squared distance bound of the square from any seed
    for (std::size_t j = 0; j < seeds.size(); ++j) {
        if (j == i) continue;
        const Vec2 d = seeds[j] - si;
        // The bisector cannot cut the cell if seed j is farther than twice
        // the current max vertex distance.
        if (d.squared_norm() > 4.0 * rmax2) continue;
        const Vec2 mid = (si + seeds[j]) * 0.5;
        cell = clip_halfplane(cell, d, d.dot(mid));
        if (cell.size() < 3) return {};
        rmax2 = 0.0;
        for (const Vec2& p : cell) rmax2 = std::max(rmax2, (p - si).squared_norm());
    }
    return cell;
}

// Merge near-coincident points across all cell loops so adjacent Voronoi
// cells share exact vertices. Union-find over a sorted sweep.
PolygonalMesh mesh_from_loops(const std::vector<std::vector<Vec2>>& loops) {
    struct Pt {
        Vec2 p;
        std::size_t id;
    };
    std::vector<Pt> pts;
    for (const auto& loop : loops)
        for (const Vec2& p : loop) pts.push_back({p, pts.size()});

    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    constexpr double tol = 1e-9;
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pts[a].p.x < pts[b].p.x; });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const Pt& a = pts[order[oi]];
            const Pt& b = pts[order[oj]];
            if (b.p.x - a.p.x > tol) break;
            if ((a.p - b.p).norm() <= tol) parent[find(order[oj])] = find(order[oi]);
        }
    }

    std::vector<int> rep_vertex(pts.size(), -1);
    std::vector<Vec2> vertices;
    std::vector<std::vector<int>> cells;
    std::size_t cursor = 0;
    for (const auto& loop : loops) {
        std::vector<int> cell;
        for (std::size_t k = 0; k < loop.size(); ++k, ++cursor) {
            const std::size_t root = find(cursor);
            if (rep_vertex[root] < 0) {
                rep_vertex[root] = static_cast<int>(vertices.size());
                vertices.push_back(pts[root].p);
            }
            const int vid = rep_vertex[root];
            if (cell.empty() || cell.back() != vid) cell.push_back(vid);
        }
        while (cell.size() > 1 && cell.front() == cell.back()) cell.pop_back();
        if (cell.size() < 3) throw GenerationError("degenerate Voronoi cell after merging");
        cells.push_back(std::move(cell));
    }
    // Drop unreferenced vertices to keep the file format tight.
    std::vector<int> remap(vertices.size(), -1);
    std::vector<Vec2> used;
    for (auto& cell : cells)
        for (int& v : cell) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(used.size());
                used.push_back(vertices[v]);
            }
            v = remap[v];
        }
    return build_topology(std::move(used), std::move(cells));
}

} // namespace

PolygonalMesh voronoi_mesh(std::vector<Vec2> seeds, int lloyd_iters) {
    if (seeds.size() < 4) throw GenerationError("voronoi_mesh: need at least 4 seeds");
    for (const Vec2& s : seeds)
        if (s.x <= 0.0 || s.x >= 1.0 || s.y <= 0.0 || s.y >= 1.0)
            throw GenerationError("voronoi_mesh: seeds must lie strictly inside (0,1)^2");

    constexpr int max_retries = 5;
    for (int attempt = 0;; ++attempt) {
        try {
            std::vector<Vec2> current = seeds;
            for (int it = 0; it < lloyd_iters; ++it) {
                std::vector<Vec2> next(current.size());
                for (std::size_t i = 0; i < current.size(); ++i) {
                    const auto cell = voronoi_cell(current, i);
                    if (cell.size() < 3) throw GenerationError("empty Voronoi cell");
                    next[i] = polygon_centroid(cell);
                }
                current = std::move(next);
            }
            std::vector<std::vector<Vec2>> loops(current.size());
            for (std::size_t i = 0; i < current.size(); ++i) {
                loops[i] = voronoi_cell(current, i);
                if (loops[i].size() < 3) throw GenerationError("empty Voronoi cell");
            }
            return mesh_from_loops(loops);
        } catch (const GenerationError&) {
            if (attempt >= max_retries) throw;
            // Deterministic jitter, tied to the attempt number.
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + attempt);
            std::uniform_real_distribution<double> jitter(-1e-6, 1e-6);
            for (Vec2& s : seeds) {
                s.x = std::clamp(s.x + jitter(rng), 1e-6, 1.0 - 1e-6);
                s.y = std::clamp(s.y + jitter(rng), 1e-6, 1.0 - 1e-6);
            }
        }
    }
}

PolygonalMesh generate_random_voronoi(int n_seeds, int lloyd_iters, std::uint64_t rng_seed) {
    if (n_seeds < 4) throw GenerationError("generate_random_voronoi: need at least 4 seeds");
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec2> seeds(n_seeds);
    for (Vec2& s : seeds) {
        // Keep seeds away from the boundary so initial cells are well formed.
        s.x = 0.01 + 0.98 * unit(rng);
        s.y = 0.01 + 0.98 * unit(rng);
    }
    return voronoi_mesh(std::move(seeds), lloyd_iters);
}

RegularityReport check_regularity(const PolygonalMesh& mesh) {
    RegularityReport rep;
    rep.gamma_edge = 2.0;
    rep.gamma_star = 2.0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const ElementGeometry g = element_geometry(mesh, c);
        const double min_edge = *std::min_element(g.edge_lengths.begin(), g.edge_lengths.end());
        const double ge = min_edge / g.diameter;
        if (ge < rep.gamma_edge) {
            rep.gamma_edge = ge;
            rep.worst_cell = c;
        }
        double r = 0.0;
        if (is_convex_polygon(g.vertex_coords)) {
            r = convex_inradius(g.vertex_coords).radius;
        } else {
            const auto ker = polygon_kernel(g.vertex_coords);
            if (ker.size() >= 3) r = convex_inradius(ker).radius;
        }
        rep.gamma_star = std::min(rep.gamma_star, r / g.diameter);
    }
    return rep;
}

double max_diameter(const PolygonalMesh& mesh) {
    double h = 0.0;
    for (int c = 0; c < mesh.n_cells(); ++c)
        h = std::max(h, element_geometry(mesh, c).diameter);
    return h;
}

// ---------------------------------------------------------------------------
// JSON mesh file format
// ---------------------------------------------------------------------------

std::string mesh_to_json(const PolygonalMesh& mesh) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const Vec2& v : mesh.vertices) j["vertices"].push_back({v.x, v.y});
    j["cells"] = mesh.cells;
    return j.dump();
}

PolygonalMesh mesh_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("vertices") || !j.contains("cells"))
        throw Error("mesh JSON must contain 'vertices' and 'cells'");
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices")) verts.push_back({v.at(0), v.at(1)});
    std::vector<std::vector<int>> cells = j.at("cells");
    return build_topology(std::move(verts), std::move(cells));
}

void write_mesh_json(const PolygonalMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << mesh_to_json(mesh) << "\n";
}

PolygonalMesh read_mesh_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return mesh_from_json(ss.str());
}

} // namespace mixedvem

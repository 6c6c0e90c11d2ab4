#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mixedvem/common.hpp"

namespace mixedvem {

// Conforming polygonal tessellation of a 2D domain. Cells are CCW vertex
// loops; every geometric edge appears once in `edges` with a fixed global
// unit normal (the 90-degree clockwise rotation of the unit vector from the
// lower-index endpoint to the higher-index endpoint). A cell references an
// edge together with the sign relating its outward normal to the global one,
// so a single flux unknown per edge yields H(div)-conforming normal traces.
struct PolygonalMesh {
    struct Edge {
        int a = -1; // lower vertex index
        int b = -1; // higher vertex index
        Vec2 normal;
        double length = 0.0;
    };
    struct CellEdge {
        int edge = -1;
        int sign = 0; // +1: cell outward normal == global normal
    };

    std::vector<Vec2> vertices;
    std::vector<std::vector<int>> cells;
    std::vector<Edge> edges;
    std::vector<std::vector<CellEdge>> cell_edges; // aligned with the cell loop
    std::vector<std::array<int, 2>> edge_cells;    // adjacent cells, -1 if none
    std::vector<int> reoriented_cells;             // input loops that were clockwise

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    bool is_boundary_edge(int e) const { return edge_cells[e][1] < 0; }
};

// Per-element geometric quantities used by all local operators.
struct ElementGeometry {
    double area = 0.0;
    Vec2 centroid;
    double diameter = 0.0;
    std::vector<Vec2> vertex_coords;
    std::vector<double> edge_lengths;
    std::vector<Vec2> outward_normals; // unit
    std::vector<Vec2> edge_midpoints;

    int n_edges() const { return static_cast<int>(edge_lengths.size()); }
};

struct RegularityReport {
    double gamma_edge = 0.0; // min over cells of min_e |e| / h_E
    double gamma_star = 0.0; // min over cells of (kernel inradius) / h_E
    int worst_cell = -1;     // cell attaining gamma_edge
};

PolygonalMesh build_topology(std::vector<Vec2> raw_vertices,
                             std::vector<std::vector<int>> raw_cells);

ElementGeometry element_geometry(const PolygonalMesh& mesh, int cell);

// Mesh families. All tessellate the unit square (0,1)^2.
PolygonalMesh generate_cartesian(int n);
PolygonalMesh generate_convex_concave(int n, double delta);
PolygonalMesh generate_distorted(int n, double amplitude);
PolygonalMesh generate_random_voronoi(int n_seeds, int lloyd_iters, std::uint64_t rng_seed);
PolygonalMesh generate_rhomboidal(int nx, int ny, double shear);

// Voronoi mesh of explicit seed points in (0,1)^2, after `lloyd_iters`
// centroid relaxations. generate_random_voronoi draws the seeds and delegates.
PolygonalMesh voronoi_mesh(std::vector<Vec2> seeds, int lloyd_iters);

// Anisotropic rhomboidal refinement: factor alpha in x, alpha^2 in y.
PolygonalMesh refine_anisotropic(int nx, int ny, double shear, int step, int alpha = 2);

RegularityReport check_regularity(const PolygonalMesh& mesh);

// JSON mesh file format: { "vertices": [[x,y],...], "cells": [[i0,i1,...],...] }
void write_mesh_json(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_mesh_json(const std::string& path);
std::string mesh_to_json(const PolygonalMesh& mesh);
PolygonalMesh mesh_from_json(const std::string& text);

double max_diameter(const PolygonalMesh& mesh);

} // namespace mixedvem

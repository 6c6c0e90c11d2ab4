#pragma once

#include <functional>

#include <Eigen/Dense>

#include "mixedvem/harmonic.hpp"
#include "mixedvem/mesh.hpp"

namespace mixedvem {

// Projection degree rule: the smallest k with 2k >= n_E.
int choose_k(int n_edges);

// Divergence of the virtual field with edge-average flux DOFs c (local
// outward convention): (1/|E|) sum_j |e_j| c_j.
double local_div(const ElementGeometry& geom, const Eigen::VectorXd& dofs);

// Everything needed to project local DOF vectors onto grad H_k(E).
//   G: Gram of the harmonic-gradient basis (2k x 2k)
//   B: right-hand sides of the orthogonality condition per DOF (2k x n_E)
//   P = G^{-1} B: DOF vector -> coefficients of the projected field
//   P0: projection onto constant vector fields per DOF (2 x n_E)
struct ProjectionPack {
    int k = 0;
    HarmonicGradientBasis basis;
    Eigen::MatrixXd G;
    Eigen::MatrixXd B;
    Eigen::MatrixXd P;
    Eigen::MatrixXd P0;

    // Projected field at a physical point for a local DOF vector.
    Vec2 project(const Eigen::VectorXd& dofs, const Vec2& p) const {
        return basis.gradient_combination(P * dofs, p);
    }
};

ProjectionPack projection_pack(const ElementGeometry& geom, const HarmonicGradientBasis& basis);

// Stabilization-free local form: A = P^T G P, the matrix of
// (projected sigma, projected tau)_E in DOF coordinates.
Eigen::MatrixXd a_stabfree(const ElementGeometry& geom, const ProjectionPack& pack);

// Standard lowest-order mixed VEM form with D-recipe stabilization:
// consistency on constants plus diag(max(h_E |e_i|, |Pi0 phi_i|^2_E)) acting
// on the complement of the constant projection.
Eigen::MatrixXd a_drecipe(const ElementGeometry& geom, const ProjectionPack& pack);

// int_E f dA via polygon quadrature (exactness 6).
double local_rhs(const ElementGeometry& geom, const std::function<double(Vec2)>& f);

// DOF values of the hourglass field: xi . n_j = (-1)^j / |e_j| (1-based j).
// Defined for quadrilaterals.
Eigen::VectorXd hourglass_vector(const ElementGeometry& geom);

// Harmonic quadratic with p*(M_j) = (-1)^j at the edge midpoints, built from
// complex powers on the Varignon parallelogram.
struct PStar {
    Poly2 poly; // polynomial in (x - M1)
    Vec2 origin;
    double value(const Vec2& p) const { return poly.eval(p.x - origin.x, p.y - origin.y); }
    Vec2 gradient(const Vec2& p) const {
        return {poly.dx().eval(p.x - origin.x, p.y - origin.y),
                poly.dy().eval(p.x - origin.x, p.y - origin.y)};
    }
};
PStar pstar(const ElementGeometry& geom);

// (xi, a)_E for a constant field via the boundary formula; exact because the
// edge integrand a.x is linear (midpoint rule).
double hourglass_constant_pairing(const ElementGeometry& geom, const Vec2& a);

// (xi, grad p*)_E via the boundary formula; equals 8/3 on every
// nondegenerate quadrilateral.
double hourglass_pstar_pairing(const ElementGeometry& geom);

// Minimum Rayleigh quotient of a_h over the 3-dimensional divergence-free
// DOF subspace (constants + hourglass), measured against the computable
// surrogate norm |tau_0|^2 + |projected hourglass part|^2.
double kernel_coercivity_scan(const ElementGeometry& geom);

} // namespace mixedvem

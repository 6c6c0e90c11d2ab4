#include "mixedvem/local.hpp"

#include <cmath>
#include <complex>

#include "mixedvem/quadrature.hpp"

namespace mixedvem {

int choose_k(int n_edges) {
    if (n_edges < 3) throw Error("choose_k: a polygon has at least 3 edges");
    return (n_edges + 1) / 2;
}

double local_div(const ElementGeometry& geom, const Eigen::VectorXd& dofs) {
    const int m = geom.n_edges();
    if (dofs.size() != m) throw Error("local_div: DOF count does not match edge count");
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += geom.edge_lengths[j] * dofs[j];
    return s / geom.area;
}

ProjectionPack projection_pack(const ElementGeometry& geom, const HarmonicGradientBasis& basis) {
    const int m = geom.n_edges();
    const int k = basis.degree;
    if (k != choose_k(m)) throw Error("projection_pack: basis degree does not match choose_k");
    const int nb = basis.size();

    ProjectionPack pack;
    pack.k = k;
    pack.basis = basis;
    pack.G = gram_matrix_boundary(basis);

    // B_ij = -(div phi_j, p_i)_E + int_{e_j} p_i ds, with div phi_j = |e_j|/|E|.
    Eigen::VectorXd cell_integrals(nb);
    for (int i = 0; i < nb; ++i) cell_integrals[i] = integrate_harmonic_over_element(basis, i);

    pack.B.resize(nb, m);
    for (int j = 0; j < m; ++j) {
        const Vec2& a = geom.vertex_coords[j];
        const Vec2& b = geom.vertex_coords[(j + 1) % m];
        const EdgeQuadrature q = edge_gauss(a, b, k + 1);
        for (int i = 0; i < nb; ++i) {
            double edge_term = 0.0;
            for (std::size_t qp = 0; qp < q.points.size(); ++qp)
                edge_term += q.weights[qp] * basis.value(i, q.points[qp]);
            pack.B(i, j) = edge_term - geom.edge_lengths[j] / geom.area * cell_integrals[i];
        }
    }

    pack.P = pack.G.ldlt().solve(pack.B);

    // Constant projection: (phi_j, a)_E = |e_j| a.(M_j - x_E) for constant a,
    // derived by parts; only midpoints and the centroid enter.
    pack.P0.resize(2, m);
    for (int j = 0; j < m; ++j) {
        const Vec2 d = geom.edge_midpoints[j] - geom.centroid;
        pack.P0(0, j) = geom.edge_lengths[j] * d.x / geom.area;
        pack.P0(1, j) = geom.edge_lengths[j] * d.y / geom.area;
    }
    return pack;
}

Eigen::MatrixXd a_stabfree(const ElementGeometry& /*geom*/, const ProjectionPack& pack) {
    Eigen::MatrixXd A = pack.P.transpose() * pack.G * pack.P;
    return 0.5 * (A + A.transpose());
}

Eigen::MatrixXd a_drecipe(const ElementGeometry& geom, const ProjectionPack& pack) {
    const int m = geom.n_edges();
    // Consistency: (Pi0 sigma, Pi0 tau)_E = |E| (P0 s).(P0 t).
    Eigen::MatrixXd A = geom.area * pack.P0.transpose() * pack.P0;
    // DOF-matrix of the constant projection: Pi0_{ij} = dof_i(Pi0 phi_j).
    Eigen::MatrixXd Pi0(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
            Pi0(i, j) =
                pack.P0(0, j) * geom.outward_normals[i].x + pack.P0(1, j) * geom.outward_normals[i].y;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd D(m);
    for (int i = 0; i < m; ++i) {
        const double pnorm2 =
            geom.area * (pack.P0(0, i) * pack.P0(0, i) + pack.P0(1, i) * pack.P0(1, i));
        D[i] = std::max(geom.diameter * geom.edge_lengths[i], pnorm2);
    }
    A.noalias() += (I - Pi0).transpose() * D.asDiagonal() * (I - Pi0);
    return 0.5 * (A + A.transpose());
}

double local_rhs(const ElementGeometry& geom, const std::function<double(Vec2)>& f) {
    const PolygonQuadrature q = polygon_quadrature(geom, 6);
    return integrate(q, f);
}

Eigen::VectorXd hourglass_vector(const ElementGeometry& geom) {
    if (geom.n_edges() != 4)
        throw Error("hourglass_vector: defined for quadrilaterals only");
    Eigen::VectorXd xi(4);
    for (int j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0; // (-1)^(j+1) with 1-based j
        xi[j] = sign / geom.edge_lengths[j];
    }
    return xi;
}

PStar pstar(const ElementGeometry& geom) {
    if (geom.n_edges() != 4) throw Error("pstar: defined for quadrilaterals only");
    const Vec2 M1 = geom.edge_midpoints[0];
    const Vec2 M2 = geom.edge_midpoints[1];
    const Vec2 M4 = geom.edge_midpoints[3];
    const std::complex<double> z1(M2.x - M1.x, M2.y - M1.y);
    const std::complex<double> z2(M4.x - M1.x, M4.y - M1.y);
    const std::complex<double> z1z2 = z1 * z2;
    if (std::abs(z1z2) == 0.0)
        throw DegenerateElementError("pstar: degenerate midpoint parallelogram");
    // q(z) = -1 + 2 (z1+z2)/(z1 z2) z - 2/(z1 z2) z^2, p* = Re q.
    const std::complex<double> c1 = 2.0 * (z1 + z2) / z1z2;
    const std::complex<double> c2 = -2.0 / z1z2;
    PStar p;
    p.origin = M1;
    p.poly = Poly2(2);
    p.poly.at(0, 0) = -1.0;
    // Re(c (x + iy)) = Re(c) x - Im(c) y
    p.poly.at(1, 0) = c1.real();
    p.poly.at(0, 1) = -c1.imag();
    // Re(c (x + iy)^2) = Re(c)(x^2 - y^2) - Im(c)(2xy)
    p.poly.at(2, 0) = c2.real();
    p.poly.at(0, 2) = -c2.real();
    p.poly.at(1, 1) = -2.0 * c2.imag();
    return p;
}

double hourglass_constant_pairing(const ElementGeometry& geom, const Vec2& a) {
    // (xi, a)_E = sum_j (-1)^j / |e_j| int_{e_j} a.x ds = sum_j (-1)^j a.M_j.
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        s += sign * a.dot(geom.edge_midpoints[j]);
    }
    return s;
}

double hourglass_pstar_pairing(const ElementGeometry& geom) {
    const PStar p = pstar(geom);
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        const Vec2& a = geom.vertex_coords[j];
        const Vec2& b = geom.vertex_coords[(j + 1) % 4];
        // 2-point Gauss is exact for the quadratic p* along the edge.
        const EdgeQuadrature q = edge_gauss(a, b, 2);
        double edge_int = 0.0;
        for (std::size_t qp = 0; qp < q.points.size(); ++qp)
            edge_int += q.weights[qp] * p.value(q.points[qp]);
        s += sign / geom.edge_lengths[j] * edge_int;
    }
    return s;
}

double kernel_coercivity_scan(const ElementGeometry& geom) {
    if (geom.n_edges() != 4)
        throw Error("kernel_coercivity_scan: defined for quadrilaterals only");
    const HarmonicGradientBasis basis = harmonic_basis(geom, choose_k(4));
    const ProjectionPack pack = projection_pack(geom, basis);
    const Eigen::MatrixXd A = a_stabfree(geom, pack);

    // Spanning DOF vectors of the div-free subspace: two constants + hourglass.
    Eigen::MatrixXd S(4, 3);
    for (int j = 0; j < 4; ++j) {
        S(j, 0) = geom.outward_normals[j].x;
        S(j, 1) = geom.outward_normals[j].y;
    }
    S.col(2) = hourglass_vector(geom);

    const Eigen::MatrixXd Ared = S.transpose() * A * S;
    // Surrogate norm: exact L2 norm of the constant part plus the L2 norm of
    // the projected hourglass part (the true hourglass norm is uncomputable).
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(3, 3);
    N(0, 0) = geom.area;
    N(1, 1) = geom.area;
    N(2, 2) = S.col(2).transpose() * A * S.col(2); // = |projected xi|^2
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (Ared + Ared.transpose()), N);
    return es.eigenvalues().minCoeff();
}

} // namespace mixedvem

#include "mixedvem/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "mixedvem/quadrature.hpp"

namespace mixedvem {

double Poly2::eval(double x, double y) const {
    // Horner in x of Horner-in-y rows.
    double result = 0.0;
    for (int i = deg_; i >= 0; --i) {
        double row = 0.0;
        for (int j = deg_; j >= 0; --j) row = row * y + at(i, j);
        result = result * x + row;
    }
    return result;
}

Poly2 Poly2::dx() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int i = 1; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - 1; ++j) r.at(i - 1, j) = i * at(i, j);
    return r;
}

Poly2 Poly2::dy() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int i = 0; i <= deg_ - 1; ++i)
        for (int j = 1; j <= deg_; ++j) r.at(i, j - 1) = j * at(i, j);
    return r;
}

Poly2 Poly2::laplacian() const { return dx().dx() + dy().dy(); }

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 r(std::max(deg_, o.deg_));
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_; ++j) r.at(i, j) += at(i, j);
    for (int i = 0; i <= o.deg_; ++i)
        for (int j = 0; j <= o.deg_; ++j) r.at(i, j) += o.at(i, j);
    return r;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + o * -1.0; }

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 r(deg_ + o.deg_);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_; ++j) {
            const double c = at(i, j);
            if (c == 0.0) continue;
            for (int p = 0; p <= o.deg_; ++p)
                for (int q = 0; q <= o.deg_; ++q) r.at(i + p, j + q) += c * o.at(p, q);
        }
    return r;
}

Poly2 Poly2::operator*(double s) const {
    Poly2 r = *this;
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_; ++j) r.at(i, j) *= s;
    return r;
}

double Poly2::max_abs_coeff() const {
    double m = 0.0;
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_; ++j) m = std::max(m, std::abs(at(i, j)));
    return m;
}

double HarmonicGradientBasis::value(int i, const Vec2& p) const {
    return members[i].eval((p.x - center.x) / scale, (p.y - center.y) / scale);
}

Vec2 HarmonicGradientBasis::gradient(int i, const Vec2& p) const {
    const double mx = (p.x - center.x) / scale;
    const double my = (p.y - center.y) / scale;
    return {members_dx[i].eval(mx, my) / scale, members_dy[i].eval(mx, my) / scale};
}

Vec2 HarmonicGradientBasis::gradient_combination(const Eigen::VectorXd& coeffs,
                                                 const Vec2& p) const {
    Vec2 s{0.0, 0.0};
    const double mx = (p.x - center.x) / scale;
    const double my = (p.y - center.y) / scale;
    for (int i = 0; i < size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        s += Vec2{members_dx[i].eval(mx, my), members_dy[i].eval(mx, my)} * coeffs[i];
    }
    return s / scale;
}

HarmonicGradientBasis harmonic_basis(const ElementGeometry& geom, int k) {
    if (k < 1) throw Error("harmonic_basis: k must be >= 1");
    HarmonicGradientBasis basis;
    basis.degree = k;
    basis.center = geom.centroid;
    basis.scale = geom.diameter;
    basis.element = geom;
    // Real and imaginary parts of (m_x + i m_y)^m by the complex recurrence.
    Poly2 re = Poly2::var_x();
    Poly2 im = Poly2::var_y();
    const Poly2 X = Poly2::var_x();
    const Poly2 Y = Poly2::var_y();
    for (int m = 1; m <= k; ++m) {
        if (m > 1) {
            const Poly2 nre = re * X - im * Y;
            const Poly2 nim = re * Y + im * X;
            re = nre;
            im = nim;
        }
        basis.members.push_back(re);
        basis.members.push_back(im);
    }
    for (const Poly2& p : basis.members) {
        basis.members_dx.push_back(p.dx());
        basis.members_dy.push_back(p.dy());
    }
    return basis;
}

Eigen::MatrixXd gram_matrix_boundary(const HarmonicGradientBasis& basis) {
    const ElementGeometry& geom = basis.element;
    const int n = basis.size();
    const int k = basis.degree;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    const std::size_t m = geom.vertex_coords.size();
    const auto& dxs = basis.members_dx;
    const auto& dys = basis.members_dy;
    for (std::size_t e = 0; e < m; ++e) {
        const Vec2& a = geom.vertex_coords[e];
        const Vec2& b = geom.vertex_coords[(e + 1) % m];
        const Vec2 nrm = geom.outward_normals[e];
        const EdgeQuadrature q = edge_gauss(a, b, k + 1);
        for (std::size_t qp = 0; qp < q.points.size(); ++qp) {
            const double mx = (q.points[qp].x - basis.center.x) / basis.scale;
            const double my = (q.points[qp].y - basis.center.y) / basis.scale;
            Eigen::VectorXd vals(n), flux(n);
            for (int i = 0; i < n; ++i) {
                vals[i] = basis.members[i].eval(mx, my);
                flux[i] =
                    (dxs[i].eval(mx, my) * nrm.x + dys[i].eval(mx, my) * nrm.y) / basis.scale;
            }
            G.noalias() += q.weights[qp] * vals * flux.transpose();
        }
    }
    // Symmetry is an identity here; enforce nothing, but reject severe
    // ill-conditioning (collapsed elements).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()));
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0 || lmax / lmin > 1e12)
        throw DegenerateElementError("gram_matrix_boundary: singular Gram matrix");
    return G;
}

double integrate_harmonic_over_element(const HarmonicGradientBasis& basis, int member) {
    const int degree = basis.members[member].degree();
    const PolygonQuadrature q = polygon_quadrature(basis.element, std::max(degree, 1));
    double s = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
        s += q.weights[i] * basis.value(member, q.points[i]);
    return s;
}

} // namespace mixedvem

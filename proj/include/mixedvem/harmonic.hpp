#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mixedvem/common.hpp"
#include "mixedvem/mesh.hpp"

namespace mixedvem {

// Dense bivariate polynomial with coefficients on monomials X^i Y^j.
class Poly2 {
  public:
    Poly2() : deg_(0), c_(1, 0.0) {}
    explicit Poly2(int degree) : deg_(degree), c_((degree + 1) * (degree + 1), 0.0) {}

    static Poly2 constant(double v) {
        Poly2 p(0);
        p.at(0, 0) = v;
        return p;
    }
    static Poly2 var_x() {
        Poly2 p(1);
        p.at(1, 0) = 1.0;
        return p;
    }
    static Poly2 var_y() {
        Poly2 p(1);
        p.at(0, 1) = 1.0;
        return p;
    }

    int degree() const { return deg_; }
    double& at(int i, int j) { return c_[i * (deg_ + 1) + j]; }
    double at(int i, int j) const { return c_[i * (deg_ + 1) + j]; }

    double eval(double x, double y) const;
    Poly2 dx() const;
    Poly2 dy() const;
    Poly2 laplacian() const;

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 operator*(double s) const;

    double max_abs_coeff() const;

  private:
    int deg_;
    std::vector<double> c_; // row-major (deg+1)^2, index i*(deg+1)+j
};

// Basis of scaled harmonic polynomials p with deg 1..k whose gradients span
// grad H_k(E): real and imaginary parts of ((x-x_E) + i(y-y_E))^m / h_E^m.
struct HarmonicGradientBasis {
    int degree = 0; // k
    Vec2 center;    // (x_E, y_E)
    double scale = 1.0; // h_E
    std::vector<Poly2> members; // 2k polynomials in scaled coordinates
    std::vector<Poly2> members_dx; // scaled-coordinate derivatives, cached
    std::vector<Poly2> members_dy;
    ElementGeometry element;

    int size() const { return static_cast<int>(members.size()); }
    // Value of member i at a physical point.
    double value(int i, const Vec2& p) const;
    // Physical gradient of member i (chain rule brings in 1/h_E).
    Vec2 gradient(int i, const Vec2& p) const;
    // Field sum_i coeffs[i] * grad p_i at a physical point.
    Vec2 gradient_combination(const Eigen::VectorXd& coeffs, const Vec2& p) const;
};

HarmonicGradientBasis harmonic_basis(const ElementGeometry& geom, int k);

// Gram matrix G_ij = (grad p_i, grad p_j)_E evaluated purely on the boundary:
// integration by parts leaves int_dE p_i (grad p_j . n) because the members
// are harmonic. Edge Gauss with k+1 points is exact for the degree 2k-1
// integrand.
Eigen::MatrixXd gram_matrix_boundary(const HarmonicGradientBasis& basis);

// int_E p_i dA by polygon quadrature of sufficient exactness.
double integrate_harmonic_over_element(const HarmonicGradientBasis& basis, int member);

} // namespace mixedvem

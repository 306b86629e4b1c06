#pragma once

#include <complex>

#include <Eigen/Dense>

#include "gw2/params.hpp"

namespace gw2::moyal {

using Complex = std::complex<double>;

// Field on the Moyal plane expressed in the matrix basis: phi(x) = sum_mn
// coeffs(m,n) f_mn(x). The coefficient array is (cutoff+1) x (cutoff+1).
struct MatrixFunction {
    Eigen::MatrixXcd coeffs;
    ModelParams params;

    bool is_hermitian(double tol = 1e-12) const {
        return (coeffs - coeffs.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }
};

MatrixFunction zero_function(const ModelParams& p);
MatrixFunction basis_unit(const ModelParams& p, int m, int n);

/// Matrix-basis function f_mn evaluated at a point, by the closed finite sum
/// with a(x) = (x1 + i x2)/sqrt(2), abar its conjugate and
/// f_0(x) = 2 exp(-(x1^2+x2^2)/theta). Factorials are taken in log space;
/// valid up to m+n = 60 (guarded).
Complex basis_function(int m, int n, double x1, double x2, double theta);

/// Star product via the fusion rule: the coefficient array of A*B is the
/// matrix product of the coefficient arrays.
MatrixFunction star_product(const MatrixFunction& a, const MatrixFunction& b);

/// integral of the field over the plane: 2*pi*theta*trace(coeffs).
Complex integrate(const MatrixFunction& a);

/// Position-space value sum_mn coeffs(m,n) f_mn(x).
Complex reconstruct(const MatrixFunction& a, double x1, double x2);

// --- quadrature oracle -------------------------------------------------------
// Independent evaluation of the defining Groenwald-Moyal integral
//   (f*g)(x) = 1/(pi^2 theta^2) int d2y d2z f(x+y) g(x+z) exp(-2i y.Thetainv.z)
// on tensor-product Gauss-Hermite nodes (64 per axis by default), and of the
// plane integral of a reconstructed field. Used to cross-check the fusion
// rule and the trace formula.

Complex star_product_quadrature(const MatrixFunction& a, const MatrixFunction& b, double x1,
                                double x2, int nodes_per_axis = 64);

Complex basis_star_quadrature(int m, int n, int k, int l, double theta, double x1, double x2,
                              int nodes_per_axis = 64);

Complex integrate_quadrature(const MatrixFunction& a, int nodes_per_axis = 64);

}  // namespace gw2::moyal

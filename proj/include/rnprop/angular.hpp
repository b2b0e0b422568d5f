#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rnprop/errors.hpp"

namespace rnprop {

// Eigenproblem of the spin-weighted angular operator for spin 1/2,
//   [[0, Lm], [-Lp, 0]] (Y+, Y-) = xi (Y+, Y-),
//   Lpm = d/dtheta + cot(theta)/2 -+ (k+1/2)/sin(theta),
// on the azimuthal sector exp(-i(k+1/2) phi).
//
// The components behave like (1-x)^(a/2)(1+x)^(b/2) at the poles (x = cos
// theta). Factoring these weights out analytically leaves a polynomial
// eigenproblem, which is discretized by collocation on Gauss-Legendre nodes.

struct AngularMode {
    int k = 0;
    int l = 0;          // artifact labeling: +-1, +-2, ... by increasing |lambda|, sign of l = sign of lambda
    double lambda = 0;  // separation constant xi
    std::vector<double> theta;                 // collocation angles
    std::vector<double> weight;                // quadrature weights for the sin(theta) measure
    std::vector<std::array<double, 2>> y;      // (Y+, Y-) samples, unit L2 norm
};

struct AngularOperator {
    int k = 0;
    int kk = 0;                 // mirrored sector index |k| or -k-1 actually used
    int n = 0;                  // collocation points per component
    Eigen::MatrixXd block;      // 2n x 2n discrete operator acting on (g+, g-)
    Eigen::VectorXd x;          // collocation nodes in cos(theta)
    Eigen::VectorXd w;          // Gauss weights for the measure (1-x^2)^kk dx
    Eigen::VectorXd wplus2;     // residual pole factors (1+x) per node
    Eigen::VectorXd wminus2;    // (1-x) per node
    bool swapped = false;       // true for k < 0 (components exchanged internally)
};

// Gauss-Legendre nodes and weights on (-1, 1).
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

// Gauss nodes and weights for the weight (1-x^2)^alpha on (-1, 1).
void jacobi_gauss_symmetric(int n, int alpha, Eigen::VectorXd& x, Eigen::VectorXd& w);

// Polynomial collocation differentiation matrix for the nodes x.
Eigen::MatrixXd differentiation_matrix(const Eigen::VectorXd& x);

AngularOperator build_angular_operator(int k, int ntheta);

// The `count` modes of smallest |lambda|, with L2-normalized eigenfunctions.
std::vector<AngularMode> angular_eigenvalues(int k, int count, int ntheta);

}  // namespace rnprop

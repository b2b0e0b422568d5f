#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "rnprop/geometry.hpp"

namespace rnprop {

using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// One separated angular-momentum sector of the Dirac field.
struct Mode {
    double mass = 0.0;  // fermion mass
    double xi = 1.0;    // separation constant (angular eigenvalue)
    int k = 0, l = 0;   // bookkeeping only
    cplx omega{0.3, 0.0};

    Mode with_omega(cplx w) const {
        Mode m = *this;
        m.omega = w;
        return m;
    }
};

// First-order radial system, Delta dX/dr = V(r) X, for X = (X+, r_plus X-):
//   V = [[ i w (2r^2-Delta),   -|Delta|^(1/2) (i m r - xi) ],
//        [ eps(Delta) |Delta|^(1/2) (i m r + xi),   -i Delta w ]].
Mat2 radial_matrix(const RadialPoint& pt, const Mode& mode);

// dX/dr = V X / Delta. Throws AtHorizon when |Delta| < 1e-13 r^2.
Vec2 rhs_r(double r, const Vec2& X, const Mode& mode, const SpacetimeParams& p);

// dX/du = V X / r^2 (tortoise variable; smooth across the whole region).
Vec2 rhs_u(const RadialPoint& pt, const Vec2& X, const Mode& mode);

// Pointwise weight matrices:
//   A          = diag(1, -eps(Delta))                 conserved-flux weight
//   C          = diag(i (2r^2-Delta), -i Delta)       time-slicing weight
//   Gamma      = (r_plus/|Delta|) diag(2r^2-Delta, |Delta|)   scalar-product weight
struct WeightMatrices {
    Mat2 A, C, Gamma;
};
WeightMatrices weight_matrices(const RadialPoint& pt, const SpacetimeParams& p);

double sign_delta(double r, const SpacetimeParams& p);

// A 2-component radial solution sampled on a strictly monotone u-grid
// within a single region.
struct RadialSolution {
    Region region = Region::Exterior;
    cplx omega{0.0, 0.0};
    std::string branch;
    std::vector<double> u;
    std::vector<RadialPoint> pt;
    std::vector<Vec2> value;

    std::size_t size() const { return u.size(); }
};

// H_xi applied to gridded data on a uniform u-grid by 4th order finite
// differences: H X = C^{-1} (r^2 d/du + V_off) X with V_off the off-diagonal
// part of V. With check_support, data touching the grid ends raises
// SupportTouchesHorizon.
std::vector<Vec2> hamiltonian_apply(const std::vector<double>& u,
                                    const std::vector<RadialPoint>& pt,
                                    const std::vector<Vec2>& X,
                                    const Mode& mode,
                                    const SpacetimeParams& p,
                                    bool check_support = false);

}  // namespace rnprop

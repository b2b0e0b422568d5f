#pragma once

#include <vector>

#include "rnprop/radial_system.hpp"

namespace rnprop {

// Truncated power-series helpers (coefficient vectors, fixed length).
using CSeries = std::vector<cplx>;

CSeries series_mul(const CSeries& a, const CSeries& b);
CSeries series_recip(const CSeries& a);           // 1/a, a[0] != 0
CSeries series_sqrt_quadratic(double c1, double c2, int nterms);  // sqrt(1 + c1 x + c2 x^2)

// Formal large-r solution of dX/dr = A(1/r) X for the radial system:
//   X_j(r) = W (1 + sum_k P_k r^-k) e_j exp(q_j(r)),
//   q_j(r) = lambda_j r + nu_j ln r - sum_{k>=2} g_jk r^(1-k)/(k-1).
// Column 1 carries phase +i w1 (oscillatory "hat"), column 2 the conjugate
// branch ("check"). w1 follows sign(Re omega) for |omega| > m and has
// positive imaginary part in the mass gap.
class InfinitySeries {
  public:
    InfinitySeries(const Mode& mode, const SpacetimeParams& p, int nterms = 18);

    cplx w1() const { return w1_; }
    Mat2 mixer() const { return W_; }  // columns: asymptotic polarization vectors

    // Seed value of branch j (0 = hat, 1 = check) at radius r.
    Vec2 value(int branch, double r) const;

    // Exponent q_j(r) including the log and tail terms.
    cplx exponent(int branch, double r) const;

    // Magnitude of the last retained correction at radius r (truncation gauge).
    double residual_estimate(double r) const;

    // Smallest radius where residual_estimate <= tol (doubling search).
    double pick_start_radius(double tol, double r_floor) const;

  private:
    int K_;
    cplx w1_;
    Mat2 W_, Winv_;
    std::vector<Mat2> P_;    // P_0 = 1
    std::vector<Mat2> g_;    // g_0 = diag(lambda), g_1 = diag(nu), ...
};

// Frobenius solution near a horizon in rho = sqrt(|r - r_h|).
// Hat branch:   X = exp(2 i omega u(r)) * Y(rho),      Y(0) = (1,0)
// Check branch: X = Z(rho),                            Z(0) = (0,1)
class HorizonSeries {
  public:
    // horizon: the radius (r_minus or r_plus); side: +1 for r > r_h, -1 for r < r_h.
    HorizonSeries(const Mode& mode, const SpacetimeParams& p, double r_h, int side, int nterms = 24);

    // Seed value at displacement |r - r_h| = d (d > 0), given the tortoise map
    // of the region the side belongs to (for the exp(2 i omega u) factor).
    Vec2 value(int branch, double d, const TortoiseMap& map) const;

    double residual_estimate(double d) const;
    double horizon_radius() const { return rh_; }
    int side() const { return side_; }

  private:
    double rh_;
    int side_;
    cplx omega_;
    cplx kappa_;                 // Frobenius exponent of the oscillatory branch
    std::vector<Vec2> hatY_;     // coefficients of Y(rho)
    std::vector<Vec2> checkZ_;   // coefficients of Z(rho)
};

}  // namespace rnprop

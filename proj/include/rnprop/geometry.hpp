#pragma once

#include <array>
#include <cmath>

#include "rnprop/errors.hpp"

namespace rnprop {

// Charged spherically symmetric black-hole background in horizon-penetrating
// coordinates, with an inner reflecting boundary at r = r0 inside the Cauchy
// horizon. Geometric units, Delta(r) = r^2 - 2 M r + Q^2.
struct SpacetimeParams {
    double M = 1.0;   // mass
    double Q = 0.6;   // charge, 0 < Q < M
    double r0 = 0.0;  // inner boundary radius, r_min < r0 < r_minus

    void validate() const;
};

enum class Region { Interior, Between, Exterior };

const char* region_name(Region reg);

inline double delta(double r, const SpacetimeParams& p) {
    return r * r - 2.0 * p.M * r + p.Q * p.Q;
}

// (r_minus, r_plus), the Cauchy and event horizon radii.
std::array<double, 2> horizons(const SpacetimeParams& p);

// Zero of the metric coefficient g_rr: lower bound for admissible r0.
inline double r_min(const SpacetimeParams& p) {
    return std::sqrt(p.M * p.M + p.Q * p.Q) - p.M;
}

// A radial point carrying the horizon displacements alongside r itself, so
// that Delta can be formed without cancellation arbitrarily close to a
// horizon. dminus = r - r_minus, dplus = r - r_plus (signed).
struct RadialPoint {
    double r = 0.0;
    double dminus = 0.0;
    double dplus = 0.0;

    double delta() const { return dplus * dminus; }
    double abs_delta() const { return std::abs(dplus * dminus); }
    double sqrt_abs_delta() const { return std::sqrt(std::abs(dplus) * std::abs(dminus)); }
};

// Tortoise coordinate u on one of the three regions, du/dr = r^2/Delta.
// Closed form by partial fractions,
//   u(r) = r + Ap ln|r - r_plus| - Bm ln|r - r_minus| + C,
// with Ap = r_plus^2/(r_plus - r_minus), Bm = r_minus^2/(r_plus - r_minus).
// The integration constant is anchored per region:
//   Interior: u(r0) = 0, Between: u((r_minus+r_plus)/2) = 0, Exterior: u(2 r_plus) = 0.
class TortoiseMap {
  public:
    TortoiseMap(const SpacetimeParams& p, Region reg);

    Region region() const { return region_; }
    double rminus() const { return rm_; }
    double rplus() const { return rp_; }
    double r_lo() const { return r_lo_; }   // lower region endpoint (may be a horizon)
    double r_hi() const { return r_hi_; }   // upper region endpoint (or +inf)
    double sign_delta() const { return sign_delta_; }

    double u(double r) const;
    double u(const RadialPoint& pt) const;  // cancellation-free near horizons
    double du_dr(double r) const;

    // Inverse map; unique by monotonicity of u on the region.
    RadialPoint invert(double u) const;

    RadialPoint point(double r) const;  // RadialPoint from a plain radius

  private:
    double u_raw(double r) const;

    SpacetimeParams par_;
    Region region_;
    double rm_ = 0.0, rp_ = 0.0;
    double Ap_ = 0.0, Bm_ = 0.0;
    double C_ = 0.0;
    double r_lo_ = 0.0, r_hi_ = 0.0;
    double sign_delta_ = 1.0;
};

// Region containing r; throws OutsideRegion for r <= r0 or r on a horizon.
Region classify_region(double r, const SpacetimeParams& p);

}  // namespace rnprop

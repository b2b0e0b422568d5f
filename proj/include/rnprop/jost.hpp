#pragma once

#include <optional>

#include "rnprop/geometry.hpp"
#include "rnprop/radial_system.hpp"
#include "rnprop/series.hpp"

namespace rnprop {

// Asymptotic phases of the radial solutions near spatial infinity,
//   Phi+- (u) = w1 u + M (+-2 omega + m^2/w1) ln u,
// and the mixing angle Theta = (1/4) ln((omega - m)/(omega + m)).
struct AsymptoticPhase {
    cplx w1;
    cplx theta;
    double Mmass;  // black-hole mass entering the log coefficients
    cplx omega;
    double fermion_mass;

    cplx phi_plus(double u) const;
    cplx phi_minus(double u) const;
};

AsymptoticPhase asymptotic_phase(const Mode& mode, const SpacetimeParams& p);

enum class JostLocation { Infinity, EventHorizon, CauchyHorizon, Boundary };
enum class JostKind { Hat, Check };  // oscillatory / constant-type branch
enum class Side { Inner, Outer };    // relative to the horizon radius

struct JostBranch {
    JostLocation location = JostLocation::Infinity;
    JostKind kind = JostKind::Hat;
};

struct JostSolution {
    JostBranch branch;
    RadialSolution solution;
    Vec2 amplitude{1.0, 0.0};  // (hat, check) amplitudes at the anchor end
    double start_u = 0.0;
    double seed_residual = 0.0;  // series truncation estimate at the seed point
};

// Throws InadmissibleBranch for (location, kind, sign Im omega) combinations
// that do not define a Jost solution off the real axis.
void check_admissible(JostLocation loc, JostKind kind, cplx omega, double mass);

// Adaptive Dormand-Prince integration of the radial system in the tortoise
// variable, sampling the solution at the requested u values. `samples` must be
// monotone in the direction of integration (u_from -> u_to).
RadialSolution integrate_mode(const SpacetimeParams& p, const Mode& mode, Region region,
                              double u_from, double u_to, const Vec2& X_from,
                              const std::vector<double>& samples,
                              double rtol = 1e-11, double atol = 1e-14);

// Jost solution at spatial infinity, integrated inward over the samples.
// u_start <= 0 requests the automatic (truncation-controlled) start point;
// the doubling test of the construction reruns with 2 u_start.
JostSolution jost_infinity(const SpacetimeParams& p, const Mode& mode, JostKind kind,
                           const std::vector<double>& samples, double u_start = 0.0);

// Jost solution anchored at a horizon on a given side, integrated away from it.
JostSolution jost_horizon(const SpacetimeParams& p, const Mode& mode, JostLocation horizon,
                          Side side, JostKind kind, const std::vector<double>& samples,
                          double u_start = 0.0, bool enforce_admissibility = true);

// Solution launched from the reflecting boundary value (1, sqrt|Delta(r0)|/r_plus) at r0.
JostSolution jost_boundary(const SpacetimeParams& p, const Mode& mode,
                           const std::vector<double>& samples);

// Hat/check amplitudes of X at the sample index i, by a pointwise 2x2 solve
// against a horizon pair evaluated at the same u.
Vec2 connection_coefficients(const Vec2& X, const Vec2& hat, const Vec2& check);

// Extend a solution across a horizon: extract its near-horizon amplitudes on
// the source side and rebuild the matching combination on the far side.
// drop_hat discards the oscillatory amplitude (the half-plane cases where that
// branch is not admissible across the horizon).
JostSolution extend_across(const SpacetimeParams& p, const Mode& mode, const JostSolution& sol,
                           JostLocation horizon, const std::vector<double>& far_samples,
                           bool drop_hat = false);

// Region adjacent to a horizon on the given side.
Region horizon_region(JostLocation horizon, Side side);

// u at which near-horizon data is imposed (deep end of the region).
double default_horizon_anchor_u(JostLocation horizon);

}  // namespace rnprop

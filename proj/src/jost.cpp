#include "rnprop/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rnprop {

cplx AsymptoticPhase::phi_plus(double u) const {
    if (!(u > 1.0)) throw OutsideRegion("phi_plus: defined for u > 1");
    return w1 * u + Mmass * (2.0 * omega + fermion_mass * fermion_mass / w1) * std::log(u);
}

cplx AsymptoticPhase::phi_minus(double u) const {
    if (!(u > 1.0)) throw OutsideRegion("phi_minus: defined for u > 1");
    return w1 * u + Mmass * (-2.0 * omega + fermion_mass * fermion_mass / w1) * std::log(u);
}

AsymptoticPhase asymptotic_phase(const Mode& mode, const SpacetimeParams& p) {
    AsymptoticPhase ap;
    ap.omega = mode.omega;
    ap.fermion_mass = mode.mass;
    ap.Mmass = p.M;
    const cplx w2 = mode.omega * mode.omega - mode.mass * mode.mass;
    if (std::abs(w2) < 1e-24 * (std::norm(mode.omega) + mode.mass * mode.mass + 1e-300))
        throw OnThresholds("asymptotic_phase: omega = +-m");
    cplx wp = std::sqrt(w2);
    if (std::abs(wp.real()) >= std::abs(wp.imag()))
        ap.w1 = (mode.omega.real() >= 0.0) ? wp : -wp;
    else
        ap.w1 = (wp.imag() >= 0.0) ? wp : -wp;
    ap.theta = 0.25 * std::log((mode.omega - mode.mass) / (mode.omega + mode.mass));
    return ap;
}

void check_admissible(JostLocation loc, JostKind kind, cplx omega, double /*mass*/) {
    const double im = omega.imag();
    if (im == 0.0) return;  // on the real axis every branch is a limit of admissible ones
    if (kind == JostKind::Check) return;
    if (loc == JostLocation::EventHorizon && im > 0.0)
        throw InadmissibleBranch("hat branch at the event horizon requires Im(omega) <= 0");
    if (loc == JostLocation::CauchyHorizon && im < 0.0)
        throw InadmissibleBranch("hat branch at the Cauchy horizon requires Im(omega) >= 0");
}

Region horizon_region(JostLocation horizon, Side side) {
    if (horizon == JostLocation::EventHorizon)
        return side == Side::Outer ? Region::Exterior : Region::Between;
    if (horizon == JostLocation::CauchyHorizon)
        return side == Side::Outer ? Region::Between : Region::Interior;
    throw ConfigInvalid("horizon_region: not a horizon location");
}

double default_horizon_anchor_u(JostLocation horizon) {
    return horizon == JostLocation::EventHorizon ? -46.0 : 46.0;
}

namespace {

// Dormand-Prince 5(4) with PI-free elementary step control. Deterministic:
// fixed coefficients, no wall-clock or threading dependence.
template <class RHS>
void dopri5(RHS rhs, double u0, double u1, Vec2& X, const std::vector<double>& samples,
            std::vector<Vec2>& out, double rtol, double atol, double hmax) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double dir = (u1 >= u0) ? 1.0 : -1.0;
    double u = u0;
    double h = dir * std::min(hmax, 0.1);
    Vec2 k1 = rhs(u, X);
    std::size_t isamp = 0;
    out.assign(samples.size(), Vec2::Zero());

    long steps = 0;
    const long max_steps = 4000000;
    while (dir * (u1 - u) > 0.0 || isamp < samples.size()) {
        double target = u1;
        if (isamp < samples.size()) target = samples[isamp];
        if (dir * (target - u) <= 1e-14 * (1.0 + std::abs(u))) {
            // sample point (numerically) reached
            if (isamp < samples.size()) {
                out[isamp++] = X;
                continue;
            }
            break;
        }
        if (std::abs(h) > dir * (target - u)) h = dir * (target - u) * dir;
        if (++steps > max_steps) throw NonConvergent("dopri5: step limit exceeded");

        const Vec2 k2 = rhs(u + c2 * h, X + h * (a21 * k1));
        const Vec2 k3 = rhs(u + c3 * h, X + h * (a31 * k1 + a32 * k2));
        const Vec2 k4 = rhs(u + c4 * h, X + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec2 k5 = rhs(u + c5 * h, X + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec2 k6 = rhs(u + h, X + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec2 X5 = X + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec2 k7 = rhs(u + h, X5);
        const Vec2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double enorm = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc = atol + rtol * std::max(std::abs(X[i]), std::abs(X5[i]));
            enorm = std::max(enorm, std::abs(err[i]) / sc);
        }
        if (enorm <= 1.0) {
            u += h;
            X = X5;
            k1 = k7;  // FSAL
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(enorm, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > hmax) h = dir * hmax;
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(u))) throw NonConvergent("dopri5: step underflow");
    }
}

}  // namespace

RadialSolution integrate_mode(const SpacetimeParams& p, const Mode& mode, Region region,
                              double u_from, double u_to, const Vec2& X_from,
                              const std::vector<double>& samples, double rtol, double atol) {
    const TortoiseMap map(p, region);
    const double dir = (u_to >= u_from) ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (dir * (samples[i + 1] - samples[i]) <= 0.0)
            throw GridMismatch("integrate_mode: samples not monotone along the integration direction");
    if (!samples.empty() &&
        (dir * (samples.front() - u_from) < -1e-12 || dir * (u_to - samples.back()) < -1e-12))
        throw GridMismatch("integrate_mode: samples outside [u_from, u_to]");

    auto rhs = [&](double u, const Vec2& X) -> Vec2 {
        const RadialPoint pt = map.invert(u);
        return rhs_u(pt, X, mode);
    };

    double w1mag = std::abs(mode.omega);
    try {
        w1mag = std::abs(asymptotic_phase(mode, p).w1);
    } catch (const OnThresholds&) {
    }
    const double rate = std::max({2.0 * std::abs(mode.omega), w1mag, 0.05});
    const double hmax = std::min(2.0 * std::numbers::pi / (4.0 * rate), 4.0);

    Vec2 X = X_from;
    std::vector<Vec2> vals;
    dopri5(rhs, u_from, u_to, X, samples, vals, rtol, atol, hmax);

    RadialSolution sol;
    sol.region = region;
    sol.omega = mode.omega;
    sol.u = samples;
    sol.value = std::move(vals);
    sol.pt.reserve(samples.size());
    for (double u : samples) sol.pt.push_back(map.invert(u));
    if (dir < 0.0) {  // store ascending in u
        std::reverse(sol.u.begin(), sol.u.end());
        std::reverse(sol.pt.begin(), sol.pt.end());
        std::reverse(sol.value.begin(), sol.value.end());
    }
    return sol;
}

JostSolution jost_infinity(const SpacetimeParams& p, const Mode& mode, JostKind kind,
                           const std::vector<double>& samples, double u_start) {
    const TortoiseMap map(p, Region::Exterior);
    const InfinitySeries ser(mode, p);
    double r_start;
    if (u_start > 0.0) {
        r_start = map.invert(u_start).r;
        if (ser.residual_estimate(r_start) > 1e-6)
            throw StartTooSmall("jost_infinity: truncation residual too large at the requested start");
    } else {
        const double floor_r =
            10.0 * std::max({1.0, p.M, 1.0 / std::max(std::abs(ser.w1()), 1e-6)});
        r_start = ser.pick_start_radius(1e-13, std::max(floor_r, 40.0));
        u_start = map.u(r_start);
    }
    const int branch = (kind == JostKind::Hat) ? 0 : 1;
    const Vec2 X0 = ser.value(branch, r_start);

    std::vector<double> desc(samples);
    std::sort(desc.begin(), desc.end(), std::greater<>());
    if (!desc.empty() && desc.front() > u_start)
        throw GridMismatch("jost_infinity: samples extend beyond the start point");

    JostSolution js;
    js.branch = {JostLocation::Infinity, kind};
    js.start_u = u_start;
    js.seed_residual = ser.residual_estimate(r_start);
    js.amplitude = (kind == JostKind::Hat) ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
    const double u_end = desc.empty() ? u_start - 1.0 : desc.back();
    js.solution = integrate_mode(p, mode, Region::Exterior, u_start, u_end, X0, desc);
    js.solution.branch = (kind == JostKind::Hat) ? "J_inf_hat" : "J_inf_check";
    return js;
}

JostSolution jost_horizon(const SpacetimeParams& p, const Mode& mode, JostLocation horizon,
                          Side side, JostKind kind, const std::vector<double>& samples,
                          double u_start, bool enforce_admissibility) {
    if (horizon != JostLocation::EventHorizon && horizon != JostLocation::CauchyHorizon)
        throw ConfigInvalid("jost_horizon: location must be a horizon");
    if (std::abs(mode.omega) < 1e-12) throw OmegaZero("jost_horizon: omega = 0");
    if (enforce_admissibility) check_admissible(horizon, kind, mode.omega, mode.mass);

    const Region region = horizon_region(horizon, side);
    const TortoiseMap map(p, region);
    auto [rm, rp] = horizons(p);
    const double r_h = (horizon == JostLocation::EventHorizon) ? rp : rm;
    const int sgn_side = (side == Side::Outer) ? +1 : -1;
    if (u_start == 0.0) u_start = default_horizon_anchor_u(horizon);
    const double expected_sign = (horizon == JostLocation::EventHorizon) ? -1.0 : +1.0;
    if (u_start * expected_sign <= 0.0)
        throw ConfigInvalid("jost_horizon: u_start on the wrong side of the region");

    const HorizonSeries hser(mode, p, r_h, sgn_side);
    const RadialPoint anchor = map.invert(u_start);
    const double d = (horizon == JostLocation::EventHorizon) ? std::abs(anchor.dplus) : std::abs(anchor.dminus);
    if (hser.residual_estimate(d) > 1e-8)
        throw StartTooSmall("jost_horizon: series residual too large at the requested anchor");
    const int branch = (kind == JostKind::Hat) ? 0 : 1;
    const Vec2 X0 = hser.value(branch, d, map);

    // integrate away from the horizon
    const double away = -expected_sign;  // +1 away from event horizon, -1 away from Cauchy horizon
    std::vector<double> ordered(samples);
    if (away > 0)
        std::sort(ordered.begin(), ordered.end());
    else
        std::sort(ordered.begin(), ordered.end(), std::greater<>());
    if (!ordered.empty() && away * (ordered.front() - u_start) < 0.0)
        throw GridMismatch("jost_horizon: samples on the horizon side of the anchor");

    JostSolution js;
    js.branch = {horizon, kind};
    js.start_u = u_start;
    js.seed_residual = hser.residual_estimate(d);
    js.amplitude = (kind == JostKind::Hat) ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
    const double u_end = ordered.empty() ? u_start + away : ordered.back();
    js.solution = integrate_mode(p, mode, region, u_start, u_end, X0, ordered);
    js.solution.branch = std::string(horizon == JostLocation::EventHorizon ? "J_event_" : "J_cauchy_") +
                         (kind == JostKind::Hat ? "hat" : "check") +
                         (side == Side::Outer ? "_outer" : "_inner");
    return js;
}

JostSolution jost_boundary(const SpacetimeParams& p, const Mode& mode,
                           const std::vector<double>& samples) {
    p.validate();
    auto [rm, rp] = horizons(p);
    (void)rm;
    const double D0 = delta(p.r0, p);
    const Vec2 X0(1.0, std::sqrt(std::abs(D0)) / rp);

    std::vector<double> ordered(samples);
    std::sort(ordered.begin(), ordered.end());
    if (!ordered.empty() && ordered.front() < 0.0)
        throw GridMismatch("jost_boundary: interior samples start at u(r0) = 0");

    JostSolution js;
    js.branch = {JostLocation::Boundary, JostKind::Check};
    js.start_u = 0.0;
    js.seed_residual = 0.0;
    js.amplitude = X0;
    const double u_end = ordered.empty() ? 1.0 : ordered.back();
    js.solution = integrate_mode(p, mode, Region::Interior, 0.0, u_end, X0, ordered);
    js.solution.branch = "J_boundary";
    return js;
}

Vec2 connection_coefficients(const Vec2& X, const Vec2& hat, const Vec2& check) {
    Mat2 B;
    B.col(0) = hat;
    B.col(1) = check;
    const cplx det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    if (std::abs(det) < 1e-13 * hat.norm() * check.norm())
        throw AmplitudeExtractionFailed("connection_coefficients: horizon basis numerically degenerate");
    return B.inverse() * X;
}

JostSolution extend_across(const SpacetimeParams& p, const Mode& mode, const JostSolution& sol,
                           JostLocation horizon, const std::vector<double>& far_samples,
                           bool drop_hat) {
    const Region src_region = sol.solution.region;
    const auto [rm, rp] = horizons(p);
    const double r_h = (horizon == JostLocation::EventHorizon) ? rp : rm;
    Side src_side;
    if (src_region == horizon_region(horizon, Side::Outer))
        src_side = Side::Outer;
    else if (src_region == horizon_region(horizon, Side::Inner))
        src_side = Side::Inner;
    else
        throw ConfigInvalid("extend_across: solution region not adjacent to the horizon");
    const Side far_side = (src_side == Side::Outer) ? Side::Inner : Side::Outer;
    const Region far_region = horizon_region(horizon, far_side);

    // Amplitudes on the source side: pointwise solve against the horizon pair
    // at the deepest stored sample toward the horizon.
    const TortoiseMap src_map(p, src_region);
    const bool deep_is_front = (horizon == JostLocation::EventHorizon);  // u -> -inf at the event horizon
    const std::size_t idx = deep_is_front ? 0 : sol.solution.size() - 1;
    const double u_match = sol.solution.u[idx];
    const HorizonSeries src_ser(mode, p, r_h, src_side == Side::Outer ? +1 : -1);
    const RadialPoint pm = sol.solution.pt[idx];
    const double dsrc =
        (horizon == JostLocation::EventHorizon) ? std::abs(pm.dplus) : std::abs(pm.dminus);
    const Vec2 hat_v = src_ser.value(0, dsrc, src_map);
    const Vec2 check_v = src_ser.value(1, dsrc, src_map);
    Vec2 amps = connection_coefficients(sol.solution.value[idx], hat_v, check_v);
    if (drop_hat) amps[0] = 0.0;

    // Far side: same amplitudes with respect to the far-side pair.
    const TortoiseMap far_map(p, far_region);
    const HorizonSeries far_ser(mode, p, r_h, far_side == Side::Outer ? +1 : -1);
    const double u_far0 = default_horizon_anchor_u(horizon);
    const RadialPoint pf = far_map.invert(u_far0);
    const double dfar =
        (horizon == JostLocation::EventHorizon) ? std::abs(pf.dplus) : std::abs(pf.dminus);
    const Vec2 X0 = amps[0] * far_ser.value(0, dfar, far_map) + amps[1] * far_ser.value(1, dfar, far_map);

    const double away = (horizon == JostLocation::EventHorizon) ? +1.0 : -1.0;
    std::vector<double> ordered(far_samples);
    if (away > 0)
        std::sort(ordered.begin(), ordered.end());
    else
        std::sort(ordered.begin(), ordered.end(), std::greater<>());

    JostSolution js;
    js.branch = sol.branch;
    js.start_u = u_match;
    js.seed_residual = far_ser.residual_estimate(dfar);
    js.amplitude = amps;
    const double u_end = ordered.empty() ? u_far0 + away : ordered.back();
    js.solution = integrate_mode(p, mode, far_region, u_far0, u_end, X0, ordered);
    js.solution.branch = sol.solution.branch + "_extended";
    return js;
}

}  // namespace rnprop

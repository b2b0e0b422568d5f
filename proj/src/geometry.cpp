#include "rnprop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rnprop {

const char* region_name(Region reg) {
    switch (reg) {
        case Region::Interior: return "interior";
        case Region::Between: return "between";
        case Region::Exterior: return "exterior";
    }
    return "?";
}

void SpacetimeParams::validate() const {
    if (!(M > 0.0)) throw ConfigInvalid("spacetime: M must be positive");
    if (!(Q > 0.0)) throw ConfigInvalid("spacetime: Q must be positive (Q=0 collapses the interior region)");
    if (!(Q < M)) throw ExtremalOrNaked("spacetime: need Q < M (non-extremal)");
    const double rm = M - std::sqrt(M * M - Q * Q);
    const double lo = std::sqrt(M * M + Q * Q) - M;
    if (!(r0 > lo && r0 < rm)) {
        std::ostringstream os;
        os << "spacetime: r0=" << r0 << " outside admissible range (" << lo << ", " << rm << ")";
        throw ConfigInvalid(os.str());
    }
}

std::array<double, 2> horizons(const SpacetimeParams& p) {
    if (!(p.Q > 0.0 && p.Q < p.M)) throw ExtremalOrNaked("horizons: need 0 < Q < M");
    const double s = std::sqrt(p.M * p.M - p.Q * p.Q);
    return {p.M - s, p.M + s};
}

Region classify_region(double r, const SpacetimeParams& p) {
    auto [rm, rp] = horizons(p);
    if (r > rp) return Region::Exterior;
    if (r > rm && r < rp) return Region::Between;
    if (r > p.r0 && r < rm) return Region::Interior;
    throw OutsideRegion("classify_region: r not strictly inside any region");
}

TortoiseMap::TortoiseMap(const SpacetimeParams& p, Region reg) : par_(p), region_(reg) {
    auto [rm, rp] = horizons(p);
    rm_ = rm;
    rp_ = rp;
    Ap_ = rp * rp / (rp - rm);
    Bm_ = rm * rm / (rp - rm);
    switch (reg) {
        case Region::Interior:
            r_lo_ = p.r0;
            r_hi_ = rm;
            sign_delta_ = 1.0;
            C_ = -u_raw(p.r0);
            break;
        case Region::Between:
            r_lo_ = rm;
            r_hi_ = rp;
            sign_delta_ = -1.0;
            C_ = -u_raw(0.5 * (rm + rp));
            break;
        case Region::Exterior:
            r_lo_ = rp;
            r_hi_ = std::numeric_limits<double>::infinity();
            sign_delta_ = 1.0;
            C_ = -u_raw(2.0 * rp);
            break;
    }
}

double TortoiseMap::u_raw(double r) const {
    return r + Ap_ * std::log(std::abs(r - rp_)) - Bm_ * std::log(std::abs(r - rm_));
}

double TortoiseMap::u(double r) const {
    const bool ok = (region_ == Region::Interior) ? (r >= r_lo_ && r < r_hi_) : (r > r_lo_ && r < r_hi_);
    if (!ok) throw OutsideRegion("tortoise_u: r outside region");
    return u_raw(r) + C_;
}

double TortoiseMap::u(const RadialPoint& pt) const {
    return pt.r + Ap_ * std::log(std::abs(pt.dplus)) - Bm_ * std::log(std::abs(pt.dminus)) + C_;
}

double TortoiseMap::du_dr(double r) const {
    return r * r / delta(r, par_);
}

RadialPoint TortoiseMap::point(double r) const {
    const bool ok = (region_ == Region::Interior) ? (r >= r_lo_ && r < r_hi_) : (r > r_lo_ && r < r_hi_);
    if (!ok) throw OutsideRegion("tortoise point: r outside region");
    RadialPoint pt;
    pt.r = r;
    pt.dminus = r - rm_;
    pt.dplus = r - rp_;
    return pt;
}

namespace {

// Newton iteration on a scalar function with derivative, bisection-safeguarded.
template <typename F, typename DF>
double newton_safe(F f, DF df, double x, double lo, double hi, double tol, int maxit) {
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) throw NoConvergence("invert_tortoise: bracketing failed");
    for (int it = 0; it < maxit; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
        } else {
            hi = x;
        }
        const double d = df(x);
        double xn = x - fx / d;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= tol * (1.0 + std::abs(x))) return xn;
        x = xn;
    }
    throw NoConvergence("invert_tortoise: Newton did not converge");
}

}  // namespace

RadialPoint TortoiseMap::invert(double uval) const {
    RadialPoint pt;
    const double tol = 1e-15;

    // Near a horizon the displacement decays exponentially in u; solve for the
    // log of the displacement there to dodge cancellation. Otherwise solve in r.
    switch (region_) {
        case Region::Exterior: {
            // u increasing; r -> r_plus as u -> -inf, r ~ u as u -> +inf.
            const double u_mid_lo = u(rp_ + 0.05 * (rp_ - rm_));
            if (uval <= u_mid_lo) {
                // x = ln(r - r_plus)
                auto f = [&](double x) {
                    const double d = std::exp(x);
                    return (rp_ + d) + Ap_ * x - Bm_ * std::log(rp_ - rm_ + d) + C_ - uval;
                };
                auto df = [&](double x) {
                    const double d = std::exp(x);
                    return d + Ap_ - Bm_ * d / (rp_ - rm_ + d);
                };
                const double x0 = (uval - rp_ + Bm_ * std::log(rp_ - rm_) - C_) / Ap_;
                const double x = newton_safe(f, df, x0, x0 - 30.0, std::log(0.1 * (rp_ - rm_)), tol, 200);
                pt.dplus = std::exp(x);
                pt.r = rp_ + pt.dplus;
                pt.dminus = (rp_ - rm_) + pt.dplus;
                return pt;
            }
            auto f = [&](double r) { return u(r) - uval; };
            auto df = [&](double r) { return du_dr(r); };
            double hi = std::max(2.0 * rp_, uval) + 10.0 * (1.0 + Ap_ + Bm_);
            while (u(hi) < uval) hi *= 2.0;
            const double r = newton_safe(f, df, std::clamp(uval, rp_ + 0.05 * (rp_ - rm_), hi), rp_ + 0.04 * (rp_ - rm_), hi, tol, 200);
            return point(r);
        }
        case Region::Between: {
            // u decreasing in r: +inf at r_minus, -inf at r_plus.
            const double w = rp_ - rm_;
            const double u_lo = u(rm_ + 0.9 * w);   // very negative side
            const double u_hi = u(rm_ + 0.1 * w);   // very positive side
            if (uval <= u_lo) {
                // x = ln(r_plus - r)
                auto f = [&](double x) {
                    const double d = std::exp(x);
                    return (rp_ - d) + Ap_ * x - Bm_ * std::log(w - d) + C_ - uval;
                };
                auto df = [&](double x) {
                    const double d = std::exp(x);
                    return -d + Ap_ + Bm_ * d / (w - d);
                };
                const double x0 = (uval - rp_ + Bm_ * std::log(w) - C_) / Ap_;
                const double x = newton_safe(f, df, x0, x0 - 30.0, std::log(0.5 * w), tol, 200);
                const double d = std::exp(x);
                pt.r = rp_ - d;
                pt.dplus = -d;
                pt.dminus = w - d;
                return pt;
            }
            if (uval >= u_hi) {
                // x = ln(r - r_minus)
                auto f = [&](double x) {
                    const double d = std::exp(x);
                    return (rm_ + d) + Ap_ * std::log(w - d) - Bm_ * x + C_ - uval;
                };
                auto df = [&](double x) {
                    const double d = std::exp(x);
                    return d - Ap_ * d / (w - d) - Bm_;
                };
                const double x0 = -(uval - rm_ - Ap_ * std::log(w) - C_) / Bm_;
                const double x = newton_safe(f, df, x0, x0 - 30.0, std::log(0.5 * w), tol, 200);
                const double d = std::exp(x);
                pt.r = rm_ + d;
                pt.dminus = d;
                pt.dplus = d - w;
                return pt;
            }
            auto f = [&](double r) { return u(r) - uval; };
            auto df = [&](double r) { return du_dr(r); };
            const double r = newton_safe(f, df, rm_ + 0.5 * w, rm_ + 0.05 * w, rm_ + 0.95 * w, tol, 200);
            return point(r);
        }
        case Region::Interior: {
            // u increasing; finite u(r0) = 0 at the boundary, +inf at r_minus.
            const double w = rm_ - par_.r0;
            const double u_hi = u(rm_ - 0.1 * w);
            if (uval >= u_hi) {
                // x = ln(r_minus - r)
                auto f = [&](double x) {
                    const double d = std::exp(x);
                    return (rm_ - d) + Ap_ * std::log(rp_ - rm_ + d) - Bm_ * x + C_ - uval;
                };
                auto df = [&](double x) {
                    const double d = std::exp(x);
                    return -d + Ap_ * d / (rp_ - rm_ + d) - Bm_;
                };
                const double x0 = -(uval - rm_ - Ap_ * std::log(rp_ - rm_) - C_) / Bm_;
                const double x = newton_safe(f, df, x0, x0 - 30.0, std::log(0.5 * w), tol, 200);
                const double d = std::exp(x);
                pt.r = rm_ - d;
                pt.dminus = -d;
                pt.dplus = (rm_ - rp_) - d;
                return pt;
            }
            if (uval < u(par_.r0 + 1e-14 * w)) throw OutsideRegion("invert_tortoise: u below u(r0) on interior region");
            auto f = [&](double r) { return u(r) - uval; };
            auto df = [&](double r) { return du_dr(r); };
            const double r = newton_safe(f, df, par_.r0 + 0.5 * w, par_.r0 + 1e-14 * w, rm_ - 0.05 * w, tol, 200);
            return point(r);
        }
    }
    throw NoConvergence("invert_tortoise: unreachable");
}

}  // namespace rnprop

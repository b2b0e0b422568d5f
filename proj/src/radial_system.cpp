#include "rnprop/radial_system.hpp"

#include <cmath>

namespace rnprop {

double sign_delta(double r, const SpacetimeParams& p) {
    return delta(r, p) >= 0.0 ? 1.0 : -1.0;
}

Mat2 radial_matrix(const RadialPoint& pt, const Mode& mode) {
    const double r = pt.r;
    const double Delta = pt.delta();
    const double s = pt.sqrt_abs_delta();
    const double eps = (Delta >= 0.0) ? 1.0 : -1.0;
    const cplx w = mode.omega;
    const cplx imr_minus_xi = I * mode.mass * r - mode.xi;
    const cplx imr_plus_xi = I * mode.mass * r + mode.xi;

    Mat2 V;
    V(0, 0) = I * w * (2.0 * r * r - Delta);
    V(0, 1) = -s * imr_minus_xi;
    V(1, 0) = eps * s * imr_plus_xi;
    V(1, 1) = -I * Delta * w;
    return V;
}

Vec2 rhs_r(double r, const Vec2& X, const Mode& mode, const SpacetimeParams& p) {
    const double Delta = delta(r, p);
    if (std::abs(Delta) < 1e-13 * r * r) throw AtHorizon("rhs_r: evaluation too close to a horizon");
    RadialPoint pt;
    pt.r = r;
    auto [rm, rp] = horizons(p);
    pt.dminus = r - rm;
    pt.dplus = r - rp;
    return radial_matrix(pt, mode) * X / Delta;
}

Vec2 rhs_u(const RadialPoint& pt, const Vec2& X, const Mode& mode) {
    return radial_matrix(pt, mode) * X / (pt.r * pt.r);
}

WeightMatrices weight_matrices(const RadialPoint& pt, const SpacetimeParams& p) {
    auto [rm, rp] = horizons(p);
    (void)rm;
    const double r = pt.r;
    const double Delta = pt.delta();
    const double absD = pt.abs_delta();
    const double eps = (Delta >= 0.0) ? 1.0 : -1.0;
    WeightMatrices wm;
    wm.A = Mat2::Zero();
    wm.A(0, 0) = 1.0;
    wm.A(1, 1) = -eps;
    wm.C = Mat2::Zero();
    wm.C(0, 0) = I * (2.0 * r * r - Delta);
    wm.C(1, 1) = -I * Delta;
    wm.Gamma = Mat2::Zero();
    wm.Gamma(0, 0) = rp * (2.0 * r * r - Delta) / absD;
    wm.Gamma(1, 1) = rp;
    return wm;
}

std::vector<Vec2> hamiltonian_apply(const std::vector<double>& u,
                                    const std::vector<RadialPoint>& pt,
                                    const std::vector<Vec2>& X,
                                    const Mode& mode,
                                    const SpacetimeParams& p,
                                    bool check_support) {
    const int n = static_cast<int>(u.size());
    if (n < 7 || pt.size() != u.size() || X.size() != u.size())
        throw GridMismatch("hamiltonian_apply: inconsistent grid");
    const double h = u[1] - u[0];
    for (int i = 1; i < n; ++i)
        if (std::abs((u[i] - u[i - 1]) - h) > 1e-9 * std::abs(h))
            throw GridMismatch("hamiltonian_apply: u-grid must be uniform");

    if (check_support) {
        double mx = 0.0;
        for (const auto& v : X) mx = std::max(mx, v.norm());
        for (int i = 0; i < 4; ++i)
            if (X[i].norm() > 1e-10 * mx || X[n - 1 - i].norm() > 1e-10 * mx)
                throw SupportTouchesHorizon("hamiltonian_apply: data reaches the grid edge");
    }

    // 4th order first derivative, centered inside, one-sided at the ends.
    std::vector<Vec2> dX(n);
    auto at = [&](int i) -> const Vec2& { return X[i]; };
    for (int i = 0; i < n; ++i) {
        Vec2 d;
        if (i >= 2 && i < n - 2) {
            d = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
        } else if (i < 2) {
            d = (-25.0 * at(i) + 48.0 * at(i + 1) - 36.0 * at(i + 2) + 16.0 * at(i + 3) - 3.0 * at(i + 4)) / (12.0 * h);
        } else {
            d = (25.0 * at(i) - 48.0 * at(i - 1) + 36.0 * at(i - 2) - 16.0 * at(i - 3) + 3.0 * at(i - 4)) / (12.0 * h);
        }
        dX[i] = d;
    }

    std::vector<Vec2> out(n);
    for (int i = 0; i < n; ++i) {
        const double r = pt[i].r;
        const double Delta = pt[i].delta();
        const double s = pt[i].sqrt_abs_delta();
        const double eps = (Delta >= 0.0) ? 1.0 : -1.0;
        Vec2 rhs = r * r * dX[i];
        rhs[0] += s * (I * mode.mass * r - mode.xi) * X[i][1];
        rhs[1] += -eps * s * (I * mode.mass * r + mode.xi) * X[i][0];
        // C^{-1} = diag(-i/(2r^2-Delta), i/Delta)
        out[i][0] = -I * rhs[0] / (2.0 * r * r - Delta);
        out[i][1] = I * rhs[1] / Delta;
    }
    (void)p;
    return out;
}

}  // namespace rnprop

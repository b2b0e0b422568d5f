#include "rnprop/series.hpp"

#include <cmath>

namespace rnprop {

CSeries series_mul(const CSeries& a, const CSeries& b) {
    const int n = static_cast<int>(a.size());
    CSeries c(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + i < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

CSeries series_recip(const CSeries& a) {
    const int n = static_cast<int>(a.size());
    CSeries r(n, 0.0);
    r[0] = 1.0 / a[0];
    for (int k = 1; k < n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

CSeries series_sqrt_quadratic(double c1, double c2, int nterms) {
    // sqrt(q) with q = 1 + c1 x + c2 x^2, via s_k = (q_k - sum_{j=1}^{k-1} s_j s_{k-j}) / 2.
    CSeries s(nterms, 0.0);
    s[0] = 1.0;
    for (int k = 1; k < nterms; ++k) {
        cplx q = 0.0;
        if (k == 1) q = c1;
        if (k == 2) q = c2;
        cplx acc = 0.0;
        for (int j = 1; j < k; ++j) acc += s[j] * s[k - j];
        s[k] = (q - acc) / 2.0;
    }
    return s;
}

namespace {

cplx pick_w1(cplx omega, double m) {
    const cplx wp = std::sqrt(omega * omega - m * m);
    if (std::abs(wp) * std::abs(wp) < 1e-24 * (std::norm(omega) + m * m + 1e-300))
        throw OnThresholds("asymptotic phase: omega on the mass shell");
    if (std::abs(wp.real()) >= std::abs(wp.imag()))
        return (omega.real() >= 0.0) ? wp : -wp;
    return (wp.imag() >= 0.0) ? wp : -wp;
}

}  // namespace

InfinitySeries::InfinitySeries(const Mode& mode, const SpacetimeParams& p, int nterms) : K_(nterms) {
    const cplx w = mode.omega;
    const double m = mode.mass;
    if (std::abs(w) < 1e-14) throw OmegaZero("InfinitySeries: omega = 0");
    w1_ = pick_w1(w, m);

    const cplx opw = w + w1_;
    const cplx c = std::sqrt(opw / (2.0 * w1_));
    const cplx s = (m == 0.0) ? cplx(0.0) : m / std::sqrt(2.0 * w1_ * opw);
    W_ << c, s, s, c;
    Winv_ << c, -s, -s, c;  // det W = 1

    // Coefficient matrix A(x), x = 1/r:
    //   A11 = i w (2/q - 1), A12 = -(i m - xi x)/sigma, A21 = (i m + xi x)/sigma,
    //   A22 = -i w, with q = 1 - 2 M x + Q^2 x^2 and sigma = sqrt(q).
    const int K = K_;
    CSeries q(K + 1, 0.0);
    q[0] = 1.0;
    q[1] = -2.0 * p.M;
    q[2] = p.Q * p.Q;
    const CSeries qinv = series_recip(q);
    const CSeries sig = series_sqrt_quadratic(-2.0 * p.M, p.Q * p.Q, K + 1);
    const CSeries siginv = series_recip(sig);

    std::vector<Mat2> A(K + 1, Mat2::Zero());
    for (int k = 0; k <= K; ++k) {
        A[k](0, 0) = I * w * (2.0 * qinv[k] - (k == 0 ? 1.0 : 0.0));
        cplx a12 = -(I * m) * siginv[k];
        cplx a21 = (I * m) * siginv[k];
        if (k >= 1) {
            a12 += mode.xi * siginv[k - 1];
            a21 += mode.xi * siginv[k - 1];
        }
        A[k](0, 1) = a12;
        A[k](1, 0) = a21;
        A[k](1, 1) = (k == 0) ? -I * w : cplx(0.0);
    }

    std::vector<Mat2> At(K + 1);
    for (int k = 0; k <= K; ++k) At[k] = Winv_ * A[k] * W_;

    // Recursion: [P_k, D0] = At_k - g_k + sum_{j=1}^{k-1} (At_{k-j} P_j - P_j g_{k-j}) + (k-1) P_{k-1},
    // with the diagonal absorbed into g_k and P_k kept off-diagonal.
    P_.assign(K + 1, Mat2::Zero());
    g_.assign(K + 1, Mat2::Zero());
    P_[0] = Mat2::Identity();
    g_[0] = At[0];  // diag(i w1, -i w1)
    const cplx twoiw = 2.0 * I * w1_;
    for (int k = 1; k <= K; ++k) {
        Mat2 R = At[k] + (k - 1.0) * P_[k - 1];
        for (int j = 1; j <= k - 1; ++j) R += At[k - j] * P_[j] - P_[j] * g_[k - j];
        g_[k] = Mat2::Zero();
        g_[k](0, 0) = R(0, 0);
        g_[k](1, 1) = R(1, 1);
        P_[k] = Mat2::Zero();
        P_[k](0, 1) = R(0, 1) / (-twoiw);
        P_[k](1, 0) = R(1, 0) / twoiw;
    }
}

cplx InfinitySeries::exponent(int branch, double r) const {
    const int j = branch;
    cplx q = g_[0](j, j) * r + g_[1](j, j) * std::log(r);
    double rk = 1.0 / r;  // r^{1-k} for k = 2
    for (int k = 2; k <= K_; ++k) {
        q += g_[k](j, j) * rk / (1.0 - k);
        rk /= r;
    }
    return q;
}

Vec2 InfinitySeries::value(int branch, double r) const {
    const double x = 1.0 / r;
    Mat2 P = P_[K_];
    for (int k = K_ - 1; k >= 0; --k) P = P * x + P_[k];
    const Vec2 e = (branch == 0) ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
    return W_ * (P * e) * std::exp(exponent(branch, r));
}

double InfinitySeries::residual_estimate(double r) const {
    const double x = 1.0 / r;
    const double tK = P_[K_].norm() * std::pow(x, K_);
    const double tK1 = P_[K_ - 1].norm() * std::pow(x, K_ - 1);
    return std::max(tK, tK1);
}

double InfinitySeries::pick_start_radius(double tol, double r_floor) const {
    double r = r_floor;
    for (int it = 0; it < 60; ++it) {
        if (residual_estimate(r) <= tol) return r;
        r *= 1.5;
        if (r > 1e8) break;
    }
    throw StartTooSmall("InfinitySeries: no start radius reached the requested truncation residual");
}

HorizonSeries::HorizonSeries(const Mode& mode, const SpacetimeParams& p, double r_h, int side, int nterms)
    : rh_(r_h), side_(side), omega_(mode.omega) {
    if (std::abs(mode.omega) < 1e-12) throw OmegaZero("HorizonSeries: omega = 0");
    auto [rm, rp] = horizons(p);
    const double wh = rp - rm;
    const double e0 = (std::abs(r_h - rp) < std::abs(r_h - rm)) ? wh : -wh;  // E(0) at r_plus / r_minus
    const double sd = static_cast<double>(side);
    const double eps = sd * (e0 > 0 ? 1.0 : -1.0);  // sign of Delta on this side
    const cplx w = mode.omega;
    const double m = mode.mass;
    const int K = nterms;

    kappa_ = 4.0 * I * w * r_h * r_h / e0;

    // Series in rho: E = e0 + sd rho^2, r = r_h + sd rho^2,
    // sqrt|E| = sqrt|e0| * sqrt(1 + sd rho^2/e0).
    CSeries E(K + 1, 0.0);
    E[0] = e0;
    if (K >= 2) E[2] = sd;
    const CSeries Einv = series_recip(E);
    CSeries sqrtEabs = series_sqrt_quadratic(0.0, sd / e0, K + 1);
    for (auto& csv : sqrtEabs) csv *= std::sqrt(std::abs(e0));

    // V entries as rho-series.
    CSeries V11(K + 1, 0.0), V12(K + 1, 0.0), V21(K + 1, 0.0), V22(K + 1, 0.0), r2(K + 1, 0.0);
    r2[0] = r_h * r_h;
    if (K >= 2) r2[2] = 2.0 * r_h * sd;
    if (K >= 4) r2[4] = 1.0;
    for (int k = 0; k <= K; ++k) {
        cplx Dk = 0.0;  // Delta = sd e0 rho^2 + rho^4
        if (k == 2) Dk = sd * e0;
        if (k == 4) Dk = 1.0;
        V11[k] = I * w * (2.0 * r2[k] - Dk);
        V22[k] = -I * w * Dk;
    }
    // imr -+ xi as rho-series: (i m r_h -+ xi) + i m sd rho^2
    for (int k = 0; k <= K; ++k) {
        cplx f_minus = 0.0, f_plus = 0.0;
        if (k == 0) {
            f_minus = I * m * r_h - mode.xi;
            f_plus = I * m * r_h + mode.xi;
        } else if (k == 2) {
            f_minus = I * m * sd;
            f_plus = I * m * sd;
        }
        // multiply by rho * sqrtEabs: shift by one
        for (int j = 0; j + k + 1 <= K; ++j) {
            V12[j + k + 1] += -sqrtEabs[j] * f_minus;
            V21[j + k + 1] += eps * sqrtEabs[j] * f_plus;
        }
    }

    auto entry_series = [&](const CSeries& v) { return series_mul(v, Einv); };
    CSeries B11 = entry_series(V11), B12 = entry_series(V12), B21 = entry_series(V21), B22 = entry_series(V22);
    for (auto* sp : {&B11, &B12, &B21, &B22})
        for (auto& csv : *sp) csv *= 2.0;

    // Oscillatory-branch subtraction: Bhat = B - (4 i w r^2 / E) Id.
    CSeries sub = series_mul(r2, Einv);
    for (auto& csv : sub) csv *= 4.0 * I * w;
    CSeries Bh11 = B11, Bh22 = B22;
    for (int k = 0; k <= K; ++k) {
        Bh11[k] -= sub[k];
        Bh22[k] -= sub[k];
    }

    auto solve_branch = [&](bool hat) {
        std::vector<Vec2> c(K + 1, Vec2::Zero());
        const CSeries& a11 = hat ? Bh11 : B11;
        const CSeries& a22 = hat ? Bh22 : B22;
        const Mat2 B0 = (Mat2() << a11[0], 0.0, 0.0, a22[0]).finished();
        c[0] = hat ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
        for (int k = 1; k <= K; ++k) {
            Vec2 rhs = Vec2::Zero();
            for (int j = 1; j <= k; ++j) {
                rhs[0] += a11[j] * c[k - j][0] + B12[j] * c[k - j][1];
                rhs[1] += B21[j] * c[k - j][0] + a22[j] * c[k - j][1];
            }
            Mat2 Mk = static_cast<double>(k) * Mat2::Identity() - B0;
            c[k] = Mk.inverse() * rhs;
        }
        return c;
    };
    hatY_ = solve_branch(true);
    checkZ_ = solve_branch(false);
}

Vec2 HorizonSeries::value(int branch, double d, const TortoiseMap& map) const {
    const double rho = std::sqrt(d);
    const auto& c = (branch == 0) ? hatY_ : checkZ_;
    Vec2 v = Vec2::Zero();
    double rk = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        v += c[k] * rk;
        rk *= rho;
    }
    if (branch == 0) {
        RadialPoint pt;
        pt.r = rh_ + side_ * d;
        auto rmrp = std::array<double, 2>{map.rminus(), map.rplus()};
        pt.dminus = pt.r - rmrp[0];
        pt.dplus = pt.r - rmrp[1];
        if (std::abs(rh_ - map.rplus()) < std::abs(rh_ - map.rminus()))
            pt.dplus = side_ * d;
        else
            pt.dminus = side_ * d;
        v *= std::exp(2.0 * I * omega_ * map.u(pt));
    }
    return v;
}

double HorizonSeries::residual_estimate(double d) const {
    const double rho = std::sqrt(d);
    const int K = static_cast<int>(hatY_.size()) - 1;
    double acc = 0.0;
    for (int k = K - 2; k <= K; ++k)
        acc = std::max(acc, std::max(hatY_[k].norm(), checkZ_[k].norm()) * std::pow(rho, k));
    return acc;
}

}  // namespace rnprop

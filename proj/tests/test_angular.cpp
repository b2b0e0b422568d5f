#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rnprop/angular.hpp"

using namespace rnprop;

namespace {

// Independent dense-grid oracle: raw collocation of the unweighted operator
// [[0, Lm], [-Lp, 0]] in x = cos(theta), no pole-weight factorization. Slowly
// convergent but entirely independent of the production path.
std::vector<double> raw_collocation_eigenvalues(int k, int n, int count) {
    Eigen::VectorXd x, w;
    gauss_legendre(n, x, w);
    Eigen::MatrixXd D = differentiation_matrix(x);
    const double mw = k + 0.5;
    Eigen::MatrixXd Lm(n, n), Lp(n, n);
    for (int i = 0; i < n; ++i) {
        const double s = std::sqrt(1.0 - x[i] * x[i]);
        for (int j = 0; j < n; ++j) {
            Lm(i, j) = -s * D(i, j);
            Lp(i, j) = -s * D(i, j);
        }
        Lm(i, i) += (0.5 * x[i] + mw) / s;
        Lp(i, i) += (0.5 * x[i] - mw) / s;
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n) = Lm;
    A.bottomLeftCorner(n, n) = -Lp;
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    std::vector<double> ev;
    for (int i = 0; i < 2 * n; ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) < 1e-6) ev.push_back(z.real());
    }
    std::sort(ev.begin(), ev.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    ev.resize(count);
    return ev;
}

}  // namespace

TEST_CASE("operator anti-commutes with diag(1,-1): spectrum symmetric") {
    auto modes = angular_eigenvalues(0, 8, 48);
    for (const auto& m : modes) {
        bool found = false;
        for (const auto& other : modes)
            if (std::abs(other.lambda + m.lambda) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("k=0 lowest eigenvalue is 1 to 1e-6 at ntheta=256") {
    auto modes = angular_eigenvalues(0, 2, 256);
    CHECK(std::abs(std::abs(modes[0].lambda) - 1.0) < 1e-6);
    // integer-valuedness checked, not assumed
    for (const auto& m : angular_eigenvalues(0, 10, 64))
        CHECK(std::abs(m.lambda - std::round(m.lambda)) < 1e-8);
}

TEST_CASE("agreement with the raw dense-grid oracle") {
    auto prod = angular_eigenvalues(0, 6, 64);
    auto oracle = raw_collocation_eigenvalues(0, 500, 6);
    for (int i = 0; i < 6; ++i)
        CHECK(std::abs(std::abs(prod[i].lambda) - std::abs(oracle[i])) < 2e-3);

    auto prod1 = angular_eigenvalues(1, 4, 64);
    auto oracle1 = raw_collocation_eigenvalues(1, 500, 4);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(std::abs(prod1[i].lambda) - std::abs(oracle1[i])) < 2e-3);
}

TEST_CASE("grid refinement: 5 smallest |lambda| move by < 1e-8") {
    for (int k : {0, 1, -1, 2}) {
        auto a = angular_eigenvalues(k, 5, 64);
        auto b = angular_eigenvalues(k, 5, 128);
        for (int i = 0; i < 5; ++i)
            CHECK(std::abs(std::abs(a[i].lambda) - std::abs(b[i].lambda)) < 1e-8);
    }
}

TEST_CASE("weighted symmetry of the discretized operator") {
    for (int k : {0, 1}) {
        AngularOperator op = build_angular_operator(k, 40);
        const int n = op.n;
        Eigen::VectorXd lam(2 * n);
        for (int i = 0; i < n; ++i) {
            lam[i] = op.w[i] * op.wplus2[i];
            lam[n + i] = op.w[i] * op.wminus2[i];
        }
        Eigen::MatrixXd S = lam.asDiagonal() * op.block;
        const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
        CHECK(asym <= 1e-10 * std::max(1.0, S.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("orthonormality Gram of returned eigenfunctions") {
    auto modes = angular_eigenvalues(0, 6, 96);
    const int n = static_cast<int>(modes[0].theta.size());
    for (std::size_t a = 0; a < modes.size(); ++a) {
        for (std::size_t b = 0; b < modes.size(); ++b) {
            if (std::abs(modes[a].lambda - modes[b].lambda) < 1e-9 && a != b) continue;
            double g = 0.0;
            for (int i = 0; i < n; ++i)
                g += modes[a].weight[i] *
                     (modes[a].y[i][0] * modes[b].y[i][0] + modes[a].y[i][1] * modes[b].y[i][1]);
            const double want = (a == b) ? 1.0 : 0.0;
            CHECK(std::abs(g - want) < 1e-8);
        }
    }
}

TEST_CASE("eigenfunctions stay bounded toward the poles") {
    auto modes = angular_eigenvalues(0, 4, 200);
    for (const auto& m : modes) {
        double mx = 0.0;
        for (const auto& y : m.y) mx = std::max({mx, std::abs(y[0]), std::abs(y[1])});
        CHECK(mx < 10.0);
        CHECK(std::abs(m.y.front()[0]) < 2.0 * mx);  // nodes nearest the poles
        CHECK(std::abs(m.y.back()[0]) < 2.0 * mx);
    }
}

TEST_CASE("no eigenvalues inside (-1, 1) for k = 0") {
    auto modes = angular_eigenvalues(0, 12, 96);
    for (const auto& m : modes) CHECK(std::abs(m.lambda) > 1.0 - 1e-8);
}

TEST_CASE("grid too coarse raises") {
    CHECK_THROWS_AS(build_angular_operator(0, 8), GridTooCoarse);
}

TEST_CASE("negative k mirrors the positive sector") {
    auto neg = angular_eigenvalues(-1, 4, 64);
    auto pos = angular_eigenvalues(0, 4, 64);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(std::abs(neg[i].lambda) - std::abs(pos[i].lambda)) < 1e-10);
}

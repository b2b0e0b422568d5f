#include "rnprop/angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rnprop {

void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

Eigen::MatrixXd differentiation_matrix(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    // Barycentric weights.
    Eigen::VectorXd c = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) c[i] *= (x[i] - x[j]);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            D(i, j) = (c[i] / c[j]) / (x[i] - x[j]);
        }
        // Row sums of a differentiation matrix vanish (derivative of 1).
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += D(i, j);
        D(i, i) = -s;
    }
    return D;
}

void jacobi_gauss_symmetric(int n, int alpha, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    // Golub-Welsch for the weight (1-x^2)^alpha on (-1, 1).
    if (alpha == 0) {
        gauss_legendre(n, x, w);
        return;
    }
    const double a = alpha;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(n - 1);
    for (int j = 1; j < n; ++j) {
        const double bj = j * (j + a) * (j + a) * (j + 2.0 * a) /
                          (std::pow(2.0 * j + 2.0 * a, 2) * (2.0 * j + 2.0 * a + 1.0) * (2.0 * j + 2.0 * a - 1.0));
        off[j - 1] = std::sqrt(bj);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off);
    double mu0 = 2.0;  // int (1-x^2)^a dx = 2^(2a+1) (a!)^2/(2a+1)!
    for (int j = 1; j <= alpha; ++j) mu0 *= 2.0 * j / (2.0 * j + 1.0);
    mu0 *= std::pow(2.0, alpha);
    x = es.eigenvalues();
    w.resize(n);
    for (int i = 0; i < n; ++i) w[i] = mu0 * std::pow(es.eigenvectors()(0, i), 2);
}

AngularOperator build_angular_operator(int k, int ntheta) {
    if (ntheta < 16) throw GridTooCoarse("build_angular_operator: ntheta >= 16 required");
    AngularOperator op;
    op.k = k;
    op.n = ntheta;
    op.swapped = (k < 0);
    const int kk = op.swapped ? (-k - 1) : k;  // reduce k<0 to the mirrored sector
    op.kk = kk;

    // Nodes and weights of the Gauss rule for (1-x^2)^k'; the remaining pole
    // factors (1 -+ x) stay explicit, which keeps the weighted symmetry and the
    // orthonormality quadratures exact at finite n.
    jacobi_gauss_symmetric(ntheta, kk, op.x, op.w);
    const Eigen::MatrixXd D = differentiation_matrix(op.x);

    // Conjugated polynomial operators for k' = kk >= 0:
    //   Bm g- = -(1-x) g-' + (k'+1) g-   (maps to xi g+)
    //   Bp g+ =  (1+x) g+' + (k'+1) g+   (maps to xi g-)
    const int n = ntheta;
    Eigen::MatrixXd Bm = -((Eigen::VectorXd::Ones(n) - op.x).asDiagonal() * D);
    Bm.diagonal().array() += (kk + 1.0);
    Eigen::MatrixXd Bp = (Eigen::VectorXd::Ones(n) + op.x).asDiagonal() * D;
    Bp.diagonal().array() += (kk + 1.0);

    op.block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    op.block.topRightCorner(n, n) = Bm;
    op.block.bottomLeftCorner(n, n) = Bp;

    op.wplus2.resize(n);
    op.wminus2.resize(n);
    for (int i = 0; i < n; ++i) {
        op.wplus2[i] = 1.0 + op.x[i];
        op.wminus2[i] = 1.0 - op.x[i];
    }
    return op;
}

std::vector<AngularMode> angular_eigenvalues(int k, int count, int ntheta) {
    if (count < 1) throw ConfigInvalid("angular_eigenvalues: count >= 1");
    AngularOperator op = build_angular_operator(k, ntheta);
    const int n = op.n;

    Eigen::EigenSolver<Eigen::MatrixXd> es(op.block);
    if (es.info() != Eigen::Success) throw EigensolverFailure("angular_eigenvalues: dense solver failed");

    struct Item {
        double lambda;
        Eigen::VectorXcd vec;
    };
    std::vector<Item> items;
    const double scale = op.block.cwiseAbs().maxCoeff();
    for (int i = 0; i < 2 * n; ++i) {
        const std::complex<double> ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) > 1e-10 * std::max(1.0, scale)) {
            // Spurious complex pairs can appear among the unresolved top modes;
            // they are discarded, not returned. Failing only when a requested
            // mode would be affected.
            continue;
        }
        items.push_back({ev.real(), es.eigenvectors().col(i)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (std::abs(a.lambda) != std::abs(b.lambda)) return std::abs(a.lambda) < std::abs(b.lambda);
        return a.lambda < b.lambda;
    });
    if (static_cast<int>(items.size()) < count)
        throw EigensolverFailure("angular_eigenvalues: too few real eigenvalues resolved");

    std::vector<AngularMode> out;
    int pos_l = 0, neg_l = 0;
    for (int idx = 0; idx < count; ++idx) {
        const Item& it = items[idx];
        AngularMode mode;
        mode.k = k;
        // The k < 0 sector is solved through its mirror k' = -k-1; eigenpairs
        // map back with negated eigenvalue and exchanged components.
        mode.lambda = op.swapped ? -it.lambda : it.lambda;
        mode.l = (mode.lambda >= 0.0) ? ++pos_l : -(++neg_l);
        mode.theta.resize(n);
        mode.weight.resize(n);
        mode.y.resize(n);

        // Map collocation values back to (Y+, Y-); undo the k<0 component swap.
        Eigen::VectorXcd gp = it.vec.head(n), gm = it.vec.tail(n);
        // Deterministic phase: make the largest-magnitude entry real positive.
        std::complex<double> piv = 0.0;
        for (int i = 0; i < 2 * n; ++i)
            if (std::abs(it.vec[i]) > std::abs(piv)) piv = it.vec[i];
        gp /= piv;
        gm /= piv;

        double nrm2 = 0.0;
        for (int i = 0; i < n; ++i)
            nrm2 += op.w[i] * (op.wplus2[i] * std::norm(gp[i]) + op.wminus2[i] * std::norm(gm[i]));
        const double nrm = std::sqrt(nrm2);

        for (int i = 0; i < n; ++i) {
            const int j = n - 1 - i;
            mode.theta[i] = std::acos(op.x[j]);  // ascending theta
            const double sig = 1.0 - op.x[j] * op.x[j];
            const double sigk = std::pow(sig, op.kk);
            // plain sin(theta) d(theta) quadrature weight at this node
            mode.weight[i] = op.w[j] / sigk;
            double yp = std::sqrt(sigk * op.wplus2[j]) * gp[j].real() / nrm;
            double ym = std::sqrt(sigk * op.wminus2[j]) * gm[j].real() / nrm;
            if (op.swapped) std::swap(yp, ym);
            mode.y[i] = {yp, ym};
        }
        out.push_back(std::move(mode));
    }
    return out;
}

}  // namespace rnprop

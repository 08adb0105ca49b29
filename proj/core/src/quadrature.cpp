#include "jastrow_dyn/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jastrow_dyn {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, rel_tol);
    return sign * value;
}

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
GaussRule golub_welsch(const std::vector<double>& off_diagonal, double mu0) {
    const auto n = static_cast<Eigen::Index>(off_diagonal.size() + 1);
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = off_diagonal[static_cast<std::size_t>(i)];
        jacobi(i + 1, i) = off_diagonal[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussRule rule;
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes.push_back(solver.eigenvalues()(i));
        const double v = solver.eigenvectors()(0, i);
        rule.weights.push_back(mu0 * v * v);
    }
    return rule;
}

}  // namespace

GaussRule gauss_hermite(int n) {
    std::vector<double> off;
    for (int k = 1; k < n; ++k) off.push_back(std::sqrt(0.5 * k));
    GaussRule rule = golub_welsch(off, std::sqrt(std::numbers::pi));
    // Symmetrize to remove eigen-solver round-off.
    const auto m = rule.nodes.size();
    for (std::size_t i = 0; i < m / 2; ++i) {
        const double x = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[m - 1 - i] + rule.weights[i]);
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

GaussRule gauss_legendre(int n) {
    std::vector<double> off;
    for (int k = 1; k < n; ++k) off.push_back(k / std::sqrt(4.0 * k * k - 1.0));
    return golub_welsch(off, 2.0);
}

std::vector<double> fd_weights(double x0, const std::vector<double>& stencil, int m) {
    const int n = static_cast<int>(stencil.size()) - 1;
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = stencil[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = stencil[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = stencil[static_cast<std::size_t>(i)] - stencil[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w;
    for (int i = 0; i <= n; ++i) w.push_back(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]);
    return w;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    }
    return out;
}

}  // namespace jastrow_dyn

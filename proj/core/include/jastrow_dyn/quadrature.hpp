#pragma once

#include <functional>
#include <vector>

namespace jastrow_dyn {

// Signed adaptive Gauss-Kronrod integral of f over [a, b] (a > b allowed).
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for weight e^{-x^2} on the real line (Golub-Welsch).
GaussRule gauss_hermite(int n);
// Nodes/weights on [-1, 1] with unit weight.
GaussRule gauss_legendre(int n);

// Finite-difference weights for the m-th derivative at x0 from the given
// stencil (Fornberg's algorithm, arbitrary spacing).
std::vector<double> fd_weights(double x0, const std::vector<double>& stencil, int m);

// Trapezoid rule on samples; returns cumulative integral starting at 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f);

}  // namespace jastrow_dyn

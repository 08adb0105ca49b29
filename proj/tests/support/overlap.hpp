#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "jastrow_dyn/quadrature.hpp"
#include "jastrow_dyn/wavefunction.hpp"

namespace jastrow_dyn::testing {

// |<Psi(t0)|Psi(t)>|^2 / (<Psi(t0)|Psi(t0)> <Psi(t)|Psi(t)>) for N = 2 by brute force
// over centre of mass X and separation r > 0, from log_psi alone.
inline double overlap_bruteforce(const ModelSpec& m, const ScalingSolution& s, double t, double t0, Gauge gauge) {
    const double width = 9.0 * std::max(s.b(t), s.b(t0)) / std::sqrt(m.omega0());
    auto rule = gauss_legendre(24);
    std::vector<double> nodes, weights;
    const int panels = 16;
    for (int p = 0; p < panels; ++p) {
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            nodes.push_back((p + 0.5 * (rule.nodes[k] + 1)) / panels);
            weights.push_back(0.5 * rule.weights[k] / panels);
        }
    }
    auto p1 = psi_slice(m, s, t, gauge);
    auto p0 = psi_slice(m, s, t0, gauge);
    std::complex<double> ovl = 0.0;
    double n1 = 0.0, n0 = 0.0;
    ParticleConfig x(2);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double cm = width * (2 * nodes[i] - 1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double r = 2 * width * nodes[j];
            const double w = weights[i] * weights[j] * 4 * width * width;
            x[0] = cm + 0.5 * r;
            x[1] = cm - 0.5 * r;
            auto a = log_psi(m, p1, x);
            auto b = log_psi(m, p0, x);
            ovl += w * std::exp(std::complex<double>(a.log_amp + b.log_amp, a.phase - b.phase));
            n1 += w * std::exp(2 * a.log_amp);
            n0 += w * std::exp(2 * b.log_amp);
        }
    }
    return std::norm(ovl) / (n1 * n0);
}

}  // namespace jastrow_dyn::testing

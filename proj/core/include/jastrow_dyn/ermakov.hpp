#pragma once

#include <vector>

#include "jastrow_dyn/protocol.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

struct SolveOptions {
    // Accept an interval once step halving changes b by less than this (relative).
    double tolerance = 1e-12;
    int max_halvings = 16;
};

// RK4 for b'' + Omega^2 b = omega0^2 / b^3 from b(0) = 1, b'(0) = b_dot0.
// The grid must start at 0. Protocol breakpoints inside the grid become nodes.
ScalingSolution solve_forward(const FrequencyProtocol& proto, double omega0, double b_dot0,
                              const std::vector<double>& t_grid, const SolveOptions& options = {});

// Omega^2 = omega0^2 / b^4 - b''/b. Analytic solutions use their own b'';
// tabulated ones differentiate b_dot with five-point finite differences.
FrequencyProtocol frequency_from_scaling(const ScalingSolution& scaling, double omega0);

// max over nodes of |b'' + Omega^2 b - omega0^2/b^3|, with b'' taken by
// finite differences of b_dot for tabulated solutions.
double ermakov_residual(const ScalingSolution& scaling, const FrequencyProtocol& proto);

// Relative drift of E = b'^2/2 + Omega^2 b^2/2 + omega0^2/(2 b^2) over the
// grid nodes in [lo, hi]. Throws InadmissibleProtocol if Omega is not constant there.
double conserved_energy_drift(const ScalingSolution& scaling, const FrequencyProtocol& proto, double lo, double hi);

// Uniform grid lo, lo + step, ..., hi (hi always included).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace jastrow_dyn

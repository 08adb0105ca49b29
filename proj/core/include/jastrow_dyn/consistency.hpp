#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jastrow_dyn/eta.hpp"
#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/pair.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

// A pair function with its own time dependence. Built from a model for the
// admissible flows; the other factories produce deliberately wrong flows.
struct PairField {
    std::string name;
    std::function<PairDerivatives(double x, double t)> pair;
    // Three-body term at a configuration (inverse length^2).
    std::function<double(const ParticleConfig& x, double t)> w3;

    static PairField from_model(const ModelSpec& model, const ScalingSolution& scaling);
    // Gamma = lambda(t) ln|x|.
    static PairField power_law(std::function<double(double)> lambda, std::function<double(double)> lambda_dot);
    // Gamma = lambda0 ln|sinh(c(t) x)|.
    static PairField hyperbolic(double lambda0, std::function<double(double)> c, std::function<double(double)> c_dot);
};

struct TwoBodyResult {
    // max_t (max_x L - min_x L), inverse length^2.
    double residual = 0.0;
    std::vector<double> times;
    // Recovered rate N2_dot(t) = mean_x L(x, t).
    std::vector<double> n2_dot;
};

// L = eta G'' + 2 eta G'^2 + (m/hbar) G_t - (m/hbar) C2 x G', C2 = eta omega - b'/b.
TwoBodyResult two_body_residual(const PairField& field, const EtaSchedule& eta, const ScalingSolution& scaling,
                                const Units& units, const std::vector<double>& x_grid, const std::vector<double>& t_grid);
TwoBodyResult two_body_residual(const ModelSpec& model, const EtaSchedule& eta, const ScalingSolution& scaling,
                                const std::vector<double>& x_grid, const std::vector<double>& t_grid);

struct OneBodyResult {
    double residual = 0.0;
    std::vector<double> times;
    std::vector<double> c2;
    std::vector<double> d2;
    std::vector<double> n1_dot;
};

// Checks C2 = eta omega + omega_dot/(2 omega), D2 = 0 and N1_dot = -m omega_dot/(2 hbar omega),
// with omega_dot from finite differences of omega0/b^2.
OneBodyResult one_body_residual(const EtaSchedule& eta, const ScalingSolution& scaling, const Units& units,
                                const std::vector<double>& t_grid);

struct ConsistencyReport {
    double two_body_residual = 0.0;
    double one_body_residual = 0.0;
    // Position spreads of Im v1, Im v2, Im v3 in units of hbar omega0.
    double im_v1_spread = 0.0;
    double im_v2_spread = 0.0;
    double im_v3_spread = 0.0;
    std::vector<double> times;
    // Rates with dN/dt = (hbar/m) [N n1_dot/2 + N(N-1)/2 n2_dot + n3_dot].
    std::vector<double> n1_dot;
    std::vector<double> n2_dot;
    std::vector<double> n3_dot;
    double tolerance = 1e-8;

    double max_spread() const;
    bool passed() const { return max_spread() < tolerance; }
    std::string to_json() const;
};

ConsistencyReport hermiticity_check(const PairField& field, const EtaSchedule& eta, const ScalingSolution& scaling,
                                    const Units& units, int n_particles, const std::vector<ParticleConfig>& configs,
                                    const std::vector<double>& t_grid);
ConsistencyReport hermiticity_check(const ModelSpec& model, const EtaSchedule& eta, const ScalingSolution& scaling,
                                    const std::vector<ParticleConfig>& configs, const std::vector<double>& t_grid);

struct EtaCase {
    std::string lambda;
    std::string eta;
};

std::vector<EtaCase> valid_eta_cases(Family family);

// 64 log-spaced points per decade over [1e-2, 1e2] sqrt(hbar/(m omega0)).
std::vector<double> default_x_grid(const Units& units, double omega0);

}  // namespace jastrow_dyn

#pragma once

#include <string>
#include <vector>

#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/pair.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

// ZeroOffset fixes tau so that the total constant energy vanishes;
// Natural keeps tau = 0 and reports the offset.
enum class Gauge { ZeroOffset, Natural };

// Real potential V = 1/2 m trap_sq sum x^2 + sum_{i<j} u(x_ij) + offset with
//   u(x) = inv_sq/x^2 + log_pair ln|x| + csch_sq csch^2(c x) + coth_lin x coth(c x)
//        + log_sinh ln|sinh(c x)| + contact delta(x) + abs_lin |x|
//        + generic_pair (G'' + G'^2) + generic_virial x G'
// plus generic_pair * W3(x) for GenericEven. The delta term is never
// evaluated pointwise.
struct HamiltonianCoeffs {
    double t = 0.0;
    double trap_sq = 0.0;
    double inv_sq = 0.0;
    double log_pair = 0.0;
    double csch_sq = 0.0;
    double coth_lin = 0.0;
    double log_sinh = 0.0;
    double contact = 0.0;
    double abs_lin = 0.0;
    double generic_pair = 0.0;
    double generic_virial = 0.0;
    // Argument scale c(t) of csch, coth, sinh and the generic pair function.
    double arg_scale = 0.0;
    double w3 = 0.0;
    double varpi = 0.0;
    double vartheta = 0.0;
    double tau_dot = 0.0;
    // Constant energy (E bar for the parent, E0' bar for the pseudo-parent).
    double offset = 0.0;

    static std::vector<std::string> csv_columns();
    std::vector<double> csv_row() const;
};

// Hamiltonian for which Psi(t) solves the Schroedinger equation exactly.
HamiltonianCoeffs parent_coeffs(const ModelSpec& model, const ScalingSolution& scaling, double t,
                                Gauge gauge = Gauge::ZeroOffset);
// Frame Hamiltonian H0' with Phi(t) as zero mode once the offset is removed.
HamiltonianCoeffs pseudo_parent_coeffs(const ModelSpec& model, const ScalingSolution& scaling, double t);

// Constant part of the parent potential other than -N hbar (omega + 2 tau_dot)/2.
double parent_constant(const ModelSpec& model, const TimeSlice& slice);

// tau_dot that makes the parent offset vanish.
double gauge_tau_dot(const ModelSpec& model, const TimeSlice& slice);
// int_{t_ref}^{t} tau_dot ds.
double gauge_tau(const ModelSpec& model, const ScalingSolution& scaling, double t, double t_ref = 0.0);

// Counterdiabatic control H1' = pair_momentum sum {G'_ij, p_i - p_j} + squeeze sum {x_k, p_k}.
struct STAControl {
    double t = 0.0;
    double squeeze = 0.0;
    double pair_momentum = 0.0;
    // pair_momentum times the family prefactor of G': coefficient of
    // {1/x_ij, p_ij} (LogCS) or {coth(c x_ij), p_ij} (LogHyperbolic).
    double pair_kernel = 0.0;
    std::string kernel;
};

STAControl sta_control(const ModelSpec& model, const ScalingSolution& scaling, double t);

// Instantaneous kick weight * delta(t - time) * sum kernel(x_ij) from a jump of eta.
struct Impulse {
    double time = 0.0;
    double weight = 0.0;
    std::string kernel;
    double arg_scale = 0.0;
};

std::vector<Impulse> eta_impulses(const ModelSpec& model, const ScalingSolution& scaling, double lo, double hi);

// Pair part u(x) for a single separation.
double pair_potential(const ModelSpec& model, const HamiltonianCoeffs& h, double x);
// Total real potential at a configuration.
double potential_energy(const ModelSpec& model, const HamiltonianCoeffs& h, std::span<const double> x);
double potential_energy(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t,
                        Gauge gauge = Gauge::ZeroOffset);

}  // namespace jastrow_dyn

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "jastrow_dyn/hamiltonian.hpp"
#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/pair.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

struct LogPsi {
    double log_amp = 0.0;
    double phase = 0.0;
};

// N(t) with N(0) = 0, split into one-body, pair and triple contributions.
struct NormalizationExponent {
    double value = 0.0;
    double one_body = 0.0;
    double pair = 0.0;
    double triple = 0.0;
};

NormalizationExponent normalization_exponent(const ModelSpec& model, const ScalingSolution& scaling, double t);

// Trapezoid integration of the rates on a grid starting at 0 (pair rate
// recovered from the two-body condition, triple rate from W3).
std::vector<double> normalization_exponent_trapezoid(const ModelSpec& model, const ScalingSolution& scaling,
                                                     const std::vector<double>& t_grid);

// Everything log Psi needs at one time.
struct PsiSlice {
    TimeSlice slice;
    double n_exp = 0.0;
    double tau = 0.0;
};

PsiSlice psi_slice(const ModelSpec& model, const ScalingSolution& scaling, double t, Gauge gauge = Gauge::ZeroOffset,
                   double t_ref = 0.0);

// log_amp = sum G_ij - (m omega/2 hbar) sum x^2 - N(t);
// phase = eta sum G_ij + (m b'/2 hbar b) sum x^2 + N tau.
LogPsi log_psi(const ModelSpec& model, const PsiSlice& ps, std::span<const double> x);
LogPsi log_psi(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t,
               Gauge gauge = Gauge::ZeroOffset);
// Real TDJA: amplitude only.
double log_phi(const ModelSpec& model, const PsiSlice& ps, std::span<const double> x);
double log_phi(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t);

// Analytic spatial derivatives of log Psi (real = true gives log Phi).
struct LogDerivatives {
    std::vector<std::complex<double>> grad;
    std::complex<double> laplacian;
};

LogDerivatives log_derivatives(const ModelSpec& model, const TimeSlice& slice, std::span<const double> x, bool real);

struct TdseOptions {
    // Fourth-order central-difference step; 0 means 1e-3/omega0.
    double dt = 0.0;
    Gauge gauge = Gauge::ZeroOffset;
    double t_ref = 0.0;
};

// |i hbar dPsi/dt - H Psi| / (hbar omega0 |Psi|), the time derivative by
// central differences. `hamiltonian` may differ from `model` to probe a
// mismatched Hamiltonian. Returns the maximum over configurations.
double tdse_residual(const ModelSpec& model, const ModelSpec& hamiltonian, const ScalingSolution& scaling,
                     std::span<const ParticleConfig> configs, double t, const TdseOptions& options = {});
double tdse_residual(const ModelSpec& model, const ScalingSolution& scaling, std::span<const ParticleConfig> configs,
                     double t, const TdseOptions& options = {});
double tdse_residual(const ModelSpec& model, const ScalingSolution& scaling, const ParticleConfig& config, double t,
                     const TdseOptions& options = {});

// max |H0' Phi / Phi| / (hbar omega0) with the pseudo-parent Hamiltonian.
double zero_mode_residual(const ModelSpec& model, const ScalingSolution& scaling, std::span<const ParticleConfig> configs,
                          double t);

// Position spread of i hbar d(log Phi)/dt - (H1' Phi)/Phi over configurations,
// in units of hbar omega0. Zero when the control moves Phi along itself.
double counterdiabatic_residual(const ModelSpec& model, const ScalingSolution& scaling,
                                std::span<const ParticleConfig> configs, double t, double dt = 0.0);

}  // namespace jastrow_dyn

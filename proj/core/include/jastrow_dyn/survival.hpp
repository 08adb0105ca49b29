#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/scaling.hpp"
#include "jastrow_dyn/units.hpp"

namespace jastrow_dyn {

struct AlphaFactor {
    std::complex<double> alpha_sq;
    // Principal root, Re > 0.
    std::complex<double> alpha;
    double abs_alpha = 0.0;
};

// alpha^2 = (m omega0/2 hbar) [1/b^2 + 1/b0^2 - (i/omega0)(b0'/b0 - b'/b)].
AlphaFactor alpha(const ScalingSolution& scaling, double t, double t0, const Units& units = {});

// [m omega0 / (hbar b b0 |alpha|^2)]^{N + lambda0 N(N-1)}; exactly 1 at t = t0.
double sp_closed_form_cs(int n, double lambda0, const ScalingSolution& scaling, double t, double t0,
                         const Units& units = {});
// Same base raised to N + N(N-1)/2.
double sp_upper_bound_logcs(int n, const ScalingSolution& scaling, double t, double t0, const Units& units = {});

enum class SamplerKind { Pseudo, Sobol };
// Exact evaluates the pair function at the complex separation |y|/(alpha b);
// Modulus replaces alpha by |alpha| there.
enum class Continuation { Exact, Modulus };

std::string to_string(SamplerKind kind);
SamplerKind sampler_from_string(const std::string& name);

struct SamplerOptions {
    long n_samples = 1L << 20;
    std::uint64_t seed = 1;
    SamplerKind kind = SamplerKind::Sobol;
    int batches = 32;
    // 0 means std::thread::hardware_concurrency().
    int threads = 0;
    Continuation continuation = Continuation::Exact;
    // Weight-degeneracy guard: below either limit the Gaussian proposal misses
    // the mass of the integrand and SamplerDivergence is raised. The CS family
    // is exempt because its ratio is exact sample by sample.
    double min_effective_fraction = 1e-3;
    double min_effective_samples = 100.0;
};

struct SPResult {
    double t = 0.0;
    double t0 = 0.0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::Sobol;
    // Kish effective sample size of the t0 weights over n_samples.
    double effective_fraction = 1.0;
};

// Contour-shifted estimator with y_k ~ N(0, 1/2); numerator and denominator
// share every sample, stderr from the spread of per-batch estimates.
// Throws SamplerDivergence when the t0 weights degenerate (see SamplerOptions).
SPResult sp_montecarlo(const ModelSpec& model, const ScalingSolution& scaling, double t, double t0,
                       const SamplerOptions& options = {});
// Several times from the same sample set.
std::vector<SPResult> sp_montecarlo_series(const ModelSpec& model, const ScalingSolution& scaling,
                                           const std::vector<double>& times, double t0,
                                           const SamplerOptions& options = {});

struct DirectOptions {
    int panels = 8;
    int nodes_per_panel = 32;
};

// Overlap without the contour shift: centre of mass in closed form, gaps of
// the ordered sector by composite Gauss-Legendre. N <= 3.
double sp_direct_quadrature(const ModelSpec& model, const ScalingSolution& scaling, double t, double t0,
                            const DirectOptions& options = {});

enum class AsymptoteKind { Exact, PowerLaw, Limiting };

struct AsymptoteModel {
    AsymptoteKind kind = AsymptoteKind::Exact;
    double t0 = 0.0;
    double r0 = 0.0;
    std::complex<double> alpha_inf_sq;
    double abs_alpha_inf = 0.0;
    double prefactor = 1.0;
    double prefactor_stderr = 0.0;
    double exponent = 0.0;
    // Kept for the Exact kind, which is the CS closed form itself.
    int n_particles = 0;
    double lambda0 = 0.0;
    Units units;

    double evaluate(double b) const { return prefactor / std::pow(b, exponent); }
    // Exact kinds use the closed form at t; the others prefactor / b(t)^exponent.
    double at(const ScalingSolution& scaling, double t) const;
};

struct AsymptoteOptions {
    SamplerOptions sampler;
    // Limit of b'/b; estimated from the end of the grid when absent.
    std::optional<double> r0;
    // Largest acceptable omega0 * |int_{t0}^{t_max} eta/b^2| for LogHyperbolic.
    double eta_premise = 1e-2;
};

AsymptoteModel sp_asymptote(const ModelSpec& model, const ScalingSolution& scaling, double t0,
                            const AsymptoteOptions& options = {});

}  // namespace jastrow_dyn

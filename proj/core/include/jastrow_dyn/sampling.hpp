#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jastrow_dyn/model.hpp"
#include "jastrow_dyn/pair.hpp"
#include "jastrow_dyn/scaling.hpp"

namespace jastrow_dyn {

struct MetropolisOptions {
    int n_samples = 100;
    int burn_in = 100;
    // Sweeps between recorded samples.
    int thin = 10;
    // Proposal width in units of sqrt(hbar/(m omega(t))).
    double step = 0.5;
    std::uint64_t seed = 1;
};

struct MetropolisResult {
    std::vector<ParticleConfig> samples;
    double acceptance = 0.0;
};

// Random-walk Metropolis over log_density; configurations where it throws
// ContactSingularity are rejected.
MetropolisResult metropolis(const std::function<double(const ParticleConfig&)>& log_density, ParticleConfig start,
                            double step, const MetropolisOptions& options);

// Samples from |Phi(t)|^2.
MetropolisResult sample_phi(const ModelSpec& model, const ScalingSolution& scaling, double t,
                            const MetropolisOptions& options = {});

}  // namespace jastrow_dyn

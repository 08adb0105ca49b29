#include "jastrow_dyn/sampling.hpp"

#include <cmath>
#include <random>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/wavefunction.hpp"

namespace jastrow_dyn {

MetropolisResult metropolis(const std::function<double(const ParticleConfig&)>& log_density, ParticleConfig start,
                            double step, const MetropolisOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, step);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    ParticleConfig x = std::move(start);
    double lp = log_density(x);
    if (!std::isfinite(lp)) throw SamplerDivergence("starting configuration has zero density");
    long accepted = 0;
    long proposed = 0;
    MetropolisResult out;
    auto sweep = [&] {
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double old = x[k];
            x[k] += normal(rng);
            ++proposed;
            double lq = -INFINITY;
            try {
                lq = log_density(x);
            } catch (const ContactSingularity&) {
            }
            if (std::isfinite(lq) && std::log(uniform(rng)) < lq - lp) {
                lp = lq;
                ++accepted;
            } else {
                x[k] = old;
            }
        }
    };
    for (int s = 0; s < options.burn_in; ++s) sweep();
    while (static_cast<int>(out.samples.size()) < options.n_samples) {
        for (int s = 0; s < std::max(1, options.thin); ++s) sweep();
        out.samples.push_back(x);
    }
    out.acceptance = proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
    if (accepted == 0) throw SamplerDivergence("Metropolis chain never moved");
    return out;
}

MetropolisResult sample_phi(const ModelSpec& model, const ScalingSolution& scaling, double t,
                            const MetropolisOptions& options) {
    PsiSlice ps;
    ps.slice = time_slice(model, scaling, t);
    const double length = std::sqrt(model.units().hbar / (model.units().mass * ps.slice.omega));
    const int n = model.n_particles();
    ParticleConfig start(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) start[static_cast<std::size_t>(k)] = 0.7 * length * (k - 0.5 * (n - 1));
    auto density = [&](const ParticleConfig& x) { return 2.0 * log_phi(model, ps, x); };
    return metropolis(density, std::move(start), options.step * length, options);
}

}  // namespace jastrow_dyn

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "generators.hpp"
#include "overlap.hpp"
#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"
#include "jastrow_dyn/survival.hpp"
#include "jastrow_dyn/wavefunction.hpp"

using namespace jastrow_dyn;
using jastrow_dyn::testing::Gen;
using jastrow_dyn::testing::overlap_bruteforce;
using jastrow_dyn::testing::trap_release_scaling;

namespace {

ScalingSolution static_scaling() {
    return ScalingSolution::analytic(
        1.0, [](double) { return ScalingState{}; }, uniform_grid(0.0, 10.0, 0.5), -100.0, 100.0, "static");
}

SamplerOptions pseudo(long n, std::uint64_t seed) {
    SamplerOptions o;
    o.kind = SamplerKind::Pseudo;
    o.n_samples = n;
    o.seed = seed;
    return o;
}

}  // namespace

TEST(Alpha, Examples) {
    auto s = trap_release_scaling();
    auto a0 = alpha(s, 0.0, 0.0);
    EXPECT_EQ(a0.alpha_sq, std::complex<double>(1.0, 0.0));
    auto a1 = alpha(s, 1.0, 0.0);
    EXPECT_NEAR(a1.alpha_sq.real(), 0.75, 1e-14);
    EXPECT_NEAR(a1.alpha_sq.imag(), 0.25, 1e-14);
    EXPECT_NEAR(a1.abs_alpha * a1.abs_alpha, 0.790569, 1e-6);
    EXPECT_GT(a1.alpha.real(), 0.0);

    auto w = scenario_scaling(QuenchScenario::trap_release(2.0), uniform_grid(0.0, 2.0, 0.1));
    auto same = alpha(w, 0.7, 0.7, Units{1.0, 3.0});
    EXPECT_EQ(same.alpha_sq.imag(), 0.0);
    EXPECT_NEAR(same.alpha_sq.real(), 3.0 * 2.0 / (1 + 4 * 0.49), 1e-13);
}

TEST(ClosedForm, Examples) {
    auto s = trap_release_scaling();
    EXPECT_EQ(sp_closed_form_cs(3, 2.0, s, 0.0, 0.0), 1.0);
    EXPECT_EQ(sp_closed_form_cs(4, 1.0, s, 2.5, 2.5), 1.0);
    auto still = static_scaling();
    for (double t : {0.5, 3.0}) EXPECT_NEAR(sp_closed_form_cs(3, 2.0, still, t, 0.0), 1.0, 1e-15);
    double base = 1.0 / (std::sqrt(2.0) * std::sqrt(0.625));
    EXPECT_NEAR(base, 0.894427, 1e-6);
    EXPECT_NEAR(sp_closed_form_cs(3, 2.0, s, 1.0, 0.0), std::pow(base, 15), 1e-13);
    EXPECT_NEAR(sp_closed_form_cs(3, 2.0, s, 1.0, 0.0), 0.1876, 1e-4);
}

TEST(LogCSBound, Examples) {
    auto s = trap_release_scaling();
    EXPECT_EQ(sp_upper_bound_logcs(3, s, 1.5, 1.5), 1.0);
    EXPECT_EQ(sp_upper_bound_logcs(1, s, 2.0, 0.0), sp_closed_form_cs(1, 7.0, s, 2.0, 0.0));
    for (double t : {0.5, 1.0, 4.0})
        EXPECT_NEAR(sp_upper_bound_logcs(4, s, t, 0.0), sp_closed_form_cs(4, 0.5, s, t, 0.0), 1e-12);
}

TEST(LogCSBound, BoundsBruteForceOverlap) {
    auto s = trap_release_scaling();
    auto still = static_scaling();
    auto m = ModelSpec::log_cs(2, 1.0, EtaSchedule::sine(1.0));
    for (double t : {0.5, 1.0, 2.0}) {
        double sp = overlap_bruteforce(m, s, t, 0.0, Gauge::ZeroOffset);
        EXPECT_LE(sp, sp_upper_bound_logcs(2, s, t, 0.0) + 1e-9) << t;
        double sp_still = overlap_bruteforce(m, still, t, 0.0, Gauge::ZeroOffset);
        EXPECT_LE(sp_still, sp_upper_bound_logcs(2, still, t, 0.0) + 1e-9) << t;
        EXPECT_LT(sp_still, 1.0 - 1e-3) << "eta alone should lower the overlap";
    }
}

// The bound is not universal: a phase swing can partly undo the Gaussian chirp.
TEST(LogCSBound, PhaseSwingCanExceedIt) {
    auto s = trap_release_scaling();
    auto m = ModelSpec::log_cs(2, 1.0, EtaSchedule::sine(1.0));
    EXPECT_NEAR(overlap_bruteforce(m, s, 4.0, 0.0, Gauge::ZeroOffset), 0.091664, 1e-5);
    EXPECT_NEAR(sp_upper_bound_logcs(2, s, 4.0, 0.0), 0.089443, 1e-6);
    EXPECT_GT(overlap_bruteforce(m, s, 2.0, 1.0, Gauge::ZeroOffset), sp_upper_bound_logcs(2, s, 2.0, 1.0) + 1e-3);
}

TEST(MonteCarlo, InitialTimeIsExact) {
    auto s = trap_release_scaling();
    for (const auto& m : {ModelSpec::exp_ll(4, 1.0, -1.0), ModelSpec::hyperbolic(3, 1.0, 3.0, 1.0)}) {
        auto r = sp_montecarlo(m, s, 0.0, 0.0, pseudo(4096, 5));
        EXPECT_EQ(r.estimate, 1.0);
        EXPECT_EQ(r.stderr_, 0.0);
    }
}

TEST(MonteCarlo, SingleParticleGaussian) {
    auto s = trap_release_scaling();
    auto r = sp_montecarlo(ModelSpec::exp_ll(1, 1.0, -1.0), s, 1.0, 0.0, pseudo(1 << 16, 6));
    EXPECT_NEAR(r.estimate, sp_closed_form_cs(1, 0.0, s, 1.0, 0.0), 3 * r.stderr_ + 1e-14);
    // One particle: 2 / (b |1 + 1/b^2 - i b'/b|) by hand, exponent N = 1.
    EXPECT_NEAR(sp_closed_form_cs(1, 0.0, s, 1.0, 0.0), 0.894427, 1e-6);
}

TEST(MonteCarlo, PowerLawMatchesClosedForm) {
    auto s = trap_release_scaling();
    SamplerOptions o;
    o.n_samples = 1000000;
    auto r = sp_montecarlo(ModelSpec::power_law_cs(3, 1.0, 2.0), s, 1.0, 0.0, o);
    double exact = sp_closed_form_cs(3, 2.0, s, 1.0, 0.0);
    EXPECT_LT(std::abs(r.estimate - exact), 0.01 * exact);
    EXPECT_EQ(r.n_samples, 1000000);
    EXPECT_EQ(r.sampler, SamplerKind::Sobol);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
    auto s = trap_release_scaling();
    auto m = ModelSpec::exp_ll(4, 1.0, -1.0);
    SamplerOptions a;
    a.n_samples = 1 << 15;
    a.threads = 1;
    SamplerOptions b = a;
    b.threads = 5;
    auto ra = sp_montecarlo(m, s, 2.0, 0.0, a);
    auto rb = sp_montecarlo(m, s, 2.0, 0.0, b);
    EXPECT_EQ(ra.estimate, rb.estimate);
    EXPECT_EQ(ra.stderr_, rb.stderr_);
}

TEST(MonteCarlo, SeriesSharesSamples) {
    auto s = trap_release_scaling();
    auto m = ModelSpec::exp_ll(3, 1.0, -1.0);
    SamplerOptions o;
    o.n_samples = 1 << 14;
    auto series = sp_montecarlo_series(m, s, {0.5, 2.0}, 0.0, o);
    ASSERT_EQ(series.size(), 2u);
    EXPECT_EQ(series[1].estimate, sp_montecarlo(m, s, 2.0, 0.0, o).estimate);
}

TEST(MonteCarlo, Rejections) {
    auto s = trap_release_scaling();
    EXPECT_THROW(sp_montecarlo(ModelSpec::log_cs(3, 1.0, EtaSchedule::constant(1.0)), s, 1.0, 0.0),
                 InadmissibleProtocol);
    EXPECT_THROW(sp_montecarlo(ModelSpec::exp_ll(3, 0.0, -1.0), s, 1.0, 0.0), InadmissibleProtocol);
    GenericPair quartic;
    quartic.name = "quartic";
    quartic.value = [](double u) { return u * u * u * u; };
    quartic.continued = [](std::complex<double> z) { return z * z * z * z; };
    auto bad = ModelSpec::generic_even(3, 1.0, 3.0, quartic);
    EXPECT_THROW(sp_montecarlo(bad, s, 1.0, 0.0, pseudo(1 << 16, 1)), SamplerDivergence);
}

TEST(MonteCarlo, DegenerateWeightsAreReported) {
    // lambda0 = 3, c0 = 1 puts the integrand's mass near |y| ~ 3, far in the
    // proposal's tail: the estimate drifts with n while stderr stays small.
    auto s = trap_release_scaling();
    for (const auto& m : {ModelSpec::hyperbolic(2, 1.0, 3.0, 1.0), ModelSpec::exp_ll(4, 1.0, 1.0)}) {
        for (long n : {1L << 12, 1L << 18}) {
            SamplerOptions o;
            o.n_samples = n;
            EXPECT_THROW(sp_montecarlo(m, s, 0.5, 0.0, o), SamplerDivergence) << m.describe();
        }
    }
    SamplerOptions o;
    o.n_samples = 1 << 16;
    auto r = sp_montecarlo(ModelSpec::exp_ll(4, 1.0, -1.0), s, 0.5, 0.0, o);
    EXPECT_GT(r.effective_fraction, 1e-2);
    // Exact per sample, so never rejected.
    EXPECT_NO_THROW(sp_montecarlo(ModelSpec::power_law_cs(4, 1.0, 3.0), s, 0.5, 0.0, o));
}

TEST(MonteCarloProperty, EstimateInUnitInterval) {
    auto s = trap_release_scaling();
    Gen g(201);
    std::vector<ModelSpec> models = {ModelSpec::power_law_cs(3, 1.0, 2.0), ModelSpec::hyperbolic(3, 1.0, 1.0, 0.5),
                                     ModelSpec::exp_ll(3, 1.0, -1.0), ModelSpec::exp_ll(3, 1.0, 0.5),
                                     ModelSpec::generic_even(3, 1.0, 1.0, GenericPair::lorentzian(1.0))};
    for (const auto& m : models) {
        for (int k = 0; k < 5; ++k) {
            double t = g.uniform(0.0, 8.0);
            auto r = sp_montecarlo(m, s, t, 0.0, pseudo(1 << 16, 300 + k));
            ASSERT_GE(r.estimate, 0.0) << m.describe();
            ASSERT_LE(r.estimate - 3 * r.stderr_, 1.0) << m.describe();
        }
    }
}

TEST(MonteCarloProperty, ErrorScaling) {
    auto s = trap_release_scaling();
    auto m = ModelSpec::exp_ll(4, 1.0, -1.0);
    auto small = sp_montecarlo(m, s, 3.0, 0.0, pseudo(1 << 14, 11));
    auto large = sp_montecarlo(m, s, 3.0, 0.0, pseudo(1 << 16, 11));
    double ratio = small.stderr_ / large.stderr_;
    EXPECT_GT(ratio, 1.4);
    EXPECT_LT(ratio, 2.9);
    SamplerOptions sob;
    sob.n_samples = 1 << 16;
    EXPECT_LT(sp_montecarlo(m, s, 3.0, 0.0, sob).stderr_, large.stderr_);
}

TEST(Direct, Examples) {
    auto s = trap_release_scaling();
    EXPECT_NEAR(sp_direct_quadrature(ModelSpec::exp_ll(2, 1.0, -1.0), s, 0.0, 0.0), 1.0, 1e-12);
    EXPECT_NEAR(sp_direct_quadrature(ModelSpec::power_law_cs(2, 1.0, 1.0), s, 1.0, 0.0),
                sp_closed_form_cs(2, 1.0, s, 1.0, 0.0), 1e-6);
    EXPECT_THROW(sp_direct_quadrature(ModelSpec::exp_ll(4, 1.0, -1.0), s, 1.0, 0.0), DimensionTooLarge);
}

TEST(Direct, ContourShiftEquivalence) {
    auto s = trap_release_scaling();
    std::vector<ModelSpec> models = {ModelSpec::exp_ll(2, 1.0, -1.0), ModelSpec::power_law_cs(2, 1.0, 1.0),
                                     ModelSpec::hyperbolic(2, 1.0, 1.0, 1.0),
                                     ModelSpec::generic_even(2, 1.0, 1.0, GenericPair::lorentzian(1.0))};
    for (const auto& m : models) {
        for (double t : {0.5, 1.0, 2.0}) {
            double d = sp_direct_quadrature(m, s, t, 0.0);
            auto r = sp_montecarlo(m, s, t, 0.0);
            EXPECT_LE(std::abs(d - r.estimate), std::max(1e-4, 3 * r.stderr_)) << m.describe() << " t=" << t;
        }
    }
}

TEST(Direct, MatchesBruteForceInBothGauges) {
    // Independent of the estimator code: overlap assembled from log_psi alone.
    // The phases of tau cancel, so the gauge must not matter.
    auto s = trap_release_scaling();
    for (const auto& m : {ModelSpec::exp_ll(2, 1.0, -1.0), ModelSpec::hyperbolic(2, 1.0, 3.0, 1.0)}) {
        for (double t : {0.5, 2.0}) {
            double zero = overlap_bruteforce(m, s, t, 0.0, Gauge::ZeroOffset);
            double natural = overlap_bruteforce(m, s, t, 0.0, Gauge::Natural);
            EXPECT_NEAR(zero, natural, 1e-12) << m.describe();
            EXPECT_NEAR(sp_direct_quadrature(m, s, t, 0.0), zero, 1e-7) << m.describe() << " t=" << t;
        }
    }
}

TEST(Asymptote, TrapReleaseLimits) {
    auto s = scenario_scaling(QuenchScenario::trap_release(1.0), uniform_grid(0.0, 2000.0, 1.0));
    AsymptoteOptions o;
    o.sampler.n_samples = 1 << 18;
    auto cs = sp_asymptote(ModelSpec::power_law_cs(3, 1.0, 2.0), s, 0.0, o);
    EXPECT_EQ(cs.kind, AsymptoteKind::Exact);
    EXPECT_NEAR(cs.r0, 0.0, 1e-2);
    EXPECT_NEAR(std::norm(cs.alpha_inf_sq), 0.25, 1e-12);
    EXPECT_NEAR(cs.abs_alpha_inf * cs.abs_alpha_inf, 0.5, 1e-12);
    EXPECT_EQ(cs.at(s, 3.0), sp_closed_form_cs(3, 2.0, s, 3.0, 0.0));

    auto ll = sp_asymptote(ModelSpec::exp_ll(4, 1.0, -1.0), s, 0.0, o);
    EXPECT_EQ(ll.kind, AsymptoteKind::Limiting);
    EXPECT_EQ(ll.exponent, 4.0);
    EXPECT_GT(ll.prefactor, 0.0);
    const double t = 2000.0;
    SamplerOptions so;
    so.n_samples = 1 << 18;
    auto r = sp_montecarlo(ModelSpec::exp_ll(4, 1.0, -1.0), s, t, 0.0, so);
    double predicted = ll.at(s, t);
    EXPECT_LT(std::abs(r.estimate - predicted), 0.01 * predicted + 3 * (r.stderr_ + ll.prefactor_stderr / std::pow(s.b(t), 4)));
}

TEST(Asymptote, Refusals) {
    auto s = trap_release_scaling();
    EXPECT_THROW(sp_asymptote(ModelSpec::log_cs(3, 1.0, EtaSchedule::constant(1.0)), s, 0.0), NoAsymptote);
    EXPECT_THROW(sp_asymptote(ModelSpec::log_hyperbolic(3, 1.0, 1.0, EtaSchedule::sine(0.1)), s, 0.0), NoAsymptote);
    auto breathe = solve_forward(FrequencyProtocol::constant(2.0), 1.0, 0.0, uniform_grid(0.0, 40.0, 0.01));
    EXPECT_THROW(sp_asymptote(ModelSpec::exp_ll(3, 1.0, -1.0), breathe, 0.0), NoAsymptote);
}

TEST(Sampler, Names) {
    EXPECT_EQ(sampler_from_string("mc"), SamplerKind::Pseudo);
    EXPECT_EQ(sampler_from_string("sobol"), SamplerKind::Sobol);
    EXPECT_EQ(to_string(SamplerKind::Pseudo), "mc");
    EXPECT_THROW(sampler_from_string("halton"), ConfigError);
}

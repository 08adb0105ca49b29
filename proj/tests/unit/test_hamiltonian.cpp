#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "jastrow_dyn/hamiltonian.hpp"
#include "jastrow_dyn/pair.hpp"

using namespace jastrow_dyn;
using jastrow_dyn::testing::Gen;
using jastrow_dyn::testing::trap_release_scaling;

namespace {

ScalingSolution static_scaling() {
    return ScalingSolution::analytic(
        1.0, [](double) { return ScalingState{}; }, uniform_grid(0.0, 10.0, 0.5), -100.0, 100.0, "static");
}

// Real potential implied by the kinetic identity for eta = 0 and tau = 0:
// 1/2 m Omega^2 sum x^2 - N hbar omega/2 + (hbar^2/2m) sum_k [(sum_j G'_kj)^2 + sum_j G''_kj]
// - hbar omega sum_k x_k sum_j G'_kj.
double potential_oracle(const ModelSpec& m, const ScalingSolution& s, const ParticleConfig& x, double t) {
    const double hbar = m.units().hbar, mass = m.units().mass;
    auto st = s.state(t);
    const double omega = s.omega(t);
    const double trap = omega * omega - st.b_ddot / st.b;
    const auto n = x.size();
    double v = -0.5 * static_cast<double>(n) * hbar * omega;
    for (std::size_t k = 0; k < n; ++k) {
        double g1 = 0.0, g2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            auto d = gamma_eval(m, s, x[k] - x[j], t);
            g1 += d.gamma_p;
            g2 += d.gamma_pp;
        }
        v += 0.5 * mass * trap * x[k] * x[k] + hbar * hbar / (2 * mass) * (g1 * g1 + g2) - hbar * omega * x[k] * g1;
    }
    return v;
}

}  // namespace

TEST(ParentCoeffs, ExpLLCouplings) {
    auto h = parent_coeffs(ModelSpec::exp_ll(4, 1.0, -1.0), static_scaling(), 0.0);
    EXPECT_NEAR(h.contact, -2.0, 1e-15);
    EXPECT_NEAR(h.abs_lin, 1.0, 1e-15);
    EXPECT_EQ(h.inv_sq, 0.0);
}

TEST(ParentCoeffs, PowerLawIsConstant) {
    auto s = trap_release_scaling();
    auto m = ModelSpec::power_law_cs(3, 1.0, 2.0);
    for (double t : {0.0, 0.7, 4.0}) EXPECT_NEAR(parent_coeffs(m, s, t).inv_sq, 2.0, 1e-15);
}

TEST(ParentCoeffs, LogCSConstantEta) {
    auto h = parent_coeffs(ModelSpec::log_cs(3, 1.0, EtaSchedule::constant(0.8)), trap_release_scaling(), 1.0);
    EXPECT_NEAR(h.inv_sq, -(0.64 + 1.0) / 4, 1e-15);
    EXPECT_EQ(h.log_pair, 0.0);
    auto hs = parent_coeffs(ModelSpec::log_cs(3, 1.0, EtaSchedule::sine(1.0)), trap_release_scaling(), 1.0);
    EXPECT_NEAR(hs.log_pair, -0.5 * std::cos(1.0), 1e-15);
}

TEST(PseudoParent, Examples) {
    auto still = static_scaling();
    auto m = ModelSpec::exp_ll(3, 1.0, -1.0);
    auto a = parent_coeffs(m, still, 0.5, Gauge::Natural);
    auto b = pseudo_parent_coeffs(m, still, 0.5);
    auto ra = a.csv_row(), rb = b.csv_row();
    for (std::size_t k = 0; k < ra.size(); ++k) EXPECT_NEAR(ra[k], rb[k], 1e-15) << HamiltonianCoeffs::csv_columns()[k];

    auto rel = trap_release_scaling();
    EXPECT_NEAR(pseudo_parent_coeffs(m, rel, 1.0).trap_sq, 0.25, 1e-14);
    EXPECT_NEAR(parent_coeffs(m, rel, 1.0).trap_sq, 0.0, 1e-14);

    // Two particles keep W3 out of the hyperbolic offset.
    auto hy = pseudo_parent_coeffs(ModelSpec::hyperbolic(2, 1.0, 3.0, 1.0), still, 0.0);
    EXPECT_NEAR(hy.offset, -1.0 + 2.0 * 1.0 * 9.0 / 2.0, 1e-13);
}

TEST(FrameRelation, OnlyTrapAndOffsetDiffer) {
    auto s = trap_release_scaling();
    auto cols = HamiltonianCoeffs::csv_columns();
    for (const auto& m : jastrow_dyn::testing::admissible_models(3)) {
        if (m.carries_eta()) continue;
        for (double t : {0.3, 1.0, 3.0}) {
            auto ra = parent_coeffs(m, s, t, Gauge::Natural).csv_row();
            auto rb = pseudo_parent_coeffs(m, s, t).csv_row();
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (cols[k] == "trap_sq" || cols[k] == "offset") continue;
                EXPECT_NEAR(ra[k], rb[k], 1e-14) << m.describe() << " " << cols[k];
            }
        }
    }
}

TEST(Gauge, ZeroOffsetEverywhere) {
    auto s = trap_release_scaling();
    for (const auto& m : jastrow_dyn::testing::admissible_models(4)) {
        for (double t : s.t_grid()) ASSERT_NEAR(parent_coeffs(m, s, t).offset, 0.0, 1e-10) << m.describe();
    }
}

TEST(Gauge, TauExamples) {
    auto s = trap_release_scaling();
    auto ll = ModelSpec::exp_ll(4, 1.0, -1.0);
    EXPECT_EQ(gauge_tau(ll, s, 0.0), 0.0);
    EXPECT_NEAR(gauge_tau(ll, s, 1.0), std::numbers::pi / 2, 1e-10);
    auto cs = ModelSpec::power_law_cs(3, 1.0, 2.0);
    // -(1/2)[(N-1) lambda0 + 1] int omega0/b^2 = -(5/2) arctan t
    EXPECT_NEAR(gauge_tau(cs, s, 2.0), -2.5 * std::atan(2.0), 1e-10);
}

TEST(STA, Control) {
    auto still = static_scaling();
    auto z = sta_control(ModelSpec::power_law_cs(3, 1.0, 2.0), still, 1.0);
    EXPECT_EQ(z.squeeze, 0.0);
    EXPECT_EQ(z.pair_momentum, 0.0);

    auto s = trap_release_scaling(1.0);
    Gen g(21);
    for (int k = 0; k < 100; ++k) {
        double t = g.uniform(0.0, 10.0);
        EXPECT_NEAR(sta_control(ModelSpec::exp_ll(3, 1.0, -1.0), s, t).squeeze, t / (2 * (1 + t * t)), 1e-10);
    }
    auto w = scenario_scaling(QuenchScenario::trap_release(2.0), uniform_grid(0.0, 3.0, 0.01));
    EXPECT_NEAR(sta_control(ModelSpec::exp_ll(3, 2.0, -1.0), w, 1.5).squeeze, 4.0 * 1.5 / (2 * (1 + 9.0)), 1e-10);

    auto log = sta_control(ModelSpec::log_cs(3, 1.0, EtaSchedule::constant(0.6)), s, 1.0);
    EXPECT_NEAR(log.pair_momentum, 0.3, 1e-15);
    EXPECT_NEAR(log.pair_kernel, 0.6 / 4, 1e-15);
}

TEST(LogHyperbolic, FlowIdentity) {
    // varpi c + eta c_dot = (1 + eta^2) omega c, the form the flow actually obeys.
    auto s = trap_release_scaling();
    auto m = ModelSpec::log_hyperbolic(3, 1.0, 1.0, EtaSchedule::sine(0.1));
    for (double t : uniform_grid(0.0, 5.0, 0.25)) {
        auto sl = time_slice(m, s, t);
        auto h = parent_coeffs(m, s, t);
        double lhs = h.varpi * sl.c + sl.eta * sl.c_dot;
        EXPECT_NEAR(lhs, (1 + sl.eta * sl.eta) * sl.omega * sl.c, 1e-10);
    }
}

TEST(Impulses, PhaseSlipKick) {
    auto m = ModelSpec::log_cs(3, 1.0, EtaSchedule::step_down(0.7));
    auto still = static_scaling();
    auto kicks = eta_impulses(m, still, -1.0, 1.0);
    ASSERT_EQ(kicks.size(), 1u);
    EXPECT_EQ(kicks[0].time, 0.0);
    EXPECT_NEAR(kicks[0].weight, 0.35, 1e-15);
    EXPECT_EQ(kicks[0].kernel, "log_abs");
    EXPECT_TRUE(eta_impulses(m, still, 0.5, 1.0).empty());
}

TEST(Potential, Examples) {
    auto still = static_scaling();
    auto one = ModelSpec::exp_ll(1, 1.0, -1.0);
    auto h1 = parent_coeffs(one, still, 0.0, Gauge::Natural);
    ParticleConfig x1{0.8};
    EXPECT_NEAR(potential_energy(one, h1, x1), 0.5 * 0.64 + h1.offset, 1e-15);

    ParticleConfig x2{0.5, -0.5};
    EXPECT_NEAR(potential_energy(ModelSpec::exp_ll(2, 1.0, -1.0), still, x2, 0.0), 0.25 + 1.0, 1e-14);
}

TEST(PotentialProperty, MatchesKineticIdentityOracle) {
    auto s = trap_release_scaling();
    Gen g(22);
    std::vector<ModelSpec> models = {ModelSpec::power_law_cs(3, 1.0, 2.0), ModelSpec::hyperbolic(3, 1.0, 3.0, 1.0),
                                     ModelSpec::exp_ll(3, 1.0, -1.0),
                                     ModelSpec::generic_even(3, 1.0, 1.0, GenericPair::lorentzian(1.0)),
                                     ModelSpec::generic_even(4, 1.0, 0.7, GenericPair::log_cosh(0.5))};
    for (const auto& m : models) {
        for (int k = 0; k < 200; ++k) {
            double t = g.uniform(0.0, 5.0);
            auto x = g.config(m.n_particles(), 3.0, 0.05);
            double v = potential_energy(m, s, x, t, Gauge::Natural);
            double ref = potential_oracle(m, s, x, t);
            ASSERT_NEAR(v, ref, 1e-9 * std::max(1.0, std::abs(ref))) << m.describe() << " t=" << t;
        }
    }
}

// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,3] [--expect-fail 4,5]
//
// Exit status is 0 when the set of failing criteria equals the --expect-fail
// list (empty by default), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "overlap.hpp"
#include "jastrow_dyn/consistency.hpp"
#include "jastrow_dyn/ermakov.hpp"
#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/hamiltonian.hpp"
#include "jastrow_dyn/quench.hpp"
#include "jastrow_dyn/sampling.hpp"
#include "jastrow_dyn/survival.hpp"
#include "jastrow_dyn/wavefunction.hpp"

using namespace jastrow_dyn;
using jastrow_dyn::testing::trap_release_scaling;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.insert(std::stoi(item));
    }
    return out;
}

std::vector<ParticleConfig> phi_samples(const ModelSpec& m, const ScalingSolution& s, double t, std::uint64_t seed) {
    MetropolisOptions o;
    o.seed = seed;
    return sample_phi(m, s, t, o).samples;
}

const EtaSchedule& eta_of(const ModelSpec& m) {
    static const EtaSchedule zero = EtaSchedule::zero();
    return m.carries_eta() ? m.eta() : zero;
}

std::vector<ModelSpec> listed_models(int n) {
    return {ModelSpec::power_law_cs(n, 1.0, 2.0),
            ModelSpec::log_cs(n, 1.0, EtaSchedule::constant(1.0)),
            ModelSpec::log_cs(n, 1.0, EtaSchedule::sine(1.0)),
            ModelSpec::hyperbolic(n, 1.0, 3.0, 1.0),
            ModelSpec::log_hyperbolic(n, 1.0, 1.0, EtaSchedule::sine(0.1)),
            ModelSpec::exp_ll(n, 1.0, -1.0)};
}

SamplerOptions sobol(long n, std::uint64_t seed = 1) {
    SamplerOptions o;
    o.n_samples = n;
    o.seed = seed;
    o.kind = SamplerKind::Sobol;
    return o;
}

Outcome tdse_exactness() {
    const auto start = std::chrono::steady_clock::now();
    auto s = trap_release_scaling();
    double worst = 0.0;
    std::string worst_name;
    std::uint64_t seed = 100;
    for (const auto& m : listed_models(3)) {
        for (int k = 0; k < 10; ++k) {
            const double t = 0.5 + k;
            const double r = tdse_residual(m, s, phi_samples(m, s, t, ++seed), t);
            if (r > worst) {
                worst = r;
                worst_name = m.describe();
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst < 1e-6 && secs < 120.0,
            fmt("max residual %.2e (%s), %.1f s", worst, worst_name.c_str(), secs)};
}

Outcome ermakov() {
    auto grid = uniform_grid(0.0, 10.0, 1e-3);
    auto free = solve_forward(FrequencyProtocol::constant(0.0), 1.0, 0.0, grid);
    auto breathe = solve_forward(FrequencyProtocol::constant(2.0), 1.0, 0.0, grid);
    double free_err = 0.0, breathe_err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        const double exact = std::sqrt(1.0 + t * t);
        free_err = std::max(free_err, std::abs(free.b_samples()[k] - exact) / exact);
        const double c = std::cos(2 * t), sn = std::sin(2 * t);
        const double osc = std::sqrt(c * c + 0.25 * sn * sn);
        breathe_err = std::max(breathe_err, std::abs(breathe.b_samples()[k] - osc) / osc);
    }
    const double drift = std::max(conserved_energy_drift(free, FrequencyProtocol::constant(0.0), 0.0, 10.0),
                                  conserved_energy_drift(breathe, FrequencyProtocol::constant(2.0), 0.0, 10.0));
    return {free_err < 1e-8 && breathe_err < 1e-8 && drift < 1e-8,
            fmt("free %.1e, breathing %.1e, energy drift %.1e", free_err, breathe_err, drift)};
}

Outcome closed_form_sp() {
    auto s = trap_release_scaling();
    auto m = ModelSpec::power_law_cs(3, 1.0, 2.0);
    const double exact = sp_closed_form_cs(3, 2.0, s, 1.0, 0.0);
    const auto r = sp_montecarlo(m, s, 1.0, 0.0, sobol(1000000));
    const auto at_t0 = sp_montecarlo(m, s, 1.0, 1.0, sobol(4096));
    const double rel = std::abs(r.estimate - exact) / exact;
    const bool ok = rel < 0.01 && std::abs(exact - 0.1876) < 5e-5 && at_t0.estimate == 1.0 &&
                    sp_closed_form_cs(3, 2.0, s, 1.0, 1.0) == 1.0;
    return {ok, fmt("MC %.6f vs closed form %.6f (rel %.1e), SP(t0,t0) = %.17g", r.estimate, exact, rel,
                    at_t0.estimate)};
}

Outcome figure2() {
    auto m = ModelSpec::exp_ll(4, 1.0, -1.0);
    auto s = trap_release_scaling(1.0, 20.0);
    std::vector<double> times;
    for (int k = 1; k <= 20; ++k) times.push_back(k);
    const auto rs = sp_montecarlo_series(m, s, times, 0.0, sobol(1000000));
    std::vector<double> y, dy;
    for (const auto& r : rs) {
        if (r.t < 5.0) continue;
        const double b4 = std::pow(s.b(r.t), 4);
        y.push_back(r.estimate * b4);
        dy.push_back(r.stderr_ * b4);
    }
    double mean = 0.0;
    for (double v : y) mean += v / static_cast<double>(y.size());
    double worst = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < y.size(); ++k) {
        worst = std::max(worst, std::abs(y[k] - mean) / mean);
        ok = ok && std::abs(y[k] - mean) <= 0.05 * mean + 3.0 * dy[k];
    }
    return {ok, fmt("SP b^4 from %.2f (t=5) to %.2f (t=20), max deviation %.0f%% of the mean", y.front(), y.back(),
                    100.0 * worst)};
}

Outcome figure4() {
    const double kappa = 5.0, t0 = -50.0 / kappa;
    auto m = ModelSpec::exp_ll(4, 1.0, -1.0);
    auto sc = QuenchScenario::interaction_sigmoid(1.0, kappa, t0);
    auto s = scenario_scaling(sc, uniform_grid(t0, 50.0 / kappa, 0.01));
    AsymptoteOptions ao;
    ao.sampler = sobol(1000000);
    ao.r0 = kappa;
    const auto asym = sp_asymptote(m, s, t0, ao);

    auto check = [&](double lo, double hi, double& worst) {
        std::vector<double> times;
        for (double x = lo; x <= hi + 1e-9; x += 5.0) times.push_back(x / kappa + t0);
        bool ok = true;
        worst = 0.0;
        for (const auto& r : sp_montecarlo_series(m, s, times, t0, sobol(1000000))) {
            const double pred = asym.evaluate(s.b(r.t));
            const double sigma = std::hypot(r.stderr_, pred * asym.prefactor_stderr / asym.prefactor);
            worst = std::max(worst, std::abs(r.estimate - pred) / pred);
            ok = ok && std::abs(r.estimate - pred) <= 0.05 * pred + 3.0 * sigma;
        }
        return ok;
    };
    double literal = 0.0, late = 0.0;
    const bool ok = check(5.0, 50.0, literal);
    check(55.0, 100.0, late);
    return {ok, fmt("C = %.4f; window kappa(t-t0) in [5,50]: max deviation %.1f%%; "
                    "kappa(t-t0) in [55,100]: %.2f%%",
                    asym.prefactor, 100.0 * literal, 100.0 * late)};
}

Outcome contour_shift() {
    auto s = trap_release_scaling();
    double worst = 0.0;
    bool ok = true;
    for (const auto& m : {ModelSpec::exp_ll(2, 1.0, -1.0), ModelSpec::power_law_cs(2, 1.0, 1.0)}) {
        const auto rs = sp_montecarlo_series(m, s, {0.5, 1.0, 2.0}, 0.0, sobol(1000000));
        for (const auto& r : rs) {
            const double direct = sp_direct_quadrature(m, s, r.t, 0.0);
            const double diff = std::abs(direct - r.estimate);
            worst = std::max(worst, diff);
            ok = ok && diff <= std::max(1e-4, 3.0 * r.stderr_);
        }
    }
    return {ok, fmt("max |direct - shifted| = %.1e", worst)};
}

Outcome logcs_bound() {
    auto s = trap_release_scaling();
    bool ok = sp_upper_bound_logcs(3, s, 1.0, 1.0) == 1.0;
    // The bound is a decreasing function of b b0 |alpha|^2.
    std::vector<std::pair<double, double>> pts;
    for (double t = 0.25; t <= 10.0; t += 0.25) {
        pts.emplace_back(s.b(t) * alpha(s, t, 1.0).abs_alpha * alpha(s, t, 1.0).abs_alpha,
                         sp_upper_bound_logcs(3, s, t, 1.0));
    }
    std::sort(pts.begin(), pts.end());
    // Times mirrored about t0 give equal keys up to roundoff.
    for (std::size_t k = 1; k < pts.size(); ++k) ok = ok && pts[k].second <= pts[k - 1].second + 1e-14;
    double reduction = 0.0;
    for (double t : {0.25, 0.5, 2.0, 5.0})
        reduction = std::max(reduction, std::abs(sp_upper_bound_logcs(3, s, t, 1.0) - sp_closed_form_cs(3, 0.5, s, t, 1.0)));
    ok = ok && reduction < 1e-12;
    // Reported, not graded: the eta(t) = sin t gas can exceed the bound, so
    // the largest excess of its N = 2 overlap is printed for the record.
    auto m = ModelSpec::log_cs(2, 1.0, EtaSchedule::sine(1.0));
    double excess = -1.0;
    for (double t0 : {0.0, 1.0}) {
        for (double t : {0.5, 2.0, 4.0}) {
            const double sp = testing::overlap_bruteforce(m, s, t, t0, Gauge::ZeroOffset);
            excess = std::max(excess, sp - sp_upper_bound_logcs(2, s, t, t0));
        }
    }
    return {ok, fmt("bound(t0,t0) = 1, monotone over %zu times, |bound - CS(1/2)| = %.1e; "
                    "eta = sin t overlap minus bound up to %.1e",
                    pts.size(), reduction, excess)};
}

Outcome hermiticity() {
    auto s = trap_release_scaling();
    const auto times = uniform_grid(0.25, 5.0, 0.25);
    double ok_max = 0.0;
    for (const auto& m : listed_models(3)) {
        auto rep = hermiticity_check(m, eta_of(m), s, phi_samples(m, s, 1.0, 3), times);
        ok_max = std::max({ok_max, rep.max_spread(), rep.two_body_residual, rep.one_body_residual});
    }
    auto cs_cfg = phi_samples(ModelSpec::power_law_cs(3, 1.0, 2.0), s, 1.0, 3);
    auto drift = PairField::power_law([](double t) { return 2.0 + 0.1 * std::sin(t); },
                                      [](double t) { return 0.1 * std::cos(t); });
    const double cs_bad = hermiticity_check(drift, EtaSchedule::zero(), s, {}, 3, cs_cfg, times).max_spread();
    auto hy_cfg = phi_samples(ModelSpec::hyperbolic(3, 1.0, 3.0, 1.0), s, 1.0, 3);
    auto frozen = PairField::hyperbolic(3.0, [](double) { return 1.0; }, [](double) { return 0.0; });
    const double hy_bad = hermiticity_check(frozen, EtaSchedule::zero(), s, {}, 3, hy_cfg, times).max_spread();
    auto ll = ModelSpec::exp_ll(3, 1.0, -1.0);
    const double ll_bad =
        hermiticity_check(ll, EtaSchedule::constant(0.3), s, phi_samples(ll, s, 1.0, 3), times).max_spread();
    const double bad_min = std::min({cs_bad, hy_bad, ll_bad});
    return {ok_max < 1e-8 && bad_min >= 1e-4,
            fmt("admissible max %.1e; corrupted CS %.1e, Hyperbolic %.1e, LL %.1e", ok_max, cs_bad, hy_bad, ll_bad)};
}

Outcome sta_frame() {
    auto s = trap_release_scaling();
    const auto cols = HamiltonianCoeffs::csv_columns();
    double frame = 0.0, zero_mode = 0.0, squeeze = 0.0, pair = 0.0;
    for (const auto& m : listed_models(3)) {
        for (double t : {0.5, 2.0}) zero_mode = std::max(zero_mode, zero_mode_residual(m, s, phi_samples(m, s, t, 81), t));
        if (m.carries_eta()) continue;
        for (double t : {0.3, 1.0, 3.0, 7.0}) {
            const auto a = parent_coeffs(m, s, t, Gauge::Natural).csv_row();
            const auto b = pseudo_parent_coeffs(m, s, t).csv_row();
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (cols[k] != "trap_sq" && cols[k] != "offset") frame = std::max(frame, std::abs(a[k] - b[k]));
            }
            const auto c = sta_control(m, s, t);
            squeeze = std::max(squeeze, std::abs(c.squeeze - t / (2.0 * (1.0 + t * t))));
            pair = std::max(pair, std::abs(c.pair_momentum));
        }
    }
    return {frame < 1e-14 && zero_mode < 1e-6 && squeeze < 1e-10 && pair == 0.0,
            fmt("frame %.1e, zero mode %.1e, squeeze %.1e, pair control %.1e", frame, zero_mode, squeeze, pair)};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected, only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--expect-fail" || arg == "--only") && i + 1 < argc) {
            (arg == "--only" ? only : expected) = parse_list(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only LIST] [--expect-fail LIST]\n");
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"tdse-exactness", tdse_exactness},   {"ermakov", ermakov},
        {"closed-form-sp", closed_form_sp},   {"trap-quench-asymptote", figure2},
        {"sigmoid-quench-asymptote", figure4}, {"contour-shift", contour_shift},
        {"logcs-bound", logcs_bound},         {"hermiticity", hermiticity},
        {"sta-frame", sta_frame}};

    std::set<int> failed;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& e) {
            out = {false, std::string("threw: ") + e.what()};
        }
        if (!out.pass) failed.insert(id);
        std::printf("%s %d %s: %s\n", out.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), out.detail.c_str());
        std::fflush(stdout);
    }
    if (!only.empty()) {
        std::set<int> e;
        std::set_intersection(expected.begin(), expected.end(), only.begin(), only.end(), std::inserter(e, e.begin()));
        expected = e;
    }
    return failed == expected ? 0 : 1;
}

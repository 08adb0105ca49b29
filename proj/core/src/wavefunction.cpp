#include "jastrow_dyn/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "jastrow_dyn/consistency.hpp"
#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

namespace {

double eta_omega_integral(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    return integrate([&](double s) { return model.eta().eta(s) * scaling.omega(s); }, 0.0, t, 1e-13);
}

double eta_c2_integral(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    return integrate(
        [&](double s) {
            const TimeSlice sl = time_slice(model, scaling, s);
            return sl.eta * sl.c * sl.c;
        },
        0.0, t, 1e-13);
}

}  // namespace

NormalizationExponent normalization_exponent(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    const double n = model.n_particles();
    const double lnb = std::log(scaling.b(t));
    const double hbar_m = model.units().hbar / model.units().mass;
    NormalizationExponent out;
    out.one_body = 0.5 * n * lnb;
    switch (model.family()) {
        case Family::PowerLawCS:
            out.pair = 0.5 * model.lambda() * n * (n - 1.0) * lnb;
            break;
        case Family::LogCS:
            out.pair = 0.25 * n * (n - 1.0) * (lnb - eta_omega_integral(model, scaling, t));
            break;
        case Family::LogHyperbolic: {
            const double integral = model.eta().is_zero() ? 0.0 : eta_c2_integral(model, scaling, t);
            out.pair = hbar_m * 0.25 * n * (n - 1.0) * integral;
            out.triple = hbar_m * n * (n - 1.0) * (n - 2.0) / 12.0 * integral;
            break;
        }
        case Family::Hyperbolic:
        case Family::ExpLL:
        case Family::GenericEven:
            break;
    }
    out.value = out.one_body + out.pair + out.triple;
    return out;
}

std::vector<double> normalization_exponent_trapezoid(const ModelSpec& model, const ScalingSolution& scaling,
                                                     const std::vector<double>& t_grid) {
    if (t_grid.empty() || t_grid.front() != 0.0) throw InadmissibleProtocol("trapezoid grid must start at 0");
    const double n = model.n_particles();
    const double hbar_m = model.units().hbar / model.units().mass;
    const auto x_grid = default_x_grid(model.units(), model.omega0());
    const EtaSchedule eta = model.carries_eta() ? model.eta() : EtaSchedule::zero();
    const TwoBodyResult two = two_body_residual(model, eta, scaling, x_grid, t_grid);
    std::vector<double> rate(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const TimeSlice sl = time_slice(model, scaling, t_grid[k]);
        const double w3 = w3_value(model, sl).value_or(0.0);
        rate[k] = 0.5 * n * sl.b_dot / sl.b + hbar_m * (0.5 * n * (n - 1.0) * two.n2_dot[k] + 2.0 * sl.eta * w3);
    }
    return cumulative_trapezoid(t_grid, rate);
}

PsiSlice psi_slice(const ModelSpec& model, const ScalingSolution& scaling, double t, Gauge gauge, double t_ref) {
    PsiSlice ps;
    ps.slice = time_slice(model, scaling, t);
    ps.n_exp = normalization_exponent(model, scaling, t).value;
    ps.tau = gauge == Gauge::ZeroOffset ? gauge_tau(model, scaling, t, t_ref) : 0.0;
    return ps;
}

namespace {

// Sum of pair values over a sorted copy so that any permutation gives identical bits.
double pair_sum(const ModelSpec& model, const TimeSlice& sl, std::span<const double> x, std::vector<double>& sorted) {
    sorted.assign(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    double s = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) s += pair_derivatives(model, sl, sorted[j] - sorted[i]).gamma;
    }
    return s;
}

double square_sum(const std::vector<double>& sorted) {
    double s = 0.0;
    for (double v : sorted) s += v * v;
    return s;
}

}  // namespace

LogPsi log_psi(const ModelSpec& model, const PsiSlice& ps, std::span<const double> x) {
    const TimeSlice& sl = ps.slice;
    const double m_hbar = model.units().mass / model.units().hbar;
    std::vector<double> sorted;
    const double g = pair_sum(model, sl, x, sorted);
    const double x2 = square_sum(sorted);
    LogPsi out;
    out.log_amp = g - 0.5 * m_hbar * sl.omega * x2 - ps.n_exp;
    out.phase = sl.eta * g + 0.5 * m_hbar * sl.b_dot / sl.b * x2 + static_cast<double>(x.size()) * ps.tau;
    return out;
}

LogPsi log_psi(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t, Gauge gauge) {
    return log_psi(model, psi_slice(model, scaling, t, gauge), x);
}

double log_phi(const ModelSpec& model, const PsiSlice& ps, std::span<const double> x) {
    return log_psi(model, ps, x).log_amp;
}

double log_phi(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t) {
    PsiSlice ps;
    ps.slice = time_slice(model, scaling, t);
    ps.n_exp = normalization_exponent(model, scaling, t).value;
    return log_phi(model, ps, x);
}

LogDerivatives log_derivatives(const ModelSpec& model, const TimeSlice& sl, std::span<const double> x, bool real) {
    using cd = std::complex<double>;
    const std::size_t n = x.size();
    const double m_hbar = model.units().mass / model.units().hbar;
    const cd pair_weight = real ? cd(1.0, 0.0) : cd(1.0, sl.eta);
    const cd a = m_hbar * (real ? cd(-sl.omega, 0.0) : cd(-sl.omega, sl.b_dot / sl.b));
    LogDerivatives d;
    d.grad.assign(n, 0.0);
    d.laplacian = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d.grad[i] += a * x[i];
        d.laplacian += a;
        for (std::size_t j = i + 1; j < n; ++j) {
            const PairDerivatives p = pair_derivatives(model, sl, x[i] - x[j]);
            d.grad[i] += pair_weight * p.gamma_p;
            d.grad[j] -= pair_weight * p.gamma_p;
            d.laplacian += 2.0 * pair_weight * p.gamma_pp;
        }
    }
    return d;
}

namespace {

std::complex<double> kinetic_over_psi(const ModelSpec& model, const LogDerivatives& d) {
    const double k = model.units().hbar * model.units().hbar / (2.0 * model.units().mass);
    std::complex<double> s = d.laplacian;
    for (const auto& g : d.grad) s += g * g;
    return -k * s;
}

double default_dt(const ScalingSolution& scaling, double dt, double unit = 1e-5) {
    return dt > 0.0 ? dt : unit / std::max(scaling.omega0(), 1e-300);
}

// Slice at t + h with tau and N advanced by local quadrature from the slice at t.
PsiSlice shifted_slice(const ModelSpec& model, const ScalingSolution& scaling, const PsiSlice& base, double h,
                       Gauge gauge) {
    PsiSlice ps;
    const double t = base.slice.t + h;
    ps.slice = time_slice(model, scaling, t);
    ps.n_exp = normalization_exponent(model, scaling, t).value;
    ps.tau = base.tau;
    if (gauge == Gauge::ZeroOffset) {
        ps.tau += integrate([&](double s) { return gauge_tau_dot(model, time_slice(model, scaling, s)); },
                            base.slice.t, t, 1e-12);
    }
    return ps;
}

}  // namespace

double tdse_residual(const ModelSpec& model, const ModelSpec& hamiltonian, const ScalingSolution& scaling,
                     std::span<const ParticleConfig> configs, double t, const TdseOptions& options) {
    const double dt = default_dt(scaling, options.dt, 1e-3);
    const double hbar = model.units().hbar;
    const double scale = hbar * std::max(scaling.omega0(), 1e-300);
    const PsiSlice center = psi_slice(model, scaling, t, options.gauge, options.t_ref);
    // Fourth-order stencil: truncation and roundoff both stay small for fast ramps.
    const PsiSlice p1 = shifted_slice(model, scaling, center, dt, options.gauge);
    const PsiSlice m1 = shifted_slice(model, scaling, center, -dt, options.gauge);
    const PsiSlice p2 = shifted_slice(model, scaling, center, 2.0 * dt, options.gauge);
    const PsiSlice m2 = shifted_slice(model, scaling, center, -2.0 * dt, options.gauge);
    const HamiltonianCoeffs h = parent_coeffs(hamiltonian, scaling, t, options.gauge);
    double worst = 0.0;
    for (const ParticleConfig& x : configs) {
        const LogPsi a = log_psi(model, p1, x);
        const LogPsi b = log_psi(model, m1, x);
        const LogPsi c = log_psi(model, p2, x);
        const LogPsi e = log_psi(model, m2, x);
        const double den = 12.0 * dt;
        const std::complex<double> dlog((8.0 * (a.log_amp - b.log_amp) - (c.log_amp - e.log_amp)) / den,
                                        (8.0 * (a.phase - b.phase) - (c.phase - e.phase)) / den);
        const LogDerivatives d = log_derivatives(model, center.slice, x, false);
        const std::complex<double> h_psi = kinetic_over_psi(model, d) + potential_energy(hamiltonian, h, x);
        const double r = std::abs(std::complex<double>(0.0, hbar) * dlog - h_psi) / scale;
        worst = std::max(worst, r);
    }
    return worst;
}

double tdse_residual(const ModelSpec& model, const ScalingSolution& scaling, std::span<const ParticleConfig> configs,
                     double t, const TdseOptions& options) {
    return tdse_residual(model, model, scaling, configs, t, options);
}

double tdse_residual(const ModelSpec& model, const ScalingSolution& scaling, const ParticleConfig& config, double t,
                     const TdseOptions& options) {
    return tdse_residual(model, model, scaling, std::span<const ParticleConfig>(&config, 1), t, options);
}

double zero_mode_residual(const ModelSpec& model, const ScalingSolution& scaling, std::span<const ParticleConfig> configs,
                          double t) {
    const TimeSlice sl = time_slice(model, scaling, t);
    const HamiltonianCoeffs h = pseudo_parent_coeffs(model, scaling, t);
    const double scale = model.units().hbar * std::max(scaling.omega0(), 1e-300);
    double worst = 0.0;
    for (const ParticleConfig& x : configs) {
        const LogDerivatives d = log_derivatives(model, sl, x, true);
        const std::complex<double> v = kinetic_over_psi(model, d) + potential_energy(model, h, x);
        worst = std::max(worst, std::abs(v) / scale);
    }
    return worst;
}

double counterdiabatic_residual(const ModelSpec& model, const ScalingSolution& scaling,
                                std::span<const ParticleConfig> configs, double t, double dt) {
    const double h = default_dt(scaling, dt);
    const double hbar = model.units().hbar;
    const TimeSlice sl = time_slice(model, scaling, t);
    const STAControl ctrl = sta_control(model, scaling, t);
    PsiSlice p0, pp, pm;
    p0.slice = sl;
    pp.slice = time_slice(model, scaling, t + h);
    pm.slice = time_slice(model, scaling, t - h);
    pp.n_exp = normalization_exponent(model, scaling, t + h).value;
    pm.n_exp = normalization_exponent(model, scaling, t - h).value;
    std::vector<double> re, im;
    for (const ParticleConfig& x : configs) {
        const double dlog = (log_phi(model, pp, x) - log_phi(model, pm, x)) / (2.0 * h);
        const LogDerivatives d = log_derivatives(model, sl, x, true);
        // {f, p} Phi / Phi = -i hbar (2 f dL + f').
        std::complex<double> ctrl_term = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            ctrl_term += ctrl.squeeze * (2.0 * x[k] * d.grad[k] + 1.0);
            for (std::size_t j = k + 1; j < x.size(); ++j) {
                const PairDerivatives pd = pair_derivatives(model, sl, x[k] - x[j]);
                ctrl_term += ctrl.pair_momentum * (2.0 * pd.gamma_p * (d.grad[k] - d.grad[j]) + 2.0 * pd.gamma_pp);
            }
        }
        ctrl_term *= std::complex<double>(0.0, -hbar);
        const std::complex<double> r = std::complex<double>(0.0, hbar * dlog) - ctrl_term;
        re.push_back(r.real());
        im.push_back(r.imag());
    }
    const auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    const double scale = hbar * std::max(scaling.omega0(), 1e-300);
    return std::max(spread(re), spread(im)) / scale;
}

}  // namespace jastrow_dyn

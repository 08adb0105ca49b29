#include "jastrow_dyn/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

namespace {

double spread(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double pair_l(const PairDerivatives& d, double x, double eta, double c2, double m_over_hbar) {
    return eta * d.gamma_pp + 2.0 * eta * d.gamma_p * d.gamma_p + m_over_hbar * d.gamma_t -
           m_over_hbar * c2 * x * d.gamma_p;
}

// omega_dot by a five-point stencil of omega0/b^2 kept inside the scaling support.
double omega_dot_fd(const ScalingSolution& scaling, double t) {
    const double h = 1e-3 * std::max(1.0, 1.0 / std::max(scaling.omega0(), 1e-300));
    const double span = std::min(h, 0.2 * (scaling.t_max() - scaling.t_min()));
    std::vector<double> stencil;
    double start = t - 2.0 * span;
    if (start < scaling.t_min()) start = scaling.t_min();
    if (start + 4.0 * span > scaling.t_max()) start = scaling.t_max() - 4.0 * span;
    for (int k = 0; k < 5; ++k) stencil.push_back(start + k * span);
    const auto w = fd_weights(t, stencil, 1);
    double d = 0.0;
    for (int k = 0; k < 5; ++k) d += w[static_cast<std::size_t>(k)] * scaling.omega(stencil[static_cast<std::size_t>(k)]);
    return d;
}

}  // namespace

PairField PairField::from_model(const ModelSpec& model, const ScalingSolution& scaling) {
    PairField f;
    f.name = model.describe();
    f.pair = [model, scaling](double x, double t) { return gamma_eval(model, scaling, x, t); };
    f.w3 = [model, scaling](const ParticleConfig& x, double t) {
        const TimeSlice sl = time_slice(model, scaling, t);
        return w3_direct(model, sl, x);
    };
    return f;
}

namespace {

double w3_from_pair(const std::function<PairDerivatives(double, double)>& pair, const ParticleConfig& x, double t) {
    const std::size_t n = x.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double ij = pair(x[i] - x[j], t).gamma_p;
                const double jk = pair(x[j] - x[k], t).gamma_p;
                const double ki = pair(x[k] - x[i], t).gamma_p;
                sum += ij * jk + ij * ki + ki * jk;
            }
        }
    }
    return -sum;
}

}  // namespace

PairField PairField::power_law(std::function<double(double)> lambda, std::function<double(double)> lambda_dot) {
    PairField f;
    f.name = "power-law(lambda(t))";
    f.pair = [lambda, lambda_dot](double x, double t) {
        if (x == 0.0) throw ContactSingularity("power-law pair function is singular at contact");
        const double lam = lambda(t);
        return PairDerivatives{lam * std::log(std::abs(x)), lam / x, -lam / (x * x), lambda_dot(t) * std::log(std::abs(x))};
    };
    auto pair = f.pair;
    f.w3 = [pair](const ParticleConfig& x, double t) { return w3_from_pair(pair, x, t); };
    return f;
}

PairField PairField::hyperbolic(double lambda0, std::function<double(double)> c, std::function<double(double)> c_dot) {
    PairField f;
    f.name = "hyperbolic(c(t))";
    f.pair = [lambda0, c, c_dot](double x, double t) {
        if (x == 0.0) throw ContactSingularity("hyperbolic pair function is singular at contact");
        const double ct = c(t);
        const double z = ct * x;
        const double coth = 1.0 / std::tanh(z);
        const double csch = 1.0 / std::sinh(z);
        return PairDerivatives{lambda0 * log_abs_sinh(z), lambda0 * ct * coth,
                               std::isfinite(csch) ? -lambda0 * ct * ct * csch * csch : 0.0,
                               lambda0 * c_dot(t) * x * coth};
    };
    auto pair = f.pair;
    f.w3 = [pair](const ParticleConfig& x, double t) { return w3_from_pair(pair, x, t); };
    return f;
}

TwoBodyResult two_body_residual(const PairField& field, const EtaSchedule& eta, const ScalingSolution& scaling,
                                const Units& units, const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
    const double m_over_hbar = units.mass / units.hbar;
    TwoBodyResult out;
    for (double t : t_grid) {
        const ScalingState s = scaling.state(t);
        const double e = eta.eta(t);
        const double c2 = e * scaling.omega(t) - s.b_dot / s.b;
        std::vector<double> ls;
        ls.reserve(x_grid.size());
        for (double x : x_grid) ls.push_back(pair_l(field.pair(x, t), x, e, c2, m_over_hbar));
        out.residual = std::max(out.residual, spread(ls));
        out.times.push_back(t);
        out.n2_dot.push_back(mean(ls));
    }
    return out;
}

TwoBodyResult two_body_residual(const ModelSpec& model, const EtaSchedule& eta, const ScalingSolution& scaling,
                                const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
    return two_body_residual(PairField::from_model(model, scaling), eta, scaling, model.units(), x_grid, t_grid);
}

OneBodyResult one_body_residual(const EtaSchedule& eta, const ScalingSolution& scaling, const Units& units,
                                const std::vector<double>& t_grid) {
    const double m = units.mass;
    const double hbar = units.hbar;
    OneBodyResult out;
    for (double t : t_grid) {
        const ScalingState s = scaling.state(t);
        const double w = scaling.omega0() / (s.b * s.b);
        const double wdot = omega_dot_fd(scaling, t);
        const double rate = s.b_dot / s.b;
        const double e = eta.eta(t);
        // From Im[A (1 + i eta)] with A = (m/hbar)(-omega + i b'/b).
        const double c2 = e * w - rate;
        const double c2_target = e * w + (w > 0.0 ? wdot / (2.0 * w) : 0.0);
        // Coefficient of x_k^2 in Im v1: -(m/2) omega_dot + (hbar^2/2m) Im(A^2).
        const double d2 = -0.5 * m * wdot - m * w * rate;
        const double n1 = m * rate / hbar;
        const double n1_target = w > 0.0 ? -m * wdot / (2.0 * hbar * w) : 0.0;
        const double scale = std::max(scaling.omega0(), 1e-300);
        double r = std::abs(c2 - c2_target) / scale;
        r = std::max(r, std::abs(d2) / (m * scale * scale));
        r = std::max(r, std::abs(n1 - n1_target) * hbar / (m * scale));
        out.residual = std::max(out.residual, r);
        out.times.push_back(t);
        out.c2.push_back(c2);
        out.d2.push_back(d2);
        out.n1_dot.push_back(n1);
    }
    return out;
}

double ConsistencyReport::max_spread() const {
    return std::max({im_v1_spread, im_v2_spread, im_v3_spread});
}

std::string ConsistencyReport::to_json() const {
    nlohmann::json j;
    j["two_body_residual"] = two_body_residual;
    j["one_body_residual"] = one_body_residual;
    j["im_v1_spread"] = im_v1_spread;
    j["im_v2_spread"] = im_v2_spread;
    j["im_v3_spread"] = im_v3_spread;
    j["tolerance"] = tolerance;
    j["passed"] = passed();
    j["times"] = times;
    j["n1_dot"] = n1_dot;
    j["n2_dot"] = n2_dot;
    j["n3_dot"] = n3_dot;
    return j.dump(2);
}

ConsistencyReport hermiticity_check(const PairField& field, const EtaSchedule& eta, const ScalingSolution& scaling,
                                    const Units& units, int n_particles, const std::vector<ParticleConfig>& configs,
                                    const std::vector<double>& t_grid) {
    if (configs.size() < 100) throw InadmissibleProtocol("hermiticity_check needs at least 100 configurations");
    const double m = units.mass;
    const double hbar = units.hbar;
    const double energy = hbar * std::max(scaling.omega0(), 1e-300);
    const double n = n_particles;

    ConsistencyReport rep;
    rep.two_body_residual =
        two_body_residual(field, eta, scaling, units, default_x_grid(units, scaling.omega0()), t_grid).residual;
    const OneBodyResult ob = one_body_residual(eta, scaling, units, t_grid);
    rep.one_body_residual = ob.residual;

    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        const ScalingState s = scaling.state(t);
        const double w = scaling.omega0() / (s.b * s.b);
        const double rate = s.b_dot / s.b;
        const double e = eta.eta(t);
        const double c2 = e * w - rate;
        const double wdot = omega_dot_fd(scaling, t);
        std::vector<double> v1, v2, v3, l_mean;
        for (const ParticleConfig& x : configs) {
            double sum_x2 = 0.0;
            for (double xi : x) sum_x2 += xi * xi;
            // Im v1 = sum_k [-(m/2) omega_dot x^2 - m omega (b'/b) x^2 + (hbar/2) b'/b].
            v1.push_back((-0.5 * m * wdot - m * w * rate) * sum_x2 + 0.5 * hbar * n * rate);
            double l_sum = 0.0;
            int pairs = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (std::size_t j = i + 1; j < x.size(); ++j) {
                    const double xij = x[i] - x[j];
                    l_sum += pair_l(field.pair(xij, t), xij, e, c2, m / hbar);
                    ++pairs;
                }
            }
            v2.push_back(hbar * hbar / m * l_sum);
            l_mean.push_back(pairs > 0 ? l_sum / pairs : 0.0);
            v3.push_back(hbar * hbar / m * 2.0 * e * field.w3(x, t));
        }
        rep.im_v1_spread = std::max(rep.im_v1_spread, spread(v1) / energy);
        rep.im_v2_spread = std::max(rep.im_v2_spread, spread(v2) / energy);
        rep.im_v3_spread = std::max(rep.im_v3_spread, spread(v3) / energy);
        rep.times.push_back(t);
        rep.n1_dot.push_back(ob.n1_dot[it]);
        rep.n2_dot.push_back(mean(l_mean));
        rep.n3_dot.push_back(mean(v3) * m / (hbar * hbar));
    }
    return rep;
}

ConsistencyReport hermiticity_check(const ModelSpec& model, const EtaSchedule& eta, const ScalingSolution& scaling,
                                    const std::vector<ParticleConfig>& configs, const std::vector<double>& t_grid) {
    return hermiticity_check(PairField::from_model(model, scaling), eta, scaling, model.units(), model.n_particles(),
                             configs, t_grid);
}

std::vector<EtaCase> valid_eta_cases(Family family) {
    switch (family) {
        case Family::PowerLawCS:
        case Family::LogCS:
            return {{"lambda0 constant", "eta = 0"}, {"lambda = 1/2", "eta(t) arbitrary"}};
        case Family::Hyperbolic:
        case Family::LogHyperbolic:
            return {{"lambda0 constant, c = c0/b", "eta = 0"},
                    {"lambda = 1/2, c = (c0/b) exp(omega0 int eta/b^2)", "eta(t) arbitrary"}};
        case Family::ExpLL:
            return {{"c = c0/b", "eta = 0"}};
        case Family::GenericEven:
            return {{"Gamma(c0 x/b)", "eta = 0"}};
    }
    return {};
}

std::vector<double> default_x_grid(const Units& units, double omega0) {
    const double length = std::sqrt(units.hbar / (units.mass * std::max(omega0, 1e-300)));
    std::vector<double> grid;
    for (int k = 0; k <= 4 * 64; ++k) grid.push_back(length * std::pow(10.0, -2.0 + k / 64.0));
    return grid;
}

}  // namespace jastrow_dyn

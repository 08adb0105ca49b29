#include "jastrow_dyn/pair.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

bool has_contact(std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[i] == x[j]) return true;
        }
    }
    return false;
}

double log_abs_sinh(double z) {
    const double a = std::abs(z);
    if (a < 1.0) return std::log(std::sinh(a));
    return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

TimeSlice time_slice(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    const ScalingState s = scaling.state(t);
    TimeSlice sl;
    sl.t = t;
    sl.b = s.b;
    sl.b_dot = s.b_dot;
    sl.b_ddot = s.b_ddot;
    const double w0 = scaling.omega0();
    sl.omega = w0 / (s.b * s.b);
    sl.omega_dot = -2.0 * sl.omega * s.b_dot / s.b;
    sl.lambda = model.lambda();
    if (model.carries_eta()) {
        sl.eta = model.eta().eta(t);
        sl.eta_dot = model.eta().eta_dot(t);
    }
    const double rate = s.b_dot / s.b;
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            break;
        case Family::Hyperbolic:
        case Family::ExpLL:
        case Family::GenericEven:
            sl.c = model.c0() / s.b;
            sl.c_dot = -sl.c * rate;
            break;
        case Family::LogHyperbolic: {
            const EtaSchedule& eta = model.eta();
            const double integral = integrate(
                [&](double u) {
                    const double bu = scaling.b(u);
                    return eta.eta(u) / (bu * bu);
                },
                0.0, t);
            sl.c = model.c0() / s.b * std::exp(w0 * integral);
            sl.c_dot = sl.c * (sl.eta * sl.omega - rate);
            break;
        }
    }
    return sl;
}

namespace {

[[noreturn]] void contact(const ModelSpec& model) {
    throw ContactSingularity("pair function of " + to_string(model.family()) + " is singular at contact");
}

}  // namespace

PairDerivatives pair_derivatives(const ModelSpec& model, const TimeSlice& sl, double x) {
    PairDerivatives d;
    const double lam = sl.lambda;
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            if (x == 0.0) contact(model);
            d.gamma = lam * std::log(std::abs(x));
            d.gamma_p = lam / x;
            d.gamma_pp = -lam / (x * x);
            break;
        case Family::Hyperbolic:
        case Family::LogHyperbolic: {
            if (x == 0.0) contact(model);
            const double z = sl.c * x;
            const double coth = 1.0 / std::tanh(z);
            const double csch = 1.0 / std::sinh(z);
            d.gamma = lam * log_abs_sinh(z);
            d.gamma_p = lam * sl.c * coth;
            // csch^2 underflows to 0 for large |z|, which is the right limit.
            d.gamma_pp = std::isfinite(csch) ? -lam * sl.c * sl.c * csch * csch : 0.0;
            d.gamma_t = lam * sl.c_dot * x * coth;
            break;
        }
        case Family::ExpLL: {
            const double ax = std::abs(x);
            d.gamma = sl.c * ax;
            d.gamma_p = x > 0.0 ? sl.c : (x < 0.0 ? -sl.c : 0.0);
            d.gamma_pp = 0.0;
            d.gamma_t = sl.c_dot * ax;
            break;
        }
        case Family::GenericEven: {
            const GenericPair& g = model.generic();
            const double u = sl.c * x;
            const double g1 = g.first(u);
            d.gamma = g.value(u);
            d.gamma_p = sl.c * g1;
            d.gamma_pp = sl.c * sl.c * g.second(u);
            d.gamma_t = sl.c_dot * x * g1;
            break;
        }
    }
    return d;
}

PairDerivatives gamma_eval(const ModelSpec& model, const ScalingSolution& scaling, double x, double t) {
    return pair_derivatives(model, time_slice(model, scaling, t), x);
}

std::complex<double> gamma_continued(const ModelSpec& model, double lambda, double c, std::complex<double> z) {
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            return lambda * std::log(z);
        case Family::Hyperbolic:
        case Family::LogHyperbolic: {
            // ln sinh(|c| z) = |c| z + ln(1 - e^{-2|c| z}) - ln 2 for Re z > 0.
            const std::complex<double> w = std::abs(c) * z;
            return lambda * (w + std::log(1.0 - std::exp(-2.0 * w)) - std::numbers::ln2);
        }
        case Family::ExpLL:
            return c * z;
        case Family::GenericEven:
            return model.generic().continued(std::abs(c) * z);
    }
    return 0.0;
}

std::optional<double> w3_value(const ModelSpec& model, const TimeSlice& sl) {
    const double n = model.n_particles();
    const double triples = n * (n - 1.0) * (n - 2.0) / 6.0;
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            return 0.0;
        case Family::Hyperbolic:
        case Family::LogHyperbolic:
            return triples * sl.lambda * sl.lambda * sl.c * sl.c;
        case Family::ExpLL:
            return triples * sl.c * sl.c;
        case Family::GenericEven:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> w3_value(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    return w3_value(model, time_slice(model, scaling, t));
}

double w3_direct(const ModelSpec& model, const TimeSlice& sl, std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> gp(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = pair_derivatives(model, sl, x[i] - x[j]).gamma_p;
            gp[i * n + j] = v;
            gp[j * n + i] = -v;
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double ij = gp[i * n + j];
                const double jk = gp[j * n + k];
                const double ki = gp[k * n + i];
                sum += ij * jk + ij * ki + ki * jk;
            }
        }
    }
    return -sum;
}

}  // namespace jastrow_dyn

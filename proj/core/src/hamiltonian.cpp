#include "jastrow_dyn/hamiltonian.hpp"

#include <cmath>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/quadrature.hpp"

namespace jastrow_dyn {

std::vector<std::string> HamiltonianCoeffs::csv_columns() {
    return {"t",        "trap_sq",   "inv_sq",       "log_pair",       "csch_sq", "coth_lin",
            "log_sinh", "contact",   "abs_lin",      "generic_pair",   "generic_virial",
            "arg_scale", "w3",       "varpi",        "vartheta",       "tau_dot", "offset"};
}

std::vector<double> HamiltonianCoeffs::csv_row() const {
    return {t,        trap_sq, inv_sq,       log_pair,       csch_sq,   coth_lin, log_sinh, contact, abs_lin,
            generic_pair, generic_virial, arg_scale, w3, varpi, vartheta, tau_dot, offset};
}

namespace {

double pairs(const ModelSpec& model) {
    const double n = model.n_particles();
    return 0.5 * n * (n - 1.0);
}

// Family coefficients of (hbar^2/m) sum [G'' + (1 - eta^2) G'^2] - hbar varpi sum x G'
// - hbar eta_dot sum G - hbar eta sum G_t, and the constant they leave behind.
// With pseudo = true the eta terms are dropped and varpi = omega.
double fill_pair_terms(const ModelSpec& model, const TimeSlice& sl, bool pseudo, HamiltonianCoeffs& h) {
    const double hbar = model.units().hbar;
    const double m = model.units().mass;
    const double k = hbar * hbar / m;
    const double eta = pseudo ? 0.0 : sl.eta;
    const double eta_dot = pseudo ? 0.0 : sl.eta_dot;
    const double one_m = 1.0 - eta * eta;
    const double one_p = 1.0 + eta * eta;
    const double varpi = sl.omega + eta * sl.b_dot / sl.b;
    const double lam = sl.lambda;
    const double c = sl.c;
    const double w3 = w3_value(model, sl).value_or(0.0);
    h.arg_scale = c;
    h.w3 = w3;
    h.varpi = varpi;
    switch (model.family()) {
        case Family::PowerLawCS:
            h.inv_sq = k * lam * (lam - 1.0);
            h.coth_lin = 0.0;
            return -pairs(model) * hbar * sl.omega * lam;
        case Family::LogCS:
            h.inv_sq = -k * one_p / 4.0;
            h.log_pair = -0.5 * hbar * eta_dot;
            return -0.5 * pairs(model) * hbar * varpi;
        case Family::Hyperbolic:
            h.csch_sq = k * lam * (lam - 1.0) * c * c;
            h.coth_lin = -hbar * sl.omega * lam * c;
            return k * (w3 + pairs(model) * lam * lam * c * c);
        case Family::LogHyperbolic:
            h.csch_sq = -k * one_p * c * c / 4.0;
            // -hbar (varpi c + eta c_dot)/2, which equals -(1 + eta^2) hbar omega c / 2 on the admissible flow.
            h.coth_lin = -0.5 * hbar * (varpi * c + eta * (pseudo ? 0.0 : sl.c_dot));
            h.log_sinh = -0.5 * hbar * eta_dot;
            return k * one_m * (w3 + pairs(model) * c * c / 4.0);
        case Family::ExpLL:
            h.contact = 2.0 * k * c;
            h.abs_lin = -hbar * sl.omega * c;
            return k * (w3 + pairs(model) * c * c);
        case Family::GenericEven:
            h.generic_pair = k;
            h.generic_virial = -hbar * sl.omega;
            return 0.0;
    }
    return 0.0;
}

}  // namespace

double parent_constant(const ModelSpec& model, const TimeSlice& slice) {
    HamiltonianCoeffs scratch;
    return fill_pair_terms(model, slice, false, scratch);
}

double gauge_tau_dot(const ModelSpec& model, const TimeSlice& slice) {
    const double n = model.n_particles();
    return parent_constant(model, slice) / (n * model.units().hbar) - 0.5 * slice.omega;
}

HamiltonianCoeffs parent_coeffs(const ModelSpec& model, const ScalingSolution& scaling, double t, Gauge gauge) {
    const TimeSlice sl = time_slice(model, scaling, t);
    HamiltonianCoeffs h;
    h.t = t;
    h.trap_sq = sl.omega * sl.omega - sl.b_ddot / sl.b;
    const double constant = fill_pair_terms(model, sl, false, h);
    h.vartheta = sl.omega;
    const double n = model.n_particles();
    const double hbar = model.units().hbar;
    h.tau_dot = gauge == Gauge::ZeroOffset ? constant / (n * hbar) - 0.5 * sl.omega : 0.0;
    h.offset = -0.5 * n * hbar * (sl.omega + 2.0 * h.tau_dot) + constant;
    if (gauge == Gauge::ZeroOffset) h.offset = 0.0;
    return h;
}

HamiltonianCoeffs pseudo_parent_coeffs(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    const TimeSlice sl = time_slice(model, scaling, t);
    HamiltonianCoeffs h;
    h.t = t;
    h.trap_sq = sl.omega * sl.omega;
    const double constant = fill_pair_terms(model, sl, true, h);
    h.vartheta = sl.omega;
    h.offset = -0.5 * model.n_particles() * model.units().hbar * sl.omega + constant;
    return h;
}

double gauge_tau(const ModelSpec& model, const ScalingSolution& scaling, double t, double t_ref) {
    return integrate([&](double s) { return gauge_tau_dot(model, time_slice(model, scaling, s)); }, t_ref, t, 1e-12);
}

STAControl sta_control(const ModelSpec& model, const ScalingSolution& scaling, double t) {
    const TimeSlice sl = time_slice(model, scaling, t);
    const double hbar = model.units().hbar;
    const double m = model.units().mass;
    STAControl c;
    c.t = t;
    c.squeeze = 0.5 * sl.b_dot / sl.b;
    c.pair_momentum = hbar * sl.eta / (2.0 * m);
    switch (model.family()) {
        case Family::LogCS:
            c.kernel = "inverse";
            c.pair_kernel = c.pair_momentum * sl.lambda;
            break;
        case Family::LogHyperbolic:
            c.kernel = "coth";
            c.pair_kernel = c.pair_momentum * sl.lambda * sl.c;
            break;
        default:
            c.kernel = "none";
            c.pair_kernel = 0.0;
            break;
    }
    return c;
}

std::vector<Impulse> eta_impulses(const ModelSpec& model, const ScalingSolution& scaling, double lo, double hi) {
    std::vector<Impulse> out;
    if (!model.carries_eta()) return out;
    const double hbar = model.units().hbar;
    for (double bp : model.eta().breakpoints()) {
        if (bp < lo || bp > hi) continue;
        const double before = model.eta().eta(std::nextafter(bp, -INFINITY));
        const double after = model.eta().eta(bp);
        Impulse imp;
        imp.time = bp;
        imp.weight = -hbar * model.lambda() * (after - before);
        if (model.family() == Family::LogCS) {
            imp.kernel = "log_abs";
        } else {
            imp.kernel = "log_abs_sinh";
            imp.arg_scale = time_slice(model, scaling, bp).c;
        }
        out.push_back(imp);
    }
    return out;
}

double pair_potential(const ModelSpec& model, const HamiltonianCoeffs& h, double x) {
    double u = 0.0;
    const double ax = std::abs(x);
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            if (x == 0.0) throw ContactSingularity("inverse-square potential at contact");
            u += h.inv_sq / (x * x);
            if (h.log_pair != 0.0) u += h.log_pair * std::log(ax);
            break;
        case Family::Hyperbolic:
        case Family::LogHyperbolic: {
            if (x == 0.0) throw ContactSingularity("hyperbolic potential at contact");
            const double z = h.arg_scale * x;
            const double csch = 1.0 / std::sinh(z);
            if (std::isfinite(csch)) u += h.csch_sq * csch * csch;
            u += h.coth_lin * x / std::tanh(z);
            if (h.log_sinh != 0.0) u += h.log_sinh * log_abs_sinh(z);
            break;
        }
        case Family::ExpLL:
            u += h.abs_lin * ax;
            break;
        case Family::GenericEven: {
            const GenericPair& g = model.generic();
            const double c = h.arg_scale;
            const double z = c * x;
            const double g1 = c * g.first(z);
            u += h.generic_pair * (c * c * g.second(z) + g1 * g1) + h.generic_virial * x * g1;
            break;
        }
    }
    return u;
}

double potential_energy(const ModelSpec& model, const HamiltonianCoeffs& h, std::span<const double> x) {
    double sum_x2 = 0.0;
    for (double xi : x) sum_x2 += xi * xi;
    double v = 0.5 * model.units().mass * h.trap_sq * sum_x2 + h.offset;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) v += pair_potential(model, h, x[i] - x[j]);
    }
    if (model.family() == Family::GenericEven && x.size() >= 3) {
        TimeSlice sl;
        sl.c = h.arg_scale;
        v += h.generic_pair * w3_direct(model, sl, x);
    }
    return v;
}

double potential_energy(const ModelSpec& model, const ScalingSolution& scaling, std::span<const double> x, double t,
                        Gauge gauge) {
    return potential_energy(model, parent_coeffs(model, scaling, t, gauge), x);
}

}  // namespace jastrow_dyn

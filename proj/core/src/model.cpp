#include "jastrow_dyn/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "jastrow_dyn/errors.hpp"

namespace jastrow_dyn {

std::string to_string(Family family) {
    switch (family) {
        case Family::PowerLawCS: return "PowerLawCS";
        case Family::LogCS: return "LogCS";
        case Family::Hyperbolic: return "Hyperbolic";
        case Family::LogHyperbolic: return "LogHyperbolic";
        case Family::ExpLL: return "ExpLL";
        case Family::GenericEven: return "GenericEven";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::PowerLawCS, Family::LogCS, Family::Hyperbolic, Family::LogHyperbolic,
                     Family::ExpLL, Family::GenericEven}) {
        if (to_string(f) == name) return f;
    }
    throw ConfigError("unknown model family '" + name + "'");
}

namespace {

constexpr double kGenericStep = 1e-5;

// log cosh u without overflow for large |u|.
double log_cosh(double u) {
    const double a = std::abs(u);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

GenericPair GenericPair::log_cosh(double strength) {
    GenericPair p;
    p.name = "log_cosh";
    p.parameters = {strength};
    p.value = [strength](double u) { return strength * jastrow_dyn::log_cosh(u); };
    p.first = [strength](double u) { return strength * std::tanh(u); };
    p.second = [strength](double u) {
        const double sech = 1.0 / std::cosh(u);
        return strength * sech * sech;
    };
    p.continued = [strength](std::complex<double> z) {
        const std::complex<double> s = z.real() >= 0.0 ? z : -z;
        return strength * (s + std::log((1.0 + std::exp(-2.0 * s)) / 2.0));
    };
    return p;
}

GenericPair GenericPair::lorentzian(double strength) {
    GenericPair p;
    p.name = "lorentzian";
    p.parameters = {strength};
    p.value = [strength](double u) { return 0.5 * strength * std::log1p(u * u); };
    p.first = [strength](double u) { return strength * u / (1.0 + u * u); };
    p.second = [strength](double u) {
        const double d = 1.0 + u * u;
        return strength * (1.0 - u * u) / (d * d);
    };
    p.continued = [strength](std::complex<double> z) { return 0.5 * strength * std::log(1.0 + z * z); };
    return p;
}

GenericPair GenericPair::from_preset(const std::string& name, double strength) {
    if (name == "log_cosh") return log_cosh(strength);
    if (name == "lorentzian") return lorentzian(strength);
    throw ConfigError("unknown generic pair preset '" + name + "'");
}

void ModelSpec::validate_common() const {
    units_.validate();
    if (n_ < 1) throw InvalidModel("n_particles must be a positive integer");
    if (!(omega0_ >= 0.0) || !std::isfinite(omega0_)) throw InvalidModel("omega0 must be finite and >= 0");
    if (!std::isfinite(lambda_) || !std::isfinite(c0_)) throw InvalidModel("couplings must be finite");
}

ModelSpec ModelSpec::power_law_cs(int n, double omega0, double lambda0, Units units) {
    ModelSpec m;
    m.family_ = Family::PowerLawCS;
    m.n_ = n;
    m.omega0_ = omega0;
    m.lambda_ = lambda0;
    m.units_ = units;
    m.validate_common();
    return m;
}

ModelSpec ModelSpec::log_cs(int n, double omega0, EtaSchedule eta, Units units) {
    ModelSpec m;
    m.family_ = Family::LogCS;
    m.n_ = n;
    m.omega0_ = omega0;
    m.lambda_ = 0.5;
    m.eta_ = std::move(eta);
    m.units_ = units;
    m.validate_common();
    return m;
}

ModelSpec ModelSpec::hyperbolic(int n, double omega0, double lambda0, double c0, Units units) {
    ModelSpec m;
    m.family_ = Family::Hyperbolic;
    m.n_ = n;
    m.omega0_ = omega0;
    m.lambda_ = lambda0;
    m.c0_ = c0;
    m.units_ = units;
    m.validate_common();
    if (c0 == 0.0) throw InvalidModel("hyperbolic family needs c0 != 0");
    return m;
}

ModelSpec ModelSpec::log_hyperbolic(int n, double omega0, double c0, EtaSchedule eta, Units units) {
    ModelSpec m;
    m.family_ = Family::LogHyperbolic;
    m.n_ = n;
    m.omega0_ = omega0;
    m.lambda_ = 0.5;
    m.c0_ = c0;
    m.eta_ = std::move(eta);
    m.units_ = units;
    m.validate_common();
    if (c0 == 0.0) throw InvalidModel("hyperbolic family needs c0 != 0");
    return m;
}

ModelSpec ModelSpec::exp_ll(int n, double omega0, double c0, Units units) {
    ModelSpec m;
    m.family_ = Family::ExpLL;
    m.n_ = n;
    m.omega0_ = omega0;
    m.c0_ = c0;
    m.units_ = units;
    m.validate_common();
    return m;
}

ModelSpec ModelSpec::generic_even(int n, double omega0, double c0, GenericPair pair, Units units) {
    if (!pair.value) throw InvalidModel("generic pair function needs a value");
    if (!pair.first) {
        auto g = pair.value;
        pair.first = [g](double u) { return (g(u + kGenericStep) - g(u - kGenericStep)) / (2.0 * kGenericStep); };
    }
    if (!pair.second) {
        auto g = pair.value;
        pair.second = [g](double u) {
            return (g(u + kGenericStep) - 2.0 * g(u) + g(u - kGenericStep)) / (kGenericStep * kGenericStep);
        };
    }
    ModelSpec m;
    m.family_ = Family::GenericEven;
    m.n_ = n;
    m.omega0_ = omega0;
    m.c0_ = c0;
    m.units_ = units;
    m.generic_ = std::move(pair);
    m.validate_common();
    if (c0 == 0.0) throw InvalidModel("generic family needs a nonzero argument scale c0");
    return m;
}

const GenericPair& ModelSpec::generic() const {
    if (!generic_) throw InvalidModel("model has no generic pair function");
    return *generic_;
}

bool ModelSpec::carries_eta() const {
    return family_ == Family::LogCS || family_ == Family::LogHyperbolic;
}

ModelSpec ModelSpec::with_particles(int n) const {
    ModelSpec m = *this;
    m.n_ = n;
    m.validate_common();
    return m;
}

ModelSpec ModelSpec::with_lambda(double lambda) const {
    ModelSpec m = *this;
    m.lambda_ = lambda;
    return m;
}

std::string ModelSpec::describe() const {
    std::ostringstream os;
    os << to_string(family_) << "(N=" << n_ << ", omega0=" << omega0_;
    switch (family_) {
        case Family::PowerLawCS: os << ", lambda0=" << lambda_; break;
        case Family::LogCS: os << ", eta=" << eta_.name(); break;
        case Family::Hyperbolic: os << ", lambda0=" << lambda_ << ", c0=" << c0_; break;
        case Family::LogHyperbolic: os << ", c0=" << c0_ << ", eta=" << eta_.name(); break;
        case Family::ExpLL: os << ", c0=" << c0_; break;
        case Family::GenericEven: os << ", c0=" << c0_ << ", pair=" << generic().name; break;
    }
    os << ")";
    return os.str();
}

ValidityReport check_normalizable(const ModelSpec& model) {
    auto reject = [](std::string rule, std::string message) {
        return ValidityReport{false, std::move(rule), std::move(message)};
    };
    const double lambda = model.lambda();
    const bool trapped = model.omega0() > 0.0;
    switch (model.family()) {
        case Family::PowerLawCS:
        case Family::LogCS:
            if (!(lambda > -0.5)) {
                return reject("cs_contact_integrability", "|x|^(2 lambda) is not integrable at contact unless lambda > -1/2");
            }
            if (!trapped) {
                return reject("cs_requires_trap", "power-law pair factors need omega0 > 0 for a normalizable Gaussian envelope");
            }
            return {};
        case Family::Hyperbolic:
        case Family::LogHyperbolic:
            if (!(lambda > -0.5)) {
                return reject("hyperbolic_contact_integrability", "|sinh(cx)|^(2 lambda) is not integrable at contact unless lambda > -1/2");
            }
            if (!trapped && !(lambda < 0.0)) {
                return reject("hyperbolic_untrapped_decay", "with omega0 = 0 the pair factor must decay, which needs -1/2 < lambda < 0");
            }
            return {};
        case Family::ExpLL:
            if (!trapped && !(model.c0() < 0.0)) {
                return reject("ll_untrapped_attractive", "with omega0 = 0, c(t) must be negative for e^{c|x|} to be normalizable");
            }
            return {};
        case Family::GenericEven: {
            if (trapped) return {};
            const auto& g = model.generic().value;
            if (g(40.0) < g(1.0) - 20.0) return {};
            return reject("generic_untrapped_decay", "with omega0 = 0 the generic pair factor must decay at large separation");
        }
    }
    return {};
}

}  // namespace jastrow_dyn

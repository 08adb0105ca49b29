#include "jastrow_dyn/protocol.hpp"

#include "pchip.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "jastrow_dyn/errors.hpp"

namespace jastrow_dyn {

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Constant: return "constant";
        case ProtocolKind::PiecewiseConstant: return "piecewise-constant";
        case ProtocolKind::Sigmoid: return "sigmoid";
        case ProtocolKind::Tabulated: return "tabulated";
        case ProtocolKind::Custom: return "custom";
    }
    return "unknown";
}

struct FrequencyProtocol::Impl {
    ProtocolKind kind = ProtocolKind::Custom;
    std::string name;
    Function omega_sq;
    std::vector<double> breaks;
    std::vector<double> piece_values;
};

FrequencyProtocol::FrequencyProtocol(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

FrequencyProtocol FrequencyProtocol::constant(double omega) {
    auto impl = std::make_shared<Impl>();
    impl->kind = ProtocolKind::Constant;
    impl->name = "constant";
    const double w2 = omega * omega;
    impl->omega_sq = [w2](double) { return w2; };
    impl->piece_values = {w2};
    return FrequencyProtocol(std::move(impl));
}

FrequencyProtocol FrequencyProtocol::piecewise_constant(std::vector<double> breaks, std::vector<double> omega_sq) {
    if (omega_sq.size() != breaks.size() + 1) {
        throw InadmissibleProtocol("piecewise protocol needs one more value than breakpoints");
    }
    if (!std::is_sorted(breaks.begin(), breaks.end())) {
        throw InadmissibleProtocol("piecewise protocol breakpoints must be increasing");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = ProtocolKind::PiecewiseConstant;
    impl->name = "piecewise-constant";
    impl->breaks = breaks;
    impl->piece_values = omega_sq;
    impl->omega_sq = [breaks, omega_sq](double t) {
        const auto k = std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin();
        return omega_sq[static_cast<std::size_t>(k)];
    };
    return FrequencyProtocol(std::move(impl));
}

FrequencyProtocol FrequencyProtocol::sigmoid(double omega0, double kappa) {
    auto impl = std::make_shared<Impl>();
    impl->kind = ProtocolKind::Sigmoid;
    impl->name = "sigmoid";
    // beta = 2/(1+u), u = e^{kappa t}; Omega^2 = w0^2 beta^4 - 2 beta'^2/beta^2 + beta''/beta.
    // With s = u/(1+u): beta'/beta = -kappa s, beta''/beta = kappa^2 s (2 s - 1).
    impl->omega_sq = [omega0, kappa](double t) {
        const double x = kappa * t;
        const double s = x > 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
        const double beta = 2.0 * (1.0 - s);
        const double ratio1 = -kappa * s;
        const double ratio2 = kappa * kappa * s * (2.0 * s - 1.0);
        const double b2 = beta * beta;
        return omega0 * omega0 * b2 * b2 - 2.0 * ratio1 * ratio1 + ratio2;
    };
    return FrequencyProtocol(std::move(impl));
}

FrequencyProtocol FrequencyProtocol::tabulated(std::vector<double> t, std::vector<double> omega_sq) {
    if (t.size() != omega_sq.size() || t.size() < 4) {
        throw InadmissibleProtocol("tabulated protocol needs at least 4 matching samples");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = ProtocolKind::Tabulated;
    impl->name = "tabulated";
    const double lo = t.front();
    const double hi = t.back();
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(t), std::move(omega_sq));
    impl->omega_sq = [spline, lo, hi](double s) {
        if (s < lo || s > hi) throw OutOfGrid("tabulated protocol queried outside its support");
        return (*spline)(s);
    };
    return FrequencyProtocol(std::move(impl));
}

FrequencyProtocol FrequencyProtocol::custom(Function omega_sq, std::string name, std::vector<double> breaks) {
    auto impl = std::make_shared<Impl>();
    impl->kind = ProtocolKind::Custom;
    impl->name = std::move(name);
    impl->omega_sq = std::move(omega_sq);
    std::sort(breaks.begin(), breaks.end());
    impl->breaks = std::move(breaks);
    return FrequencyProtocol(std::move(impl));
}

ProtocolKind FrequencyProtocol::kind() const { return impl_->kind; }
const std::string& FrequencyProtocol::name() const { return impl_->name; }
double FrequencyProtocol::omega_sq(double t) const { return impl_->omega_sq(t); }
const std::vector<double>& FrequencyProtocol::breakpoints() const { return impl_->breaks; }

double FrequencyProtocol::omega_sq_within(double t, double lo, double hi) const {
    if (impl_->breaks.empty()) return impl_->omega_sq(t);
    const double tc = std::clamp(t, lo, hi);
    const bool at_edge = tc == lo || tc == hi;
    if (!at_edge) return impl_->omega_sq(tc);
    if (impl_->kind == ProtocolKind::PiecewiseConstant) return impl_->omega_sq(0.5 * (lo + hi));
    // Custom protocols: approach the edge from inside the interval.
    const double inward = tc == lo ? std::nextafter(lo, hi) : std::nextafter(hi, lo);
    return impl_->omega_sq(inward);
}

bool FrequencyProtocol::constant_on(double lo, double hi) const {
    if (impl_->kind == ProtocolKind::Constant) return true;
    if (impl_->kind != ProtocolKind::PiecewiseConstant) return false;
    for (double b : impl_->breaks) {
        if (b > lo && b < hi) return false;
    }
    return true;
}

}  // namespace jastrow_dyn

#include "jastrow_dyn/eta.hpp"

#include "pchip.hpp"

#include <cmath>
#include <utility>

#include "jastrow_dyn/errors.hpp"
#include "jastrow_dyn/units.hpp"

namespace jastrow_dyn {

void Units::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw InvalidModel("units: hbar must be strictly positive");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvalidModel("units: mass must be strictly positive");
    }
}

struct EtaSchedule::Impl {
    Function eta;
    Function eta_dot;
    std::string name;
    std::vector<double> parameters;
    std::vector<double> breakpoints;
    bool zero = false;
};

EtaSchedule::EtaSchedule() : EtaSchedule(zero()) {}

EtaSchedule::EtaSchedule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

EtaSchedule EtaSchedule::zero() {
    auto impl = std::make_shared<Impl>();
    impl->eta = [](double) { return 0.0; };
    impl->eta_dot = [](double) { return 0.0; };
    impl->name = "zero";
    impl->zero = true;
    return EtaSchedule(std::move(impl));
}

EtaSchedule EtaSchedule::constant(double value) {
    if (value == 0.0) return zero();
    auto impl = std::make_shared<Impl>();
    impl->eta = [value](double) { return value; };
    impl->eta_dot = [](double) { return 0.0; };
    impl->name = "constant";
    impl->parameters = {value};
    return EtaSchedule(std::move(impl));
}

EtaSchedule EtaSchedule::sine(double amplitude, double frequency, double phase) {
    if (amplitude == 0.0) return zero();
    auto impl = std::make_shared<Impl>();
    impl->eta = [=](double t) { return amplitude * std::sin(frequency * t + phase); };
    impl->eta_dot = [=](double t) { return amplitude * frequency * std::cos(frequency * t + phase); };
    impl->name = "sine";
    impl->parameters = {amplitude, frequency, phase};
    return EtaSchedule(std::move(impl));
}

EtaSchedule EtaSchedule::step_down(double value) {
    if (value == 0.0) return zero();
    auto impl = std::make_shared<Impl>();
    impl->eta = [value](double t) { return t < 0.0 ? value : 0.0; };
    impl->eta_dot = [](double) { return 0.0; };
    impl->name = "step";
    impl->parameters = {value};
    impl->breakpoints = {0.0};
    return EtaSchedule(std::move(impl));
}

EtaSchedule EtaSchedule::tabulated(std::vector<double> t, std::vector<double> eta) {
    if (t.size() != eta.size() || t.size() < 4) {
        throw InvalidModel("eta table needs matching t/eta arrays with at least 4 samples");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw InvalidModel("eta table times must be strictly increasing");
    }
    auto impl = std::make_shared<Impl>();
    impl->parameters = t;
    impl->parameters.insert(impl->parameters.end(), eta.begin(), eta.end());
    const double lo = t.front();
    const double hi = t.back();
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(t), std::move(eta));
    impl->eta = [spline, lo, hi](double s) {
        if (s < lo || s > hi) throw OutOfGrid("eta table queried outside its support");
        return (*spline)(s);
    };
    impl->eta_dot = [spline, lo, hi](double s) {
        if (s < lo || s > hi) throw OutOfGrid("eta table queried outside its support");
        return spline->prime(s);
    };
    impl->name = "table";
    return EtaSchedule(std::move(impl));
}

EtaSchedule EtaSchedule::custom(Function eta, Function eta_dot, std::string name) {
    auto impl = std::make_shared<Impl>();
    impl->eta = std::move(eta);
    impl->eta_dot = std::move(eta_dot);
    impl->name = std::move(name);
    return EtaSchedule(std::move(impl));
}

double EtaSchedule::eta(double t) const { return impl_->eta(t); }
double EtaSchedule::eta_dot(double t) const { return impl_->eta_dot(t); }
bool EtaSchedule::is_zero() const { return impl_->zero; }
const std::string& EtaSchedule::name() const { return impl_->name; }
const std::vector<double>& EtaSchedule::parameters() const { return impl_->parameters; }
const std::vector<double>& EtaSchedule::breakpoints() const { return impl_->breakpoints; }

}  // namespace jastrow_dyn
